// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgsim/Platform.hpp"

#include <algorithm>
#include <set>

namespace wgsim
{

  std::variant<Platform, std::string> Platform::build(const PlatformDecl& decl)
  {
    if (decl.nworlds == 0)
      return std::string("nworlds must be at least 1");
    if (decl.nworlds > maxWorldsWide)
      return std::string("nworlds exceeds the 128-world limit");
    if (decl.nworlds > maxWorldsBase)
      for (const HartConfig& h : decl.harts)
        if (not h.ext.slwgd)
          return "nworlds " + std::to_string(decl.nworlds)
                 + " exceeds 32 but hart " + std::to_string(h.hartId)
                 + " lacks the slwgd extension";

    std::set<unsigned> hartIds;
    for (const HartConfig& h : decl.harts)
      {
        if (not hartIds.insert(h.hartId).second)
          return "duplicate hart id " + std::to_string(h.hartId);
        if (auto bad = h.ext.firstViolation())
          return "hart " + std::to_string(h.hartId) + ": " + *bad;
        if (h.mwid >= decl.nworlds)
          return "hart " + std::to_string(h.hartId) + " mwid "
                 + std::to_string(h.mwid) + " is not below nworlds";
        if (h.spmpEntries > 64 or h.vspmpEntries > 64 or h.mpmpEntries > 64)
          return "hart " + std::to_string(h.hartId)
                 + ": entry counts are limited to 64";
        if (h.model == SpmpModel::Separate and h.splitIndex > h.spmpEntries)
          return "hart " + std::to_string(h.hartId)
                 + ": split index exceeds the entry count";
      }

    std::set<std::string> names;
    for (const Anm& a : decl.anms)
      {
        if (not names.insert(a.name).second)
          return "duplicate initiator name '" + a.name + "'";
        if (a.wid >= decl.nworlds)
          return "anm '" + a.name + "' wid " + std::to_string(a.wid)
                 + " is not below nworlds";
      }

    std::vector<std::pair<uint64_t, uint64_t>> spans;
    std::set<std::string> resourceNames;
    for (const ResourceDecl& r : decl.resources)
      {
        if (not resourceNames.insert(r.name).second)
          return "duplicate resource name '" + r.name + "'";
        if (r.size == 0)
          return "resource '" + r.name + "' has zero size";
        if (not r.memory and r.slots != 1)
          return "peripheral '" + r.name + "' must have exactly one slot";
        if (r.memory and r.slots == 0)
          return "memory '" + r.name + "' needs at least one slot";
        for (auto [b, s] : spans)
          if (r.base < b + s and b < r.base + r.size)
            return "resource '" + r.name + "' overlaps another resource";
        spans.emplace_back(r.base, r.size);
      }

    std::set<std::string> vmNames;
    for (const VmImage& vm : decl.vms)
      {
        if (not vmNames.insert(vm.name).second)
          return "duplicate vm name '" + vm.name + "'";
        if (vm.hslwid >= decl.nworlds)
          return "vm '" + vm.name + "' hslwid is not below nworlds";
        for (Wid w : vm.wids)
          if (w >= decl.nworlds)
            return "vm '" + vm.name + "' wid " + std::to_string(w)
                   + " is not below nworlds";
      }

    Platform p;
    p.nworlds_ = decl.nworlds;
    p.harts_.reserve(decl.harts.size());
    for (const HartConfig& h : decl.harts)
      p.harts_.emplace_back(h, decl.nworlds);
    p.anms_ = decl.anms;
    p.vms_ = decl.vms;
    for (const ResourceDecl& r : decl.resources)
      p.checkers_.emplace_back(r.name, r.base, r.size, r.memory, r.slots);
    return p;
  }

  Hart* Platform::findHart(unsigned hartId)
  {
    for (Hart& h : harts_)
      if (h.id() == hartId)
        return &h;
    return nullptr;
  }

  const Hart* Platform::findHart(unsigned hartId) const
  {
    for (const Hart& h : harts_)
      if (h.id() == hartId)
        return &h;
    return nullptr;
  }

  const Anm* Platform::findAnm(std::string_view name) const
  {
    for (const Anm& a : anms_)
      if (a.name == name)
        return &a;
    return nullptr;
  }

  const VmImage* Platform::findVm(std::string_view name) const
  {
    for (const VmImage& vm : vms_)
      if (vm.name == name)
        return &vm;
    return nullptr;
  }

  ResourceChecker* Platform::findChecker(std::string_view resource)
  {
    for (ResourceChecker& c : checkers_)
      if (c.name() == resource)
        return &c;
    return nullptr;
  }

  CheckVerdict Platform::hartAccess(unsigned hartId, uint64_t addr, unsigned size,
                                    AccessKind kind) const
  {
    const Hart* hart = findHart(hartId);
    if (not hart)
      return CheckVerdict::denied(DenyStage::Initiator);

    CheckVerdict cpu = hart->checkAccess(addr, size, kind);
    if (not cpu.allow)
      return cpu;

    auto wid = hart->resolveWid();
    if (not wid)
      return CheckVerdict::denied(DenyStage::Initiator);

    Transaction txn;
    txn.initiator = "hart" + std::to_string(hartId);
    txn.wid = *wid;
    txn.addr = addr;
    txn.size = size;
    txn.write = kind == AccessKind::Write;   // fetches ride as reads
    return fabricRoute(txn, checkers_);
  }

  CheckVerdict Platform::anmAccess(std::string_view name, uint64_t addr,
                                   unsigned size, bool write) const
  {
    const Anm* anm = findAnm(name);
    if (not anm)
      return CheckVerdict::denied(DenyStage::Initiator);

    Transaction txn;
    txn.initiator = anm->name;
    txn.wid = anm->wid;
    txn.addr = addr;
    txn.size = size;
    txn.write = write;
    return fabricRoute(txn, checkers_);
  }

}
