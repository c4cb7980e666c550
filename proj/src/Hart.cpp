// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgsim/Hart.hpp"

#include <algorithm>

namespace wgsim
{

  std::string_view toString(CsrName n)
  {
    switch (n)
      {
      case CsrName::Mwid:        return "mwid";
      case CsrName::Mlwid:       return "mlwid";
      case CsrName::Mwiddeleg:   return "mwiddeleg";
      case CsrName::Mwiddelegh:  return "mwiddelegh";
      case CsrName::Mwiddelegh2: return "mwiddelegh2";
      case CsrName::Mwiddelegh3: return "mwiddelegh3";
      case CsrName::Slwid:       return "slwid";
      case CsrName::Hslwid:      return "hslwid";
      case CsrName::Vslwid:      return "vslwid";
      case CsrName::Hwiddeleg:   return "hwiddeleg";
      case CsrName::Hwiddelegh:  return "hwiddelegh";
      case CsrName::Hwiddelegh2: return "hwiddelegh2";
      case CsrName::Hwiddelegh3: return "hwiddelegh3";
      case CsrName::Spmpswitch:  return "spmpswitch";
      case CsrName::Hspmpswitch: return "hspmpswitch";
      case CsrName::Hgpmpswitch: return "hgpmpswitch";
      case CsrName::Vspmpswitch: return "vspmpswitch";
      }
    return "?";
  }

  std::optional<CsrName> csrFromString(std::string_view s)
  {
    static const std::pair<std::string_view, CsrName> table[] = {
      {"mwid", CsrName::Mwid},
      {"mlwid", CsrName::Mlwid},
      {"mwiddeleg", CsrName::Mwiddeleg},
      {"mwiddelegh", CsrName::Mwiddelegh},
      {"mwiddelegh2", CsrName::Mwiddelegh2},
      {"mwiddelegh3", CsrName::Mwiddelegh3},
      {"slwid", CsrName::Slwid},
      {"hslwid", CsrName::Hslwid},
      {"vslwid", CsrName::Vslwid},
      {"hwiddeleg", CsrName::Hwiddeleg},
      {"hwiddelegh", CsrName::Hwiddelegh},
      {"hwiddelegh2", CsrName::Hwiddelegh2},
      {"hwiddelegh3", CsrName::Hwiddelegh3},
      {"spmpswitch", CsrName::Spmpswitch},
      {"hspmpswitch", CsrName::Hspmpswitch},
      {"hgpmpswitch", CsrName::Hgpmpswitch},
      {"vspmpswitch", CsrName::Vspmpswitch},
    };
    for (const auto& [name, csr] : table)
      if (name == s)
        return csr;
    return std::nullopt;
  }

  Hart::Hart(const HartConfig& config, unsigned nworlds)
    : config_(config), nworlds_(nworlds)
  {
    csrs_.mwid = config.mwid;
    mpmp_ = SpmpUnit(SpmpUnitKind::MachinePmp, config.mpmpEntries);
    if (config.model == SpmpModel::Unified)
      hspmp_ = SpmpUnit(SpmpUnitKind::HsUnified, config.spmpEntries);
    else
      {
        unsigned split = std::min(config.splitIndex, config.spmpEntries);
        hspmp_ = SpmpUnit(SpmpUnitKind::HsBaseline, split);
        hgpmp_ = SpmpUnit(SpmpUnitKind::HgPmp, config.spmpEntries - split);
      }
    vspmp_ = SpmpUnit(SpmpUnitKind::VsPmp,
                      config.ext.spmpHypervisor ? config.vspmpEntries : 0);
  }

  bool Hart::setMode(PrivMode m)
  {
    if (isVirtualized(m) and not config_.ext.hypervisor)
      return false;
    mode_ = m;
    return true;
  }

  bool Hart::csrPresent(CsrName n) const
  {
    const ExtensionSet& e = config_.ext;
    switch (n)
      {
      case CsrName::Mwid:        return true;
      case CsrName::Mlwid:       return e.smwg;
      case CsrName::Mwiddeleg:   return e.smwgd;
      case CsrName::Mwiddelegh:
      case CsrName::Mwiddelegh2:
      case CsrName::Mwiddelegh3: return e.smwgd and e.slwgd;
      case CsrName::Slwid:       return e.sswg;
      case CsrName::Hslwid:
      case CsrName::Vslwid:
      case CsrName::Hwiddeleg:   return e.shwgd;
      case CsrName::Hwiddelegh:
      case CsrName::Hwiddelegh2:
      case CsrName::Hwiddelegh3: return e.shwgd and e.slwgd;
      case CsrName::Spmpswitch:  return e.spmp;
      case CsrName::Hspmpswitch:
        return e.spmpHypervisor and config_.model == SpmpModel::Unified;
      case CsrName::Hgpmpswitch:
        return e.spmpHypervisor and config_.model == SpmpModel::Separate;
      case CsrName::Vspmpswitch: return e.spmpHypervisor;
      }
    return false;
  }

  bool Hart::writePermitted(CsrName n, bool viaAlias) const
  {
    switch (n)
      {
      case CsrName::Mwid:
        return false;

      case CsrName::Mlwid:
      case CsrName::Mwiddeleg:
      case CsrName::Mwiddelegh:
      case CsrName::Mwiddelegh2:
      case CsrName::Mwiddelegh3:
        return mode_ == PrivMode::M;

      case CsrName::Slwid:
      case CsrName::Hslwid:
      case CsrName::Hwiddeleg:
      case CsrName::Hwiddelegh:
      case CsrName::Hwiddelegh2:
      case CsrName::Hwiddelegh3:
      case CsrName::Spmpswitch:
      case CsrName::Hspmpswitch:
      case CsrName::Hgpmpswitch:
        return mode_ == PrivMode::M or mode_ == PrivMode::HS;

      case CsrName::Vslwid:
      case CsrName::Vspmpswitch:
        // Direct access from M/HS; VS reaches the register only through
        // the aliased slwid / spmpswitch address.
        return mode_ == PrivMode::M or mode_ == PrivMode::HS
               or (viaAlias and mode_ == PrivMode::VS);
      }
    return false;
  }

  WidBitVector Hart::effectiveDeleg(DelegLevel level) const
  {
    WidBitVector sup = csrs_.mwiddeleg.maskedTo(nworlds_);
    if (level == DelegLevel::Supervisor)
      return sup;
    return csrs_.hwiddeleg.intersect(sup);
  }

  namespace
  {

    CsrWriteResult storeLwid(uint32_t& reg, uint64_t value, bool legal)
    {
      if (value == reg)
        return {WriteOutcome::Accepted, CsrIssue::None};
      if (not legal)
        return {WriteOutcome::IgnoredIllegalValue, CsrIssue::None};
      reg = uint32_t(value);
      return {WriteOutcome::Accepted, CsrIssue::None};
    }

  }

  CsrWriteResult Hart::writeWidCsr(CsrName n, uint64_t value)
  {
    const CsrWriteResult accepted{WriteOutcome::Accepted, CsrIssue::None};
    bool inRange = value < nworlds_;

    switch (n)
      {
      case CsrName::Mlwid:
        return storeLwid(csrs_.mlwid, value, inRange);
      case CsrName::Slwid:
        return storeLwid(csrs_.slwid, value,
                         inRange and effectiveDeleg(DelegLevel::Supervisor).test(Wid(value)));
      case CsrName::Hslwid:
        return storeLwid(csrs_.hslwid, value,
                         inRange and effectiveDeleg(DelegLevel::Supervisor).test(Wid(value)));
      case CsrName::Vslwid:
        return storeLwid(csrs_.vslwid, value,
                         inRange and effectiveDeleg(DelegLevel::VirtualSupervisor).test(Wid(value)));

      case CsrName::Mwiddeleg:
        csrs_.mwiddeleg.setWindow(0, uint32_t(value));
        return accepted;
      case CsrName::Mwiddelegh:
        csrs_.mwiddeleg.setWindow(1, uint32_t(value));
        return accepted;
      case CsrName::Mwiddelegh2:
        csrs_.mwiddeleg.setWindow(2, uint32_t(value));
        return accepted;
      case CsrName::Mwiddelegh3:
        csrs_.mwiddeleg.setWindow(3, uint32_t(value));
        return accepted;

      case CsrName::Hwiddeleg:
        csrs_.hwiddeleg.setWindow(0, uint32_t(value));
        return accepted;
      case CsrName::Hwiddelegh:
        csrs_.hwiddeleg.setWindow(1, uint32_t(value));
        return accepted;
      case CsrName::Hwiddelegh2:
        csrs_.hwiddeleg.setWindow(2, uint32_t(value));
        return accepted;
      case CsrName::Hwiddelegh3:
        csrs_.hwiddeleg.setWindow(3, uint32_t(value));
        return accepted;

      case CsrName::Spmpswitch:
        hspmp_.setSwitchMask(value);
        return accepted;
      case CsrName::Hspmpswitch:
        hspmp_.setHswitchMask(value);
        return accepted;
      case CsrName::Hgpmpswitch:
        hgpmp_.setSwitchMask(value);
        return accepted;
      case CsrName::Vspmpswitch:
        vspmp_.setSwitchMask(value);
        return accepted;

      case CsrName::Mwid:
        break;
      }
    return {WriteOutcome::AccessViolation, CsrIssue::ReadOnly};
  }

  CsrWriteResult Hart::writeCsr(CsrName name, uint64_t value)
  {
    bool viaAlias = false;
    if (virtualized())
      {
        if (name == CsrName::Slwid)
          {
            name = CsrName::Vslwid;
            viaAlias = true;
          }
        else if (name == CsrName::Spmpswitch)
          {
            name = CsrName::Vspmpswitch;
            viaAlias = true;
          }
      }

    if (not csrPresent(name))
      return {WriteOutcome::AccessViolation, CsrIssue::Absent};
    if (name == CsrName::Mwid)
      return {WriteOutcome::AccessViolation, CsrIssue::ReadOnly};
    if (not writePermitted(name, viaAlias))
      return {WriteOutcome::AccessViolation, CsrIssue::Privilege};
    return writeWidCsr(name, value);
  }

  uint64_t Hart::readRaw(CsrName n) const
  {
    switch (n)
      {
      case CsrName::Mwid:        return csrs_.mwid;
      case CsrName::Mlwid:       return csrs_.mlwid;
      case CsrName::Mwiddeleg:   return csrs_.mwiddeleg.window(0);
      case CsrName::Mwiddelegh:  return csrs_.mwiddeleg.window(1);
      case CsrName::Mwiddelegh2: return csrs_.mwiddeleg.window(2);
      case CsrName::Mwiddelegh3: return csrs_.mwiddeleg.window(3);
      case CsrName::Slwid:       return csrs_.slwid;
      case CsrName::Hslwid:      return csrs_.hslwid;
      case CsrName::Vslwid:      return csrs_.vslwid;
      case CsrName::Hwiddeleg:   return csrs_.hwiddeleg.window(0);
      case CsrName::Hwiddelegh:  return csrs_.hwiddeleg.window(1);
      case CsrName::Hwiddelegh2: return csrs_.hwiddeleg.window(2);
      case CsrName::Hwiddelegh3: return csrs_.hwiddeleg.window(3);
      case CsrName::Spmpswitch:  return hspmp_.switchMask();
      case CsrName::Hspmpswitch: return hspmp_.hswitchMask();
      case CsrName::Hgpmpswitch: return hgpmp_.switchMask();
      case CsrName::Vspmpswitch: return vspmp_.switchMask();
      }
    return 0;
  }

  CsrReadResult Hart::readCsr(CsrName name) const
  {
    bool viaAlias = false;
    if (virtualized())
      {
        if (name == CsrName::Slwid)
          {
            name = CsrName::Vslwid;
            viaAlias = true;
          }
        else if (name == CsrName::Spmpswitch)
          {
            name = CsrName::Vspmpswitch;
            viaAlias = true;
          }
      }

    if (not csrPresent(name))
      return {false, 0, CsrIssue::Absent};
    if (name == CsrName::Mwid)
      {
        if (mode_ != PrivMode::M)
          return {false, 0, CsrIssue::Privilege};
        return {true, csrs_.mwid, CsrIssue::None};
      }
    if (not writePermitted(name, viaAlias))
      return {false, 0, CsrIssue::Privilege};
    return {true, readRaw(name), CsrIssue::None};
  }

  std::optional<Wid> Hart::resolveWid() const
  {
    const ExtensionSet& e = config_.ext;

    auto delegated = [this](DelegLevel level, uint32_t value) -> std::optional<Wid> {
      if (effectiveDeleg(level).test(value))
        return Wid(value);
      return std::nullopt;
    };

    // Selection falls back to the widest applicable register when the
    // finer-grained extension is absent: vslwid/hslwid, then slwid,
    // then mlwid, then the fixed machine WID.
    switch (mode_)
      {
      case PrivMode::M:
        return csrs_.mwid;

      case PrivMode::HS:
        return e.smwg ? csrs_.mlwid : csrs_.mwid;

      case PrivMode::U:
        if (e.sswg)
          return delegated(DelegLevel::Supervisor, csrs_.slwid);
        return e.smwg ? csrs_.mlwid : csrs_.mwid;

      case PrivMode::VS:
        if (e.shwgd)
          return delegated(DelegLevel::Supervisor, csrs_.hslwid);
        if (e.sswg)
          return delegated(DelegLevel::Supervisor, csrs_.slwid);
        return e.smwg ? csrs_.mlwid : csrs_.mwid;

      case PrivMode::VU:
        if (e.shwgd)
          return delegated(DelegLevel::VirtualSupervisor, csrs_.vslwid);
        if (e.sswg)
          return delegated(DelegLevel::Supervisor, csrs_.slwid);
        return e.smwg ? csrs_.mlwid : csrs_.mwid;
      }
    return std::nullopt;
  }

  CheckVerdict Hart::checkAccess(uint64_t addr, unsigned size, AccessKind kind) const
  {
    AccessRequest req{addr, size, kind, modeClassOf(mode_)};

    if (mode_ == PrivMode::M)
      return mpmp_.check(req, ~uint64_t{0});

    if (virtualized())
      {
        if (config_.ext.spmpHypervisor)
          {
            CheckVerdict first = vspmp_.check(req, vspmp_.switchMask());
            if (not first.allow)
              return first;

            // The hypervisor stage sees guest execution as user-class.
            AccessRequest guestReq = req;
            guestReq.modeClass = ModeClass::ULike;
            if (config_.model == SpmpModel::Unified)
              {
                CheckVerdict second = hspmp_.check(guestReq, hspmp_.hswitchMask());
                if (not second.allow)
                  return second;
              }
            else
              {
                CheckVerdict second = hgpmp_.check(guestReq, hgpmp_.switchMask());
                if (not second.allow)
                  return second;
              }
          }
        CheckVerdict last = mpmp_.check(req, ~uint64_t{0});
        if (not last.allow)
          return last;
        return CheckVerdict::allowed();
      }

    if (config_.ext.spmp)
      {
        CheckVerdict v = hspmp_.check(req, hspmp_.switchMask());
        if (not v.allow)
          return v;
      }
    CheckVerdict last = mpmp_.check(req, ~uint64_t{0});
    if (not last.allow)
      return last;
    return CheckVerdict::allowed();
  }

  std::variant<SwitchStats, std::string> Hart::vmSwitch(const VmImage& image)
  {
    const ExtensionSet& e = config_.ext;
    if (not e.shwgd)
      return std::string("vm switch requires the shwgd extension");
    if (not e.spmpHypervisor)
      return std::string("vm switch requires the spmphyp extension");
    if (mode_ != PrivMode::M and mode_ != PrivMode::HS)
      return std::string("vm switch must be issued from M or HS mode");

    WidBitVector deleg = effectiveDeleg(DelegLevel::Supervisor);
    if (image.hslwid >= nworlds_ or not deleg.test(image.hslwid))
      return "vm '" + image.name + "' hslwid " + std::to_string(image.hslwid)
             + " is not delegated by mwiddeleg";
    WidBitVector vmWids;
    for (Wid w : image.wids)
      {
        if (w >= nworlds_ or not deleg.test(w))
          return "vm '" + image.name + "' wid " + std::to_string(w)
                 + " is not delegated by mwiddeleg";
        vmWids.set(w);
      }

    SpmpUnit& guestUnit = config_.model == SpmpModel::Unified ? hspmp_ : hgpmp_;
    if (not image.prestaged)
      for (const auto& slot : image.entries)
        if (slot.index >= guestUnit.entryCount())
          return "vm '" + image.name + "' entry index " + std::to_string(slot.index)
                 + " exceeds the guest-serving unit";

    SwitchStats stats;

    writeCsr(CsrName::Hslwid, image.hslwid);
    ++stats.csrWrites;

    unsigned windows = e.slwgd ? (nworlds_ + 31) / 32 : 1;
    static constexpr CsrName hwindows[] = {
      CsrName::Hwiddeleg, CsrName::Hwiddelegh,
      CsrName::Hwiddelegh2, CsrName::Hwiddelegh3
    };
    for (unsigned k = 0; k < windows; ++k)
      {
        writeCsr(hwindows[k], vmWids.window(k));
        ++stats.csrWrites;
      }

    if (not image.prestaged)
      for (const auto& slot : image.entries)
        {
          guestUnit.setEntry(slot.index, slot.entry);
          stats.entryWrites += 2;   // address field plus config field
        }

    writeCsr(config_.model == SpmpModel::Unified ? CsrName::Hspmpswitch
                                                 : CsrName::Hgpmpswitch,
             image.hswitchMask);
    ++stats.csrWrites;

    return stats;
  }

  bool Hart::programEntry(unsigned globalIndex, const SpmpEntry& entry)
  {
    switch (mode_)
      {
      case PrivMode::M:
        return mpmp_.setEntry(globalIndex, entry);

      case PrivMode::HS:
        if (not config_.ext.spmp)
          return false;
        if (config_.model == SpmpModel::Separate)
          {
            if (globalIndex < hspmp_.entryCount())
              return hspmp_.setEntry(globalIndex, entry);
            return hgpmp_.setEntry(globalIndex - hspmp_.entryCount(), entry);
          }
        return hspmp_.setEntry(globalIndex, entry);

      case PrivMode::VS:
        if (not config_.ext.spmpHypervisor)
          return false;
        return vspmp_.setEntry(globalIndex, entry);

      case PrivMode::U:
      case PrivMode::VU:
        return false;
      }
    return false;
  }

}
