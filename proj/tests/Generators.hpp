// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

// Seeded random generators shared by the property tests and the
// acceptance suite.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "Oracles.hpp"
#include "wgsim/Scenario.hpp"

namespace gen
{

  using Rng = std::mt19937;

  inline unsigned pick(Rng& rng, unsigned lo, unsigned hi)
  {
    return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
  }

  inline bool coin(Rng& rng)
  {
    return pick(rng, 0, 1) == 1;
  }

  /// Consistent-by-construction extension set.
  inline wgsim::ExtensionSet randomExtensions(Rng& rng)
  {
    wgsim::ExtensionSet e;
    unsigned level = pick(rng, 0, 3);   // depth of the wg extension chain
    e.smwg = level >= 1;
    e.smwgd = level >= 2;
    e.sswg = level >= 3;
    e.hypervisor = coin(rng);
    if (e.sswg and e.hypervisor and coin(rng))
      e.shwgd = true;
    if (e.smwgd and coin(rng))
      e.slwgd = true;
    e.spmp = coin(rng);
    if (e.spmp and e.hypervisor and coin(rng))
      e.spmpHypervisor = true;
    return e;
  }

  /// Entry whose region stays inside an 8-bit byte space.
  inline wgsim::SpmpEntry randomEntry8bit(Rng& rng, bool allowTor, bool machine)
  {
    wgsim::SpmpEntry e;
    unsigned m = pick(rng, 0, allowTor ? 3 : 2);
    switch (m)
      {
      case 0:
        e.addrMode = wgsim::AddrMode::Off;
        break;
      case 1:
        e.addrMode = wgsim::AddrMode::Na4;
        e.addrField = pick(rng, 0, 63);
        break;
      case 2:
        {
          e.addrMode = wgsim::AddrMode::Napot;
          unsigned sizeLog = pick(rng, 3, 8);             // 8..256 bytes
          uint64_t size = uint64_t{1} << sizeLog;
          unsigned slots = unsigned(256 / size);
          uint64_t base = (slots > 1 ? pick(rng, 0, slots - 1) : 0) * size;
          e.addrField = *wgsim::napotAddrField(base, size);
          break;
        }
      case 3:
        e.addrMode = wgsim::AddrMode::Tor;
        e.addrField = pick(rng, 0, 64);
        break;
      }
    e.permR = coin(rng);
    e.permW = coin(rng);
    e.permX = coin(rng);
    e.sBit = coin(rng);
    e.locked = machine and coin(rng);
    return e;
  }

  // ------------------------------------------------------------------
  // Random CSR scripts for the delegation algebra suite.

  struct CsrOp
  {
    bool isModeChange = false;
    wgsim::PrivMode mode = wgsim::PrivMode::M;
    std::string csr;
    uint64_t value = 0;
  };

  inline const char* randomWidCsr(Rng& rng)
  {
    static const char* names[] = {
      "mlwid", "mwiddeleg", "mwiddelegh", "slwid", "hslwid", "vslwid",
      "hwiddeleg", "hwiddelegh",
    };
    return names[pick(rng, 0, 7)];
  }

  inline wgsim::PrivMode randomMode(Rng& rng, bool hypervisor)
  {
    static const wgsim::PrivMode all[] = {
      wgsim::PrivMode::M, wgsim::PrivMode::HS, wgsim::PrivMode::U,
      wgsim::PrivMode::VS, wgsim::PrivMode::VU,
    };
    wgsim::PrivMode m = all[pick(rng, 0, 4)];
    if (not hypervisor and wgsim::isVirtualized(m))
      m = wgsim::PrivMode::HS;
    return m;
  }

  inline std::vector<CsrOp> randomCsrScript(Rng& rng, unsigned nworlds,
                                            bool hypervisor, unsigned maxOps)
  {
    std::vector<CsrOp> ops;
    unsigned n = pick(rng, 1, maxOps);
    for (unsigned i = 0; i < n; ++i)
      {
        CsrOp op;
        if (pick(rng, 0, 3) == 0)
          {
            op.isModeChange = true;
            op.mode = randomMode(rng, hypervisor);
          }
        else
          {
            op.csr = randomWidCsr(rng);
            if (op.csr == "mwiddeleg" or op.csr == "hwiddeleg"
                or op.csr == "mwiddelegh" or op.csr == "hwiddelegh")
              op.value = pick(rng, 0, (1u << std::min(nworlds, 16u)) - 1);
            else
              op.value = pick(rng, 0, nworlds + 2);   // includes illegal values
          }
        ops.push_back(op);
      }
    return ops;
  }

  // ------------------------------------------------------------------
  // Random end-to-end pipeline cases over an 8-bit address space.

  struct PipelineOp
  {
    enum class Kind { SetMode, WriteCsr, Program } kind = Kind::SetMode;
    wgsim::PrivMode mode = wgsim::PrivMode::M;
    std::string csr;
    uint64_t value = 0;
    unsigned index = 0;
    wgsim::SpmpEntry entry{};
  };

  struct SlotCase
  {
    unsigned resourceIx = 0;
    unsigned slot = 0;
    bool whole = true;
    uint64_t off = 0;
    uint64_t len = 0;
    std::vector<std::tuple<unsigned, bool, bool>> perms;   // wid, r, w
  };

  struct PipelineCase
  {
    unsigned nworlds = 8;
    wgsim::HartConfig hart{};
    std::vector<wgsim::ResourceDecl> resources;
    std::vector<SlotCase> slots;
    std::vector<PipelineOp> ops;
  };

  inline PipelineCase randomPipelineCase(Rng& rng)
  {
    PipelineCase pc;
    pc.nworlds = 1u << pick(rng, 2, 4);   // 4, 8 or 16

    pc.hart.hartId = 0;
    pc.hart.mwid = pick(rng, 0, pc.nworlds - 1);
    // Bias toward fully featured harts; the sparse ones exercise the
    // fallback paths.
    wgsim::ExtensionSet e = randomExtensions(rng);
    if (pick(rng, 0, 3) != 0)
      {
        e.smwg = e.smwgd = e.sswg = true;
        e.hypervisor = true;
        e.shwgd = coin(rng);
        e.spmp = true;
        e.spmpHypervisor = coin(rng);
      }
    pc.hart.ext = e;
    pc.hart.model = coin(rng) ? wgsim::SpmpModel::Unified : wgsim::SpmpModel::Separate;
    pc.hart.spmpEntries = pick(rng, 2, 8);
    pc.hart.splitIndex = pick(rng, 0, pc.hart.spmpEntries);
    pc.hart.vspmpEntries = pick(rng, 2, 6);
    pc.hart.mpmpEntries = pick(rng, 0, 4);

    // Up to three disjoint resources on a 64-byte grid.
    unsigned cuts[3] = {0, 0, 0};
    cuts[0] = pick(rng, 0, 2);
    cuts[1] = pick(rng, cuts[0] + 1, 3);
    unsigned count = pick(rng, 1, 3);
    uint64_t starts[3] = {0, cuts[0] * 64ull + 64, cuts[1] * 64ull + 64};
    for (unsigned i = 0; i < count; ++i)
      {
        wgsim::ResourceDecl r;
        r.name = "r" + std::to_string(i);
        r.memory = coin(rng);
        r.base = starts[i];
        uint64_t limit = i + 1 < count ? starts[i + 1] : 256;
        if (limit <= r.base)
          continue;
        r.size = pick(rng, 1, unsigned((limit - r.base) / 16)) * 16ull;
        r.slots = r.memory ? pick(rng, 1, 3) : 1;
        pc.resources.push_back(r);
      }

    for (unsigned i = 0; i < pc.resources.size(); ++i)
      {
        const wgsim::ResourceDecl& r = pc.resources[i];
        unsigned nSlots = pick(rng, 0, r.slots);
        for (unsigned s = 0; s < nSlots; ++s)
          {
            SlotCase sc;
            sc.resourceIx = i;
            sc.slot = s;
            sc.whole = not r.memory or coin(rng);
            if (not sc.whole)
              {
                uint64_t granules = r.size / 4;
                uint64_t offG = pick(rng, 0, unsigned(granules - 1));
                sc.off = offG * 4;
                sc.len = pick(rng, 1, unsigned(granules - offG)) * 4;
              }
            unsigned nPerms = pick(rng, 1, 3);
            for (unsigned p = 0; p < nPerms; ++p)
              sc.perms.emplace_back(pick(rng, 0, pc.nworlds - 1), coin(rng), coin(rng));
            pc.slots.push_back(sc);
          }
      }

    // Machine-mode setup, then hypervisor state, then guest state.
    auto addWrite = [&](const char* csr, uint64_t v) {
      PipelineOp op;
      op.kind = PipelineOp::Kind::WriteCsr;
      op.csr = csr;
      op.value = v;
      pc.ops.push_back(op);
    };
    auto addMode = [&](wgsim::PrivMode m) {
      PipelineOp op;
      op.kind = PipelineOp::Kind::SetMode;
      op.mode = m;
      pc.ops.push_back(op);
    };
    auto addProgram = [&](unsigned ix, const wgsim::SpmpEntry& entry) {
      PipelineOp op;
      op.kind = PipelineOp::Kind::Program;
      op.index = ix;
      op.entry = entry;
      pc.ops.push_back(op);
    };

    uint64_t widMask = (1ull << pc.nworlds) - 1;
    addWrite("mlwid", pick(rng, 0, pc.nworlds - 1));
    addWrite("mwiddeleg", pick(rng, 0, unsigned(widMask)));
    for (unsigned i = 0; i < pc.hart.mpmpEntries; ++i)
      if (coin(rng))
        addProgram(i, randomEntry8bit(rng, true, true));

    addMode(wgsim::PrivMode::HS);
    addWrite("slwid", pick(rng, 0, pc.nworlds - 1));
    addWrite("hslwid", pick(rng, 0, pc.nworlds - 1));
    addWrite("vslwid", pick(rng, 0, pc.nworlds - 1));
    addWrite("hwiddeleg", pick(rng, 0, unsigned(widMask)));
    for (unsigned i = 0; i < pc.hart.spmpEntries; ++i)
      if (coin(rng))
        addProgram(i, randomEntry8bit(rng, true, false));
    addWrite("spmpswitch", pick(rng, 0, 0xffff));
    if (pc.hart.model == wgsim::SpmpModel::Unified)
      addWrite("hspmpswitch", pick(rng, 0, 0xffff));
    else
      addWrite("hgpmpswitch", pick(rng, 0, 0xffff));

    if (pc.hart.ext.hypervisor)
      {
        addMode(wgsim::PrivMode::VS);
        for (unsigned i = 0; i < pc.hart.vspmpEntries; ++i)
          if (coin(rng))
            addProgram(i, randomEntry8bit(rng, true, false));
        addWrite("spmpswitch", pick(rng, 0, 0xffff));   // guest's aliased switch
        addWrite("slwid", pick(rng, 0, pc.nworlds - 1));
      }

    return pc;
  }

  // ------------------------------------------------------------------
  // Random scenario programs for the parser round-trip suite.

  inline wgsim::ScenarioProgram randomProgram(Rng& rng)
  {
    wgsim::ScenarioProgram p;
    bool wide = pick(rng, 0, 4) == 0;
    p.platform.nworlds = wide ? pick(rng, 33, 128) : pick(rng, 2, 32);

    unsigned nHarts = pick(rng, 1, 3);
    for (unsigned i = 0; i < nHarts; ++i)
      {
        wgsim::HartConfig h;
        h.hartId = i;
        h.mwid = pick(rng, 0, p.platform.nworlds - 1);
        h.ext = randomExtensions(rng);
        if (wide)
          {
            h.ext.smwg = h.ext.smwgd = true;
            h.ext.slwgd = true;
          }
        h.model = coin(rng) ? wgsim::SpmpModel::Unified : wgsim::SpmpModel::Separate;
        h.spmpEntries = pick(rng, 0, 32);
        // splitIndex only prints for the separate model; unified harts
        // must keep the default for the round trip to close.
        if (h.model == wgsim::SpmpModel::Separate)
          h.splitIndex = pick(rng, 0, h.spmpEntries);
        p.platform.harts.push_back(h);
      }

    unsigned nAnms = pick(rng, 0, 2);
    for (unsigned i = 0; i < nAnms; ++i)
      p.platform.anms.push_back(
        {"a" + std::to_string(i), wgsim::Wid(pick(rng, 0, p.platform.nworlds - 1))});

    unsigned nRes = pick(rng, 0, 2);
    uint64_t base = pick(rng, 0, 3) * 0x1000ull;
    for (unsigned i = 0; i < nRes; ++i)
      {
        wgsim::ResourceDecl r;
        r.name = "res" + std::to_string(i);
        r.memory = coin(rng);
        r.base = base;
        r.size = pick(rng, 1, 8) * 0x100ull;
        r.slots = r.memory ? pick(rng, 1, 4) : 1;
        base = r.base + r.size + pick(rng, 0, 2) * 0x100ull;
        p.platform.resources.push_back(r);
      }

    if (coin(rng))
      {
        wgsim::VmDecl vm;
        vm.name = "vm0";
        vm.hslwid = wgsim::Wid(pick(rng, 0, p.platform.nworlds - 1));
        unsigned nWids = pick(rng, 0, 3);
        for (unsigned i = 0; i < nWids; ++i)
          vm.wids.push_back(wgsim::Wid(pick(rng, 0, p.platform.nworlds - 1)));
        vm.hswitch = pick(rng, 0, 0xffff);
        vm.prestaged = coin(rng);
        unsigned nEntries = pick(rng, 0, 3);
        for (unsigned i = 0; i < nEntries; ++i)
          {
            wgsim::VmEntryDecl e;
            e.index = pick(rng, 0, 15);
            unsigned m = pick(rng, 0, 3);
            if (m == 0)
              e.mode = wgsim::AddrMode::Off;
            else if (m == 1)
              {
                e.mode = wgsim::AddrMode::Na4;
                e.a = pick(rng, 0, 0xffff) * 4ull;
              }
            else if (m == 2)
              {
                e.mode = wgsim::AddrMode::Tor;
                e.a = pick(rng, 0, 0xffff) * 4ull;
              }
            else
              {
                e.mode = wgsim::AddrMode::Napot;
                unsigned sizeLog = pick(rng, 3, 12);
                e.b = uint64_t{1} << sizeLog;
                e.a = pick(rng, 0, 0xff) * e.b;
              }
            if (e.mode != wgsim::AddrMode::Off)
              {
                e.r = coin(rng);
                e.w = coin(rng);
                e.x = coin(rng);
                e.s = coin(rng);
              }
            vm.entries.push_back(e);
          }
        p.platform.vms.push_back(vm);
      }

    unsigned nSteps = pick(rng, 0, 12);
    for (unsigned i = 0; i < nSteps; ++i)
      {
        wgsim::Statement stmt;
        unsigned hart = pick(rng, 0, nHarts - 1);
        switch (pick(rng, 0, 8))
          {
          case 0:
            stmt.node = wgsim::ModeStmt{hart, randomMode(rng, true)};
            break;
          case 1:
            {
              static const wgsim::CsrName csrs[] = {
                wgsim::CsrName::Mlwid, wgsim::CsrName::Mwiddeleg,
                wgsim::CsrName::Slwid, wgsim::CsrName::Hslwid,
                wgsim::CsrName::Hwiddeleg, wgsim::CsrName::Spmpswitch,
              };
              stmt.node = wgsim::CsrwStmt{hart, csrs[pick(rng, 0, 5)],
                                          pick(rng, 0, 0xffff)};
              break;
            }
          case 2:
            stmt.node = wgsim::ExpectCsrrStmt{hart, wgsim::CsrName::Mlwid,
                                              pick(rng, 0, 0xff)};
            break;
          case 3:
            {
              wgsim::SpmpStmt s;
              s.hart = hart;
              s.index = pick(rng, 0, 15);
              unsigned m = pick(rng, 0, 3);
              if (m == 0)
                s.mode = wgsim::AddrMode::Off;
              else if (m == 1)
                {
                  s.mode = wgsim::AddrMode::Na4;
                  s.a = pick(rng, 0, 0xffff) * 4ull;
                }
              else if (m == 2)
                {
                  s.mode = wgsim::AddrMode::Tor;
                  s.a = pick(rng, 0, 0xffff) * 4ull;
                }
              else
                {
                  s.mode = wgsim::AddrMode::Napot;
                  unsigned sizeLog = pick(rng, 3, 10);
                  s.b = uint64_t{1} << sizeLog;
                  s.a = pick(rng, 0, 0x3f) * s.b;
                }
              if (s.mode != wgsim::AddrMode::Off)
                {
                  s.r = coin(rng);
                  s.w = coin(rng);
                  s.x = coin(rng);
                  s.s = coin(rng);
                  s.lock = pick(rng, 0, 5) == 0;
                }
              stmt.node = s;
              break;
            }
          case 4:
            {
              wgsim::AccessStmt a;
              a.hart = hart;
              a.kind = wgsim::AccessKind(pick(rng, 0, 2));
              a.addr = pick(rng, 0, 0xffff);
              static const unsigned sizes[] = {1, 2, 4, 8};
              a.size = sizes[pick(rng, 0, 3)];
              a.expect.allow = coin(rng);
              if (not a.expect.allow and coin(rng))
                a.expect.stage = wgsim::DenyStage(pick(rng, 0, 5));
              stmt.node = a;
              break;
            }
          case 5:
            if (not p.platform.vms.empty())
              {
                stmt.node = wgsim::VmSwitchStmt{hart, p.platform.vms[0].name};
                break;
              }
            stmt.node = wgsim::ModeStmt{hart, wgsim::PrivMode::M};
            break;
          case 6:
            if (not p.platform.anms.empty())
              {
                wgsim::AnmAccessStmt a;
                a.anm = p.platform.anms[0].name;
                a.write = coin(rng);
                a.addr = pick(rng, 0, 0xffff);
                a.expect.allow = coin(rng);
                if (not a.expect.allow and coin(rng))
                  a.expect.stage = wgsim::DenyStage::Checker;
                stmt.node = a;
                break;
              }
            stmt.node = wgsim::ModeStmt{hart, wgsim::PrivMode::HS};
            break;
          case 7:
            if (not p.platform.resources.empty())
              {
                unsigned rix = pick(rng, 0, unsigned(p.platform.resources.size() - 1));
                const wgsim::ResourceDecl& r = p.platform.resources[rix];
                wgsim::CheckerStmt c;
                c.resource = r.name;
                c.slot = pick(rng, 0, r.slots - 1);
                if (r.memory and coin(rng))
                  c.range = {pick(rng, 0, 0xf) * 4ull, pick(rng, 1, 0xf) * 4ull};
                unsigned nw = pick(rng, 0, 2);
                for (unsigned k = 0; k < nw; ++k)
                  c.wids.push_back({wgsim::Wid(pick(rng, 0, p.platform.nworlds - 1)),
                                    wgsim::Perm{coin(rng), coin(rng)}});
                c.lock = pick(rng, 0, 4) == 0;
                stmt.node = c;
                break;
              }
            stmt.node = wgsim::ModeStmt{hart, wgsim::PrivMode::U};
            break;
          case 8:
            {
              static const char* counters[] = {
                "hart0.csr_writes", "denials.checker", "hart0.entry_writes",
              };
              stmt.node = wgsim::ExpectStatStmt{counters[pick(rng, 0, 2)],
                                                wgsim::CmpOp(pick(rng, 0, 5)),
                                                int64_t(pick(rng, 0, 100))};
              break;
            }
          }
        p.steps.push_back(stmt);
      }
    return p;
  }

}
