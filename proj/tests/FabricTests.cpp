// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "Generators.hpp"
#include "Oracles.hpp"
#include "wgsim/Platform.hpp"

using namespace wgsim;

namespace
{

  PlatformDecl basePlatform()
  {
    PlatformDecl d;
    d.nworlds = 16;
    HartConfig h;
    h.hartId = 0;
    h.mwid = 0;
    h.ext.hypervisor = true;
    h.ext.smwg = h.ext.smwgd = h.ext.sswg = h.ext.shwgd = true;
    h.ext.spmp = h.ext.spmpHypervisor = true;
    d.harts.push_back(h);
    d.anms.push_back({"dma0", 9});
    d.resources.push_back({"ram0", true, 0x0, 0x1000, 4});
    d.resources.push_back({"uart0", false, 0x2000, 0x100, 1});
    return d;
  }

  Platform build(const PlatformDecl& d)
  {
    auto r = Platform::build(d);
    REQUIRE(std::holds_alternative<Platform>(r));
    return std::move(std::get<Platform>(r));
  }

}

TEST_CASE("checker configuration and locking")
{
  Platform p = build(basePlatform());
  ResourceChecker* ram = p.findChecker("ram0");
  REQUIRE(ram);

  std::map<Wid, Perm> rw{{3, {true, true}}};
  CHECK(ram->configure(0, {{0x0, 0x1000}}, rw, true) == CheckerConfigOutcome::Ok);
  CHECK(ram->locked());
  CHECK(ram->configure(1, {{0x0, 0x100}}, rw, false) == CheckerConfigOutcome::Locked);

  ResourceChecker* uart = p.findChecker("uart0");
  REQUIRE(uart);
  CHECK(uart->configure(0, {{0x0, 0x10}}, rw, false) == CheckerConfigOutcome::RangeError);
  CHECK(uart->configure(0, std::nullopt, rw, false) == CheckerConfigOutcome::Ok);

  CHECK(ram->slotCount() == 4);
  CHECK(uart->slotCount() == 1);
}

TEST_CASE("range validation")
{
  Platform p = build(basePlatform());
  ResourceChecker* ram = p.findChecker("ram0");
  std::map<Wid, Perm> r{{1, {true, false}}};
  CHECK(ram->configure(0, {{0xf00, 0x200}}, r, false) == CheckerConfigOutcome::RangeError);
  CHECK(ram->configure(0, {{0x0, 0x0}}, r, false) == CheckerConfigOutcome::RangeError);
  CHECK(ram->configure(9, {{0x0, 0x100}}, r, false) == CheckerConfigOutcome::BadSlot);
}

TEST_CASE("overlapping slots resolve by ascending index")
{
  Platform p = build(basePlatform());
  ResourceChecker* ram = p.findChecker("ram0");
  std::map<Wid, Perm> first{{1, {true, false}}};
  std::map<Wid, Perm> second{{1, {true, true}}};
  REQUIRE(ram->configure(0, {{0x100, 0x100}}, first, false) == CheckerConfigOutcome::Ok);
  REQUIRE(ram->configure(1, {{0x0, 0x400}}, second, false) == CheckerConfigOutcome::Ok);

  // Inside the overlap the first slot decides; elsewhere slot 1 takes over.
  for (uint64_t addr = 0; addr < 0x400; addr += 4)
    {
      bool inFirst = addr >= 0x100 and addr < 0x200;
      CHECK(ram->permits(1, addr, 4, false));
      CHECK(ram->permits(1, addr, 4, true) == not inFirst);
    }
}

TEST_CASE("fabric routing")
{
  Platform p = build(basePlatform());
  ResourceChecker* ram = p.findChecker("ram0");
  REQUIRE(ram->configure(0, {{0x0, 0x1000}}, {{9, {true, false}}}, false)
          == CheckerConfigOutcome::Ok);

  CHECK(p.anmAccess("dma0", 0x10, 4, false).allow);
  CheckVerdict w = p.anmAccess("dma0", 0x10, 4, true);
  CHECK_FALSE(w.allow);
  CHECK((w.denyStage == DenyStage::Checker));

  // Unmapped addresses and boundary-straddling accesses deny.
  CHECK_FALSE(p.anmAccess("dma0", 0x5000, 4, false).allow);
  CHECK_FALSE(p.anmAccess("dma0", 0xffc, 8, false).allow);
}

TEST_CASE("hart path composes cpu stages, wid resolution and the checker")
{
  PlatformDecl d = basePlatform();
  Platform p = build(d);
  Hart* hart = p.findHart(0);
  ResourceChecker* ram = p.findChecker("ram0");
  REQUIRE(ram->configure(0, {{0x0, 0x1000}}, {{3, {true, true}}}, false)
          == CheckerConfigOutcome::Ok);

  hart->writeCsr(CsrName::Mlwid, 3);
  hart->writeCsr(CsrName::Mwiddeleg, 0b11000);
  hart->setMode(PrivMode::HS);
  hart->writeCsr(CsrName::Slwid, 3);
  hart->programEntry(0, *encodeEntry(AddrMode::Napot, 0x0, 0x1000,
                                     true, true, false, true, false));
  hart->programEntry(2, *encodeEntry(AddrMode::Napot, 0x0, 0x1000,
                                     true, true, false, false, false));

  // Fully granted path: HS carries mlwid = 3, which the slot grants.
  CHECK(p.hartAccess(0, 0x100, 4, AccessKind::Read).allow);

  // SPMP grants but the checker denies: a peripheral with no grant.
  ResourceChecker* uart = p.findChecker("uart0");
  REQUIRE(uart->configure(0, std::nullopt, {{1, {true, true}}}, false)
          == CheckerConfigOutcome::Ok);
  hart->programEntry(1, *encodeEntry(AddrMode::Napot, 0x2000, 0x100,
                                     true, true, false, true, false));
  CheckVerdict v = p.hartAccess(0, 0x2000, 4, AccessKind::Read);
  CHECK_FALSE(v.allow);
  CHECK((v.denyStage == DenyStage::Checker));

  // Revoked delegation faults at the initiator before any bus activity.
  // The s=0 entry lets the U-mode access clear the SPMP stage first.
  hart->setMode(PrivMode::M);
  hart->writeCsr(CsrName::Mwiddeleg, 0);
  hart->setMode(PrivMode::U);
  v = p.hartAccess(0, 0x100, 4, AccessKind::Read);
  CHECK_FALSE(v.allow);
  CHECK((v.denyStage == DenyStage::Initiator));
}

TEST_CASE("stage ordering attributes the earliest denial")
{
  PlatformDecl d = basePlatform();
  Platform p = build(d);
  Hart* hart = p.findHart(0);

  // Nothing is configured: the hSPMP stage is transparent, WID 0
  // resolves, and the unconfigured checker denies.
  hart->setMode(PrivMode::HS);
  CheckVerdict v = p.hartAccess(0, 0x100, 4, AccessKind::Read);
  CHECK((v.denyStage == DenyStage::Checker));

  // Programming a non-matching SPMP entry moves the denial earlier.
  hart->programEntry(0, *encodeEntry(AddrMode::Napot, 0x800, 0x100,
                                     true, false, false, true, false));
  v = p.hartAccess(0, 0x100, 4, AccessKind::Read);
  CHECK((v.denyStage == DenyStage::HsPmp));
}

TEST_CASE("anm verdicts are immune to hart csr state")
{
  gen::Rng rng(0x5eed2001);
  PlatformDecl d = basePlatform();
  Platform p = build(d);
  ResourceChecker* ram = p.findChecker("ram0");
  REQUIRE(ram->configure(0, {{0x0, 0x800}}, {{9, {true, true}}}, false)
          == CheckerConfigOutcome::Ok);
  Hart* hart = p.findHart(0);

  auto snapshot = [&] {
    std::vector<CheckVerdict> v;
    for (uint64_t addr = 0; addr < 0x1000; addr += 0x100)
      for (bool write : {false, true})
        v.push_back(p.anmAccess("dma0", addr, 4, write));
    return v;
  };

  auto before = snapshot();
  auto script = gen::randomCsrScript(rng, 16, true, 30);
  for (const auto& op : script)
    {
      if (op.isModeChange)
        hart->setMode(op.mode);
      else if (auto csr = csrFromString(op.csr))
        hart->writeCsr(*csr, op.value);
    }
  CHECK(snapshot() == before);
}

TEST_CASE("locked checkers keep constant verdicts")
{
  Platform p = build(basePlatform());
  ResourceChecker* ram = p.findChecker("ram0");
  REQUIRE(ram->configure(0, {{0x0, 0x1000}}, {{2, {true, false}}}, true)
          == CheckerConfigOutcome::Ok);

  auto snapshot = [&] {
    std::vector<bool> v;
    for (Wid wid = 0; wid < 16; ++wid)
      for (uint64_t addr = 0; addr < 0x1000; addr += 0x80)
        for (bool write : {false, true})
          v.push_back(ram->permits(wid, addr, 4, write));
    return v;
  };

  auto before = snapshot();
  CHECK(ram->configure(1, {{0x0, 0x100}}, {{5, {true, true}}}, false)
        == CheckerConfigOutcome::Locked);
  CHECK(ram->configure(0, {{0x0, 0x100}}, {{5, {true, true}}}, true)
        == CheckerConfigOutcome::Locked);
  CHECK(snapshot() == before);
}
