// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgsim/Spmp.hpp"

#include <bit>

namespace wgsim
{

  std::string_view toString(AddrMode m)
  {
    switch (m)
      {
      case AddrMode::Off:   return "off";
      case AddrMode::Tor:   return "tor";
      case AddrMode::Na4:   return "na4";
      case AddrMode::Napot: return "napot";
      }
    return "?";
  }

  std::optional<AddrMode> addrModeFromString(std::string_view s)
  {
    if (s == "off")   return AddrMode::Off;
    if (s == "tor")   return AddrMode::Tor;
    if (s == "na4")   return AddrMode::Na4;
    if (s == "napot") return AddrMode::Napot;
    return std::nullopt;
  }

  std::optional<uint64_t> napotAddrField(uint64_t base, uint64_t size)
  {
    if (size < 8 or std::popcount(size) != 1)
      return std::nullopt;
    if (base % size != 0)
      return std::nullopt;
    return (base >> 2) | ((size >> 3) - 1);
  }

  ByteRange napotRegion(uint64_t addrField)
  {
    // Trailing ones of the address field encode the region size.
    unsigned t = unsigned(std::countr_one(addrField));
    if (t >= 61)
      return ByteRange{0, ~uint64_t{0}};   // covers the whole space
    uint64_t size = uint64_t{1} << (t + 3);
    uint64_t base = (addrField & ~((uint64_t{1} << (t + 1)) - 1)) << 2;
    return ByteRange{base, base + size};
  }

  std::optional<ByteRange> entryRegion(const SpmpEntry& entry, uint64_t prevTopByte)
  {
    switch (entry.addrMode)
      {
      case AddrMode::Off:
        return std::nullopt;
      case AddrMode::Tor:
        {
          uint64_t hi = entry.addrField << 2;
          if (hi <= prevTopByte)
            return std::nullopt;
          return ByteRange{prevTopByte, hi};
        }
      case AddrMode::Na4:
        {
          uint64_t lo = entry.addrField << 2;
          return ByteRange{lo, lo + 4};
        }
      case AddrMode::Napot:
        return napotRegion(entry.addrField);
      }
    return std::nullopt;
  }

  unsigned SpmpUnit::usedEntries() const
  {
    unsigned n = 0;
    for (const auto& e : entries_)
      if (e.addrMode != AddrMode::Off)
        ++n;
    return n;
  }

  DenyStage SpmpUnit::stage() const
  {
    switch (kind_)
      {
      case SpmpUnitKind::MachinePmp: return DenyStage::MPmp;
      case SpmpUnitKind::HsUnified:  return DenyStage::HsPmp;
      case SpmpUnitKind::HsBaseline: return DenyStage::HsPmp;
      case SpmpUnitKind::HgPmp:      return DenyStage::HgPmp;
      case SpmpUnitKind::VsPmp:      return DenyStage::VsPmp;
      }
    return DenyStage::MPmp;
  }

  CheckVerdict SpmpUnit::check(const AccessRequest& req, uint64_t activeMask) const
  {
    if (transparent())
      return CheckVerdict::allowed();

    const bool machinePmp = kind_ == SpmpUnitKind::MachinePmp;

    for (unsigned i = 0; i < entries_.size(); ++i)
      {
        const SpmpEntry& e = entries_[i];
        if (e.addrMode == AddrMode::Off)
          continue;
        if (i < 64 and not ((activeMask >> i) & 1))
          continue;

        if (not machinePmp)
          {
            // Strict s-bit split. Machine-class requests never reach
            // SPMP-family units in the pipeline; treat them as SLike.
            bool wantS = req.modeClass != ModeClass::ULike;
            if (e.sBit != wantS)
              continue;
          }

        uint64_t prevTop = i > 0 ? entries_[i - 1].addrField << 2 : 0;
        auto region = entryRegion(e, prevTop);
        if (not region)
          continue;
        if (req.addr < region->lo or req.addr + req.size > region->hi)
          continue;

        if (machinePmp and req.modeClass == ModeClass::Machine and not e.locked)
          return CheckVerdict::allowed(i);
        if (e.grants(req.kind))
          return CheckVerdict::allowed(i);
        return CheckVerdict::denied(stage(), i);
      }

    if (machinePmp and req.modeClass == ModeClass::Machine)
      return CheckVerdict::allowed();
    return CheckVerdict::denied(stage());
  }

}
