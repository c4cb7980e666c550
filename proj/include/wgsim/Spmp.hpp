// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wgsim/Types.hpp"

namespace wgsim
{

  /// Address-matching mode of a PMP-style entry.
  enum class AddrMode : uint8_t { Off, Tor, Na4, Napot };

  std::string_view toString(AddrMode m);
  std::optional<AddrMode> addrModeFromString(std::string_view s);

  /// One PMP-style entry. The address field holds the byte address
  /// shifted right by two, with NAPOT size folded into the trailing
  /// ones, as in the base PMP encoding. The s bit is meaningful only in
  /// SPMP-family units; lock only in the machine PMP.
  struct SpmpEntry
  {
    uint64_t addrField = 0;
    AddrMode addrMode = AddrMode::Off;
    bool permR = false;
    bool permW = false;
    bool permX = false;
    bool sBit = false;
    bool locked = false;

    bool grants(AccessKind k) const
    {
      switch (k)
        {
        case AccessKind::Read:    return permR;
        case AccessKind::Write:   return permW;
        case AccessKind::Execute: return permX;
        }
      return false;
    }

    bool operator==(const SpmpEntry&) const = default;
  };

  /// Half-open byte interval [lo, hi).
  struct ByteRange
  {
    uint64_t lo = 0;
    uint64_t hi = 0;
  };

  /// Decodes the byte interval an entry covers. prevTopByte is the
  /// previous entry's address field shifted left by two (TOR lower
  /// bound; 0 for entry 0). Returns nullopt for OFF entries and for
  /// empty TOR intervals.
  std::optional<ByteRange> entryRegion(const SpmpEntry& entry, uint64_t prevTopByte);

  /// Encodes a NAPOT address field for [base, base+size). size must be
  /// a power of two >= 8 and base must be size-aligned; returns nullopt
  /// otherwise.
  std::optional<uint64_t> napotAddrField(uint64_t base, uint64_t size);

  /// Decodes a NAPOT address field back to its byte interval.
  ByteRange napotRegion(uint64_t addrField);

  /// Role a PMP-style unit plays in the pipeline.
  enum class SpmpUnitKind : uint8_t
  {
    MachinePmp,   // M-mode PMP, lock-aware
    HsUnified,    // hypervisor SPMP, unified model (switch + hswitch)
    HsBaseline,   // hypervisor SPMP, separate model, HS/U side
    HgPmp,        // hypervisor guest PMP, separate model, VS/VU side
    VsPmp         // guest-controlled virtual SPMP
  };

  /// PMP-style entry array plus switch registers.
  ///
  /// Matching scans entries in ascending index; the first enabled entry
  /// whose region contains the entire access decides. SPMP-family units
  /// apply the s-bit split: supervisor-class requests match only s=1
  /// entries, user-class only s=0. A unit with no programmed (non-OFF)
  /// entry imposes no policy and allows everything; once any entry is
  /// programmed, an unmatched non-machine access is denied. Machine
  /// accesses against the machine PMP are governed by locked entries
  /// only; a matching unlocked entry allows.
  class SpmpUnit
  {
  public:

    SpmpUnit() = default;

    SpmpUnit(SpmpUnitKind kind, unsigned entryCount)
      : kind_(kind), entries_(entryCount)
    { }

    SpmpUnitKind kind() const
    { return kind_; }

    unsigned entryCount() const
    { return unsigned(entries_.size()); }

    const SpmpEntry& entry(unsigned ix) const
    { return entries_.at(ix); }

    /// Returns false when ix is out of range.
    bool setEntry(unsigned ix, const SpmpEntry& e)
    {
      if (ix >= entries_.size())
        return false;
      entries_[ix] = e;
      return true;
    }

    uint64_t switchMask() const
    { return switchMask_; }

    void setSwitchMask(uint64_t mask)
    { switchMask_ = mask; }

    uint64_t hswitchMask() const
    { return hswitchMask_; }

    void setHswitchMask(uint64_t mask)
    { hswitchMask_ = mask; }

    /// Count of non-OFF entries.
    unsigned usedEntries() const;

    bool transparent() const
    { return usedEntries() == 0; }

    /// Pipeline stage this unit reports on denial.
    DenyStage stage() const;

    /// Checks one access against this unit. activeMask selects which
    /// switch register applies; bit i = 0 disables entry i.
    CheckVerdict check(const AccessRequest& req, uint64_t activeMask) const;

  private:

    SpmpUnitKind kind_ = SpmpUnitKind::MachinePmp;
    std::vector<SpmpEntry> entries_;
    uint64_t switchMask_ = ~uint64_t{0};
    uint64_t hswitchMask_ = ~uint64_t{0};
  };

}
