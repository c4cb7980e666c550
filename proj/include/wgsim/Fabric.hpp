// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgsim/Types.hpp"

namespace wgsim
{

  /// Read/write grant for one WID at a checker slot.
  struct Perm
  {
    bool r = false;
    bool w = false;

    bool operator==(const Perm&) const = default;
  };

  /// A WID-tagged transaction on the fabric. Instruction fetches appear
  /// as reads at this level.
  struct Transaction
  {
    std::string initiator;
    Wid wid = 0;
    uint64_t addr = 0;
    unsigned size = 4;
    bool write = false;
  };

  /// Non-CPU initiator with a statically assigned WID.
  struct Anm
  {
    std::string name;
    Wid wid = 0;

    bool operator==(const Anm&) const = default;
  };

  enum class CheckerConfigOutcome : uint8_t { Ok, Locked, RangeError, BadSlot };

  /// Resource-side access-control structure. Peripheral checkers hold a
  /// single whole-resource slot; memory checkers are range-configurable.
  /// Overlapping slots resolve by ascending slot index. Once locked, a
  /// checker rejects reconfiguration for the rest of the run.
  class ResourceChecker
  {
  public:

    struct Slot
    {
      bool configured = false;
      std::optional<std::pair<uint64_t, uint64_t>> range;   // offset, length
      std::map<Wid, Perm> widPerms;
    };

    ResourceChecker() = default;

    ResourceChecker(std::string name, uint64_t base, uint64_t size,
                    bool rangeCapable, unsigned slotCount)
      : name_(std::move(name)), base_(base), size_(size),
        rangeCapable_(rangeCapable),
        slots_(rangeCapable ? std::max(1u, slotCount) : 1)
    { }

    const std::string& name() const
    { return name_; }

    uint64_t base() const
    { return base_; }

    uint64_t size() const
    { return size_; }

    bool rangeCapable() const
    { return rangeCapable_; }

    bool locked() const
    { return locked_; }

    unsigned slotCount() const
    { return unsigned(slots_.size()); }

    const Slot& slot(unsigned ix) const
    { return slots_.at(ix); }

    bool contains(uint64_t addr, unsigned size) const
    { return addr >= base_ and addr + size <= base_ + size_; }

    CheckerConfigOutcome configure(unsigned slotIx,
                                   std::optional<std::pair<uint64_t, uint64_t>> range,
                                   const std::map<Wid, Perm>& widPerms,
                                   bool lock);

    /// Grant decision for an access fully inside this resource. addr is
    /// absolute; the first slot whose range contains the whole access
    /// decides. No matching slot, or no grant for the WID, denies.
    bool permits(Wid wid, uint64_t addr, unsigned size, bool write) const;

  private:

    std::string name_;
    uint64_t base_ = 0;
    uint64_t size_ = 0;
    bool rangeCapable_ = true;
    bool locked_ = false;
    std::vector<Slot> slots_;
  };

  /// Routes one transaction to the checker of the resource it falls in.
  /// Unmapped addresses (including accesses straddling a resource
  /// boundary) are denied.
  CheckVerdict fabricRoute(const Transaction& txn,
                           const std::vector<ResourceChecker>& checkers);

}
