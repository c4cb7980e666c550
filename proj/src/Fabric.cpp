// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgsim/Fabric.hpp"

namespace wgsim
{

  CheckerConfigOutcome ResourceChecker::configure(unsigned slotIx,
                                                  std::optional<std::pair<uint64_t, uint64_t>> range,
                                                  const std::map<Wid, Perm>& widPerms,
                                                  bool lock)
  {
    if (locked_)
      return CheckerConfigOutcome::Locked;
    if (slotIx >= slots_.size())
      return CheckerConfigOutcome::BadSlot;
    if (range)
      {
        if (not rangeCapable_)
          return CheckerConfigOutcome::RangeError;
        auto [off, len] = *range;
        if (len == 0 or off + len > size_)
          return CheckerConfigOutcome::RangeError;
      }

    Slot& s = slots_[slotIx];
    s.configured = true;
    s.range = range;
    s.widPerms = widPerms;
    if (lock)
      locked_ = true;
    return CheckerConfigOutcome::Ok;
  }

  bool ResourceChecker::permits(Wid wid, uint64_t addr, unsigned size, bool write) const
  {
    uint64_t off = addr - base_;
    for (const Slot& s : slots_)
      {
        if (not s.configured)
          continue;
        uint64_t lo = 0;
        uint64_t hi = size_;
        if (s.range)
          {
            lo = s.range->first;
            hi = s.range->first + s.range->second;
          }
        if (off < lo or off + size > hi)
          continue;
        auto it = s.widPerms.find(wid);
        if (it == s.widPerms.end())
          return false;
        return write ? it->second.w : it->second.r;
      }
    return false;
  }

  CheckVerdict fabricRoute(const Transaction& txn,
                           const std::vector<ResourceChecker>& checkers)
  {
    for (const ResourceChecker& c : checkers)
      if (c.contains(txn.addr, txn.size))
        {
          if (c.permits(txn.wid, txn.addr, txn.size, txn.write))
            return CheckVerdict::allowed();
          return CheckVerdict::denied(DenyStage::Checker);
        }
    return CheckVerdict::denied(DenyStage::Checker);
  }

}
