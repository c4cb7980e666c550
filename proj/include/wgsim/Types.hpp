// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

namespace wgsim
{

  /// World identifier. Valid values are in [0, nworlds) of the platform.
  using Wid = uint32_t;

  /// Platform-wide caps on NWorlds. 32 without the wide-delegation
  /// extension, 128 with it.
  inline constexpr unsigned maxWorldsBase = 32;
  inline constexpr unsigned maxWorldsWide = 128;

  /// Number of 32-bit windows a delegation bit-vector spans.
  inline constexpr unsigned delegWindowCount = 4;

  /// Hart privilege modes. HS doubles as plain S when the hypervisor
  /// extension is absent. VS/VU are the virtualized modes (V=1).
  enum class PrivMode : uint8_t { M, HS, U, VS, VU };

  inline bool isVirtualized(PrivMode m)
  { return m == PrivMode::VS or m == PrivMode::VU; }

  std::string_view toString(PrivMode m);
  std::optional<PrivMode> privModeFromString(std::string_view s);

  /// Per-hart ISA extension flags. Dependencies between flags are
  /// checked by firstViolation().
  struct ExtensionSet
  {
    bool hypervisor = false;
    bool smwg = false;
    bool smwgd = false;
    bool sswg = false;
    bool shwgd = false;
    bool slwgd = false;
    bool spmp = false;
    bool spmpHypervisor = false;

    /// Returns a description of the first violated dependency rule, or
    /// nullopt when the set is consistent.
    std::optional<std::string> firstViolation() const;

    bool consistent() const
    { return not firstViolation().has_value(); }

    bool operator==(const ExtensionSet&) const = default;
  };

  /// 128-bit set of delegated WIDs, exposed as four 32-bit CSR windows.
  /// Stored values are raw; masking to the platform NWorlds happens at
  /// use time (see Hart::effectiveDeleg).
  class WidBitVector
  {
  public:

    WidBitVector() = default;

    static WidBitVector ofWids(std::initializer_list<Wid> wids)
    {
      WidBitVector v;
      for (Wid w : wids)
        v.set(w);
      return v;
    }

    uint32_t window(unsigned ix) const
    { return words_.at(ix); }

    void setWindow(unsigned ix, uint32_t value)
    { words_.at(ix) = value; }

    bool test(Wid wid) const
    {
      if (wid >= maxWorldsWide)
        return false;
      return (words_[wid / 32] >> (wid % 32)) & 1;
    }

    void set(Wid wid)
    { words_.at(wid / 32) |= uint32_t{1} << (wid % 32); }

    void clear(Wid wid)
    { words_.at(wid / 32) &= ~(uint32_t{1} << (wid % 32)); }

    /// Copy with all bits at positions >= nworlds cleared.
    WidBitVector maskedTo(unsigned nworlds) const;

    WidBitVector intersect(const WidBitVector& other) const
    {
      WidBitVector v;
      for (unsigned i = 0; i < delegWindowCount; ++i)
        v.words_[i] = words_[i] & other.words_[i];
      return v;
    }

    bool subsetOf(const WidBitVector& other) const
    {
      for (unsigned i = 0; i < delegWindowCount; ++i)
        if (words_[i] & ~other.words_[i])
          return false;
      return true;
    }

    unsigned count() const;

    bool empty() const
    {
      for (uint32_t w : words_)
        if (w)
          return false;
      return true;
    }

    bool operator==(const WidBitVector&) const = default;

  private:

    std::array<uint32_t, delegWindowCount> words_{};
  };

  /// Kind of a memory access as issued by an initiator.
  enum class AccessKind : uint8_t { Read, Write, Execute };

  std::string_view toString(AccessKind k);

  /// Privilege class a protection unit sees: supervisor-like,
  /// user-like, or machine.
  enum class ModeClass : uint8_t { SLike, ULike, Machine };

  inline ModeClass modeClassOf(PrivMode m)
  {
    switch (m)
      {
      case PrivMode::M:  return ModeClass::Machine;
      case PrivMode::HS: return ModeClass::SLike;
      case PrivMode::U:  return ModeClass::ULike;
      case PrivMode::VS: return ModeClass::SLike;
      case PrivMode::VU: return ModeClass::ULike;
      }
    return ModeClass::ULike;
  }

  /// Pipeline stage that denied an access.
  enum class DenyStage : uint8_t { VsPmp, HsPmp, HgPmp, MPmp, Checker, Initiator };

  std::string_view toString(DenyStage s);
  std::optional<DenyStage> denyStageFromString(std::string_view s);

  /// A physical access as seen by the protection pipeline.
  struct AccessRequest
  {
    uint64_t addr = 0;
    unsigned size = 4;            // bytes, one of 1/2/4/8
    AccessKind kind = AccessKind::Read;
    ModeClass modeClass = ModeClass::ULike;
  };

  /// Outcome of a protection check. denyStage is present iff the access
  /// was denied. matchedEntry is the index of the deciding entry when a
  /// single unit decided (unit-level checks only).
  struct CheckVerdict
  {
    bool allow = true;
    std::optional<DenyStage> denyStage{};
    std::optional<unsigned> matchedEntry{};

    static CheckVerdict allowed(std::optional<unsigned> entry = std::nullopt)
    { return CheckVerdict{true, std::nullopt, entry}; }

    static CheckVerdict denied(DenyStage stage,
                               std::optional<unsigned> entry = std::nullopt)
    { return CheckVerdict{false, stage, entry}; }

    bool operator==(const CheckVerdict&) const = default;
  };

}
