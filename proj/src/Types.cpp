// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgsim/Types.hpp"

#include <bit>

namespace wgsim
{

  std::string_view toString(PrivMode m)
  {
    switch (m)
      {
      case PrivMode::M:  return "m";
      case PrivMode::HS: return "hs";
      case PrivMode::U:  return "u";
      case PrivMode::VS: return "vs";
      case PrivMode::VU: return "vu";
      }
    return "?";
  }

  std::optional<PrivMode> privModeFromString(std::string_view s)
  {
    if (s == "m")  return PrivMode::M;
    if (s == "hs") return PrivMode::HS;
    if (s == "u")  return PrivMode::U;
    if (s == "vs") return PrivMode::VS;
    if (s == "vu") return PrivMode::VU;
    return std::nullopt;
  }

  std::optional<std::string> ExtensionSet::firstViolation() const
  {
    if (smwgd and not smwg)
      return "smwgd requires smwg";
    if (sswg and not smwgd)
      return "sswg requires smwgd";
    if (shwgd and not sswg)
      return "shwgd requires sswg";
    if (shwgd and not hypervisor)
      return "shwgd requires the hypervisor extension";
    if (slwgd and not smwgd)
      return "slwgd requires smwgd";
    if (spmpHypervisor and not spmp)
      return "spmphyp requires spmp";
    if (spmpHypervisor and not hypervisor)
      return "spmphyp requires the hypervisor extension";
    return std::nullopt;
  }

  WidBitVector WidBitVector::maskedTo(unsigned nworlds) const
  {
    WidBitVector v = *this;
    for (unsigned i = 0; i < delegWindowCount; ++i)
      {
        unsigned lo = i * 32;
        if (nworlds <= lo)
          v.words_[i] = 0;
        else if (nworlds < lo + 32)
          v.words_[i] &= (uint32_t{1} << (nworlds - lo)) - 1;
      }
    return v;
  }

  unsigned WidBitVector::count() const
  {
    unsigned n = 0;
    for (uint32_t w : words_)
      n += unsigned(std::popcount(w));
    return n;
  }

  std::string_view toString(AccessKind k)
  {
    switch (k)
      {
      case AccessKind::Read:    return "r";
      case AccessKind::Write:   return "w";
      case AccessKind::Execute: return "x";
      }
    return "?";
  }

  std::string_view toString(DenyStage s)
  {
    switch (s)
      {
      case DenyStage::VsPmp:     return "vspmp";
      case DenyStage::HsPmp:     return "hspmp";
      case DenyStage::HgPmp:     return "hgpmp";
      case DenyStage::MPmp:      return "mpmp";
      case DenyStage::Checker:   return "checker";
      case DenyStage::Initiator: return "initiator";
      }
    return "?";
  }

  std::optional<DenyStage> denyStageFromString(std::string_view s)
  {
    if (s == "vspmp")     return DenyStage::VsPmp;
    if (s == "hspmp")     return DenyStage::HsPmp;
    if (s == "hgpmp")     return DenyStage::HgPmp;
    if (s == "mpmp")      return DenyStage::MPmp;
    if (s == "checker")   return DenyStage::Checker;
    if (s == "initiator") return DenyStage::Initiator;
    return std::nullopt;
  }

}
