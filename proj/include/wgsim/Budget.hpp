// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace wgsim
{

  /// Privilege stack of one hart in a budget configuration.
  enum class PrivProfile : uint8_t { MU, MSU, MHSVSVU };

  std::string_view toString(PrivProfile p);

  struct BudgetHart
  {
    PrivProfile profile = PrivProfile::MU;
    unsigned vms = 0;            // virtualized profile only
    bool smallCoreExtra = false; // extra ID for small auxiliary cores

    bool operator==(const BudgetHart&) const = default;
  };

  struct BudgetConfig
  {
    std::string label;
    std::vector<BudgetHart> harts;
    unsigned anms = 0;
    std::string note;            // free-form annotation shown in tables

    bool operator==(const BudgetConfig&) const = default;
  };

  /// Per-rule WID counts. total is always the sum of the other fields.
  struct BudgetBreakdown
  {
    unsigned anmIds = 0;
    unsigned mIds = 0;
    unsigned sIds = 0;
    unsigned uIds = 0;
    unsigned hsIds = 0;
    unsigned vsIds = 0;
    unsigned vuIds = 0;
    unsigned extraSmallCoreIds = 0;
    unsigned total = 0;

    bool operator==(const BudgetBreakdown&) const = default;
  };

  /// Applies the sizing ground rules: one ID per ANM; one machine-level
  /// ID per hart; one per non-virtualized privilege level (S, U); one
  /// per virtualized hart for HS plus one per VM for each of VS and VU;
  /// one extra per flagged small core. Returns an error string when the
  /// configuration violates its invariants.
  std::variant<BudgetBreakdown, std::string> estimateWids(const BudgetConfig& config);

  struct SweepRow
  {
    BudgetConfig config;
    BudgetBreakdown breakdown;
  };

  /// One row per configuration, in the given order.
  std::variant<std::vector<SweepRow>, std::string>
  sweep(const std::vector<BudgetConfig>& configs);

  /// Built-in configuration sets: "table2" (small/medium/high) and
  /// "fig2" (the seven named sweep points). Empty when unknown.
  std::vector<BudgetConfig> presetConfigs(std::string_view name);

  /// Capacity flags for a total: marks >32, >64 and >128.
  std::string thresholdFlags(unsigned total);

  std::string formatTable(const std::vector<SweepRow>& rows);

  /// CSV with header label,total,anm,m,s,u,hs,vs,vu,extra.
  std::string formatCsv(const std::vector<SweepRow>& rows);

  /// Parses configurations from a key-value text block. Blocks are
  /// separated by blank lines; each block holds `label = ...`,
  /// `anms = N` and one `hart <mu|msu|mhsvsvu> [vms=N] [extra]` line
  /// per hart (optionally `count=K` to repeat).
  std::variant<std::vector<BudgetConfig>, std::string>
  parseBudgetConfigs(std::string_view text);

}
