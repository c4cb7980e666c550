// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "wgsim/Scenario.hpp"

namespace wgsim
{

  /// Outcome of one executed step. fields hold the step's key/value
  /// details; serialization emits them sorted by key.
  struct StepRecord
  {
    unsigned index = 0;          // 1-based step number
    unsigned line = 0;
    std::string kind;
    bool pass = true;
    std::map<std::string, std::string> fields;
  };

  /// Structured result of a scenario run. Counters cover per-hart CSR
  /// and entry writes, per-stage denial counts, and entry utilization.
  struct RunReport
  {
    std::vector<StepRecord> steps;
    std::map<std::string, int64_t> counters;
    bool overallPass = true;

    unsigned failures() const;

    /// Stable text form: one record per step, keys sorted.
    std::string toText() const;

    /// Stable machine form (JSON, keys sorted).
    std::string toJson() const;
  };

  /// Builds the platform and executes the steps in order. Returns an
  /// error string when the platform cannot be built (callers going
  /// through parseScenario never see this).
  std::variant<RunReport, std::string> runScenario(const ScenarioProgram& program);

  /// Per-access verdict comparison between the first unified-model hart
  /// and the first separate-model hart of a scenario. Access steps of
  /// the two harts are paired in script order.
  struct ModelComparison
  {
    unsigned unifiedHart = 0;
    unsigned separateHart = 0;

    struct PairedAccess
    {
      unsigned unifiedLine = 0;
      unsigned separateLine = 0;
      std::string unifiedVerdict;
      std::string separateVerdict;
      bool divergent = false;
    };

    std::vector<PairedAccess> accesses;
    unsigned divergences = 0;
    std::map<std::string, int64_t> utilization;

    std::string toText() const;
  };

  /// Runs the scenario and pairs access verdicts between the two model
  /// variants. Fails when the scenario does not declare both a unified
  /// and a separate hart.
  std::variant<ModelComparison, std::string> compareModels(const ScenarioProgram& program);

}
