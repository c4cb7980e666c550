// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wgsim/Budget.hpp"
#include "wgsim/Runner.hpp"
#include "wgsim/Scenario.hpp"

namespace
{

  std::optional<std::string> readFile(const std::string& path)
  {
    std::ifstream in(path, std::ios::binary);
    if (not in)
      return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  std::optional<wgsim::ScenarioProgram> loadScenario(const std::string& path)
  {
    auto text = readFile(path);
    if (not text)
      {
        std::cerr << "wgsim: cannot read '" << path << "'\n";
        return std::nullopt;
      }
    auto parsed = wgsim::parseScenario(*text);
    if (std::holds_alternative<wgsim::ParseError>(parsed))
      {
        const auto& e = std::get<wgsim::ParseError>(parsed);
        std::cerr << path << ':' << e.line << ':' << e.col << ": " << e.message
                  << '\n';
        return std::nullopt;
      }
    return std::get<wgsim::ScenarioProgram>(parsed);
  }

  int doRun(const std::string& path, const std::string& reportPath, bool json)
  {
    auto program = loadScenario(path);
    if (not program)
      return 2;

    auto run = wgsim::runScenario(*program);
    if (std::holds_alternative<std::string>(run))
      {
        std::cerr << "wgsim: " << std::get<std::string>(run) << '\n';
        return 2;
      }
    const wgsim::RunReport& report = std::get<wgsim::RunReport>(run);
    std::string out = json ? report.toJson() : report.toText();
    if (reportPath.empty())
      std::cout << out;
    else
      {
        std::ofstream f(reportPath, std::ios::binary);
        if (not f)
          {
            std::cerr << "wgsim: cannot write '" << reportPath << "'\n";
            return 2;
          }
        f << out;
      }
    return report.overallPass ? 0 : 1;
  }

  int doCheck(const std::string& path)
  {
    auto program = loadScenario(path);
    if (not program)
      return 2;
    std::cout << "ok: " << program->platform.harts.size() << " harts, "
              << program->steps.size() << " steps\n";
    return 0;
  }

  int doBudget(const std::string& preset, const std::string& configPath, bool csv)
  {
    std::vector<wgsim::BudgetConfig> configs;
    if (not preset.empty())
      {
        configs = wgsim::presetConfigs(preset);
        if (configs.empty())
          {
            std::cerr << "wgsim: unknown preset '" << preset << "'\n";
            return 2;
          }
      }
    else if (not configPath.empty())
      {
        auto text = readFile(configPath);
        if (not text)
          {
            std::cerr << "wgsim: cannot read '" << configPath << "'\n";
            return 2;
          }
        auto parsed = wgsim::parseBudgetConfigs(*text);
        if (std::holds_alternative<std::string>(parsed))
          {
            std::cerr << "wgsim: " << configPath << ": "
                      << std::get<std::string>(parsed) << '\n';
            return 2;
          }
        configs = std::get<std::vector<wgsim::BudgetConfig>>(parsed);
      }
    else
      {
        std::cerr << "wgsim: one of --preset or --config is required\n";
        return 2;
      }

    auto rows = wgsim::sweep(configs);
    if (std::holds_alternative<std::string>(rows))
      {
        std::cerr << "wgsim: " << std::get<std::string>(rows) << '\n';
        return 2;
      }
    const auto& r = std::get<std::vector<wgsim::SweepRow>>(rows);
    std::cout << (csv ? wgsim::formatCsv(r) : wgsim::formatTable(r));
    return 0;
  }

  int doCompareModels(const std::string& path)
  {
    auto program = loadScenario(path);
    if (not program)
      return 2;
    auto cmp = wgsim::compareModels(*program);
    if (std::holds_alternative<std::string>(cmp))
      {
        std::cerr << "wgsim: " << std::get<std::string>(cmp) << '\n';
        return 2;
      }
    std::cout << std::get<wgsim::ModelComparison>(cmp).toText();
    return 0;
  }

}

int main(int argc, char** argv)
{
  CLI::App app{"Transaction-level simulator of WorldGuard-based MCU isolation"};
  app.require_subcommand(1);

  int result = 0;

  std::string runPath, runReport;
  bool runJson = false;
  auto* run = app.add_subcommand("run", "Run a scenario and report step outcomes");
  run->add_option("scenario", runPath, "scenario file (.wgs)")->required();
  run->add_option("--report", runReport, "write the report to this file");
  run->add_flag("--json", runJson, "emit the machine-readable report");
  run->callback([&] { result = doRun(runPath, runReport, runJson); });

  std::string checkPath;
  auto* check = app.add_subcommand("check", "Parse and validate a scenario");
  check->add_option("scenario", checkPath, "scenario file (.wgs)")->required();
  check->callback([&] { result = doCheck(checkPath); });

  std::string budgetPreset, budgetConfig;
  bool budgetCsv = false;
  auto* budget = app.add_subcommand("budget", "Estimate required WIDs for a configuration");
  budget->add_option("--preset", budgetPreset, "built-in preset (table2, fig2)");
  budget->add_option("--config", budgetConfig, "configuration file");
  budget->add_flag("--csv", budgetCsv, "emit CSV");
  budget->callback([&] { result = doBudget(budgetPreset, budgetConfig, budgetCsv); });

  std::string sweepPreset = "fig2", sweepConfig;
  bool sweepCsv = false;
  auto* sweepCmd = app.add_subcommand("sweep", "Tabulate WID estimates for a configuration list");
  sweepCmd->add_option("--preset", sweepPreset, "built-in preset (default fig2)");
  sweepCmd->add_option("--config", sweepConfig, "configuration file");
  sweepCmd->add_flag("--csv", sweepCsv, "emit CSV");
  sweepCmd->callback([&] {
    result = doBudget(sweepConfig.empty() ? sweepPreset : "", sweepConfig, sweepCsv);
  });

  std::string comparePath;
  auto* compare = app.add_subcommand("compare-models",
                                     "Run a scenario against the unified and separate hypervisor SPMP models");
  compare->add_option("scenario", comparePath, "scenario file (.wgs)")->required();
  compare->callback([&] { result = doCompareModels(comparePath); });

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::ParseError& e)
    {
      int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }
  return result;
}
