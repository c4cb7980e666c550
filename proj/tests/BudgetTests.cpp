// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "Generators.hpp"
#include "wgsim/Budget.hpp"

using namespace wgsim;

namespace
{

  BudgetBreakdown mustEstimate(const BudgetConfig& c)
  {
    auto r = estimateWids(c);
    REQUIRE(std::holds_alternative<BudgetBreakdown>(r));
    return std::get<BudgetBreakdown>(r);
  }

  BudgetConfig randomConfig(gen::Rng& rng)
  {
    BudgetConfig c;
    c.label = "rand";
    c.anms = gen::pick(rng, 0, 60);
    unsigned n = gen::pick(rng, 0, 8);
    for (unsigned i = 0; i < n; ++i)
      {
        BudgetHart h;
        unsigned p = gen::pick(rng, 0, 2);
        h.profile = p == 0 ? PrivProfile::MU
                           : p == 1 ? PrivProfile::MSU : PrivProfile::MHSVSVU;
        h.vms = h.profile == PrivProfile::MHSVSVU ? gen::pick(rng, 0, 4) : 0;
        h.smallCoreExtra = gen::coin(rng);
        c.harts.push_back(h);
      }
    return c;
  }

}

TEST_CASE("table2 preset reproduces the published totals")
{
  auto configs = presetConfigs("table2");
  REQUIRE(configs.size() == 3);

  BudgetBreakdown small = mustEstimate(configs[0]);
  CHECK(small.total == 16);
  CHECK(small.anmIds == 10);
  CHECK(small.mIds == 2);
  CHECK(small.uIds == 2);
  CHECK(small.extraSmallCoreIds == 2);

  BudgetBreakdown medium = mustEstimate(configs[1]);
  CHECK(medium.total == 43);
  CHECK(medium.extraSmallCoreIds == 1);
  CHECK(medium.total - medium.extraSmallCoreIds == 42);   // rule-pure value
  CHECK(configs[1].note.find("42") != std::string::npos);

  BudgetBreakdown high = mustEstimate(configs[2]);
  CHECK(high.total == 82);
  CHECK(high.anmIds == 50);
  CHECK(high.mIds == 8);
  CHECK(high.hsIds == 3);
  CHECK(high.vsIds == 6);
  CHECK(high.vuIds == 6);
  CHECK(high.sIds == 4);
  CHECK(high.uIds == 5);
  CHECK(high.extraSmallCoreIds == 0);
}

TEST_CASE("fig2 preset sweep points")
{
  auto configs = presetConfigs("fig2");
  REQUIRE(configs.size() == 7);
  auto rows = sweep(configs);
  REQUIRE(std::holds_alternative<std::vector<SweepRow>>(rows));
  const auto& r = std::get<std::vector<SweepRow>>(rows);

  std::map<std::string, unsigned> totals;
  for (const SweepRow& row : r)
    totals[row.config.label] = row.breakdown.total;

  CHECK(totals.at("S,low") == 6);
  CHECK(totals.at("S,typical") == 16);
  CHECK(totals.at("M,typical") == 43);
  CHECK(totals.at("H,typical,VF0") == 73);
  CHECK(totals.at("H,typical,VF2") == 82);
  CHECK(totals.at("H,typical,VF4") == 108);
  CHECK(totals.at("H,low,VF2") == 40);
}

TEST_CASE("breakdown total is the sum of its fields")
{
  gen::Rng rng(0x5eed3001);
  for (unsigned i = 0; i < 500; ++i)
    {
      BudgetBreakdown b = mustEstimate(randomConfig(rng));
      CHECK(b.total == b.anmIds + b.mIds + b.sIds + b.uIds + b.hsIds + b.vsIds
                         + b.vuIds + b.extraSmallCoreIds);
    }
}

TEST_CASE("monotonicity in anms, vms and harts")
{
  gen::Rng rng(0x5eed3002);
  for (unsigned i = 0; i < 300; ++i)
    {
      BudgetConfig c = randomConfig(rng);
      unsigned base = mustEstimate(c).total;

      BudgetConfig moreAnms = c;
      moreAnms.anms += gen::pick(rng, 1, 5);
      CHECK(mustEstimate(moreAnms).total >= base);

      BudgetConfig moreHarts = c;
      moreHarts.harts.push_back({PrivProfile::MSU, 0, false});
      CHECK(mustEstimate(moreHarts).total >= base);

      BudgetConfig moreVms = c;
      bool bumped = false;
      for (BudgetHart& h : moreVms.harts)
        if (h.profile == PrivProfile::MHSVSVU and not bumped)
          {
            h.vms += 1;
            bumped = true;
          }
      if (bumped)
        CHECK(mustEstimate(moreVms).total >= base);
    }
}

TEST_CASE("additivity over hart partitions")
{
  gen::Rng rng(0x5eed3003);
  for (unsigned i = 0; i < 200; ++i)
    {
      BudgetConfig c = randomConfig(rng);
      unsigned whole = mustEstimate(c).total;

      unsigned cut = c.harts.empty() ? 0 : gen::pick(rng, 0, unsigned(c.harts.size()));
      BudgetConfig left = c;
      BudgetConfig right = c;
      left.harts.assign(c.harts.begin(), c.harts.begin() + cut);
      right.harts.assign(c.harts.begin() + cut, c.harts.end());
      right.anms = 0;   // count the ANM pool exactly once

      CHECK(mustEstimate(left).total + mustEstimate(right).total == whole);
    }
}

TEST_CASE("threshold flags")
{
  CHECK(thresholdFlags(16).empty());
  CHECK(thresholdFlags(32).empty());
  CHECK(thresholdFlags(43) == ">32");
  CHECK(thresholdFlags(82) == ">32,>64");
  CHECK(thresholdFlags(130) == ">32,>64,>128");
}

TEST_CASE("config invariants")
{
  BudgetConfig bad;
  bad.label = "bad";
  bad.harts.push_back({PrivProfile::MU, 2, false});
  CHECK(std::holds_alternative<std::string>(estimateWids(bad)));
}

TEST_CASE("config file parsing")
{
  auto parsed = parseBudgetConfigs(
    "label = zone-a\n"
    "anms = 12\n"
    "hart msu count=3\n"
    "hart mu extra\n"
    "\n"
    "label = zone-b\n"
    "anms = 4\n"
    "hart mhsvsvu vms=2\n");
  REQUIRE(std::holds_alternative<std::vector<BudgetConfig>>(parsed));
  const auto& cfgs = std::get<std::vector<BudgetConfig>>(parsed);
  REQUIRE(cfgs.size() == 2);
  CHECK(cfgs[0].label == "zone-a");
  CHECK(cfgs[0].harts.size() == 4);
  CHECK(cfgs[0].anms == 12);
  CHECK(cfgs[1].harts[0].vms == 2);

  CHECK(mustEstimate(cfgs[0]).total == 12 + 3 * 3 + 2 + 1);

  CHECK(std::holds_alternative<std::string>(parseBudgetConfigs("")));
  CHECK(std::holds_alternative<std::string>(parseBudgetConfigs("hart bogus\n")));
}

TEST_CASE("csv output quotes labels containing commas")
{
  auto rows = sweep(presetConfigs("fig2"));
  const auto& r = std::get<std::vector<SweepRow>>(rows);
  std::string csv = formatCsv(r);
  CHECK(csv.find("\"H,typical,VF4\",108") != std::string::npos);
  CHECK(csv.rfind("label,total,anm,m,s,u,hs,vs,vu,extra\n", 0) == 0);
}
