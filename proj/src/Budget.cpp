// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgsim/Budget.hpp"

#include <cstdio>
#include <sstream>

namespace wgsim
{

  std::string_view toString(PrivProfile p)
  {
    switch (p)
      {
      case PrivProfile::MU:      return "mu";
      case PrivProfile::MSU:     return "msu";
      case PrivProfile::MHSVSVU: return "mhsvsvu";
      }
    return "?";
  }

  std::variant<BudgetBreakdown, std::string> estimateWids(const BudgetConfig& config)
  {
    BudgetBreakdown b;
    b.anmIds = config.anms;
    for (const BudgetHart& h : config.harts)
      {
        if (h.vms > 0 and h.profile != PrivProfile::MHSVSVU)
          return "config '" + config.label
                 + "': vms is only meaningful for mhsvsvu harts";
        b.mIds += 1;
        switch (h.profile)
          {
          case PrivProfile::MU:
            b.uIds += 1;
            break;
          case PrivProfile::MSU:
            b.sIds += 1;
            b.uIds += 1;
            break;
          case PrivProfile::MHSVSVU:
            b.hsIds += 1;
            b.vsIds += h.vms;
            b.vuIds += h.vms;
            break;
          }
        if (h.smallCoreExtra)
          b.extraSmallCoreIds += 1;
      }
    b.total = b.anmIds + b.mIds + b.sIds + b.uIds + b.hsIds + b.vsIds
              + b.vuIds + b.extraSmallCoreIds;
    return b;
  }

  std::variant<std::vector<SweepRow>, std::string>
  sweep(const std::vector<BudgetConfig>& configs)
  {
    std::vector<SweepRow> rows;
    rows.reserve(configs.size());
    for (const BudgetConfig& c : configs)
      {
        auto r = estimateWids(c);
        if (std::holds_alternative<std::string>(r))
          return std::get<std::string>(r);
        rows.push_back({c, std::get<BudgetBreakdown>(r)});
      }
    return rows;
  }

  namespace
  {

    std::vector<BudgetHart> repeat(BudgetHart h, unsigned n)
    {
      return std::vector<BudgetHart>(n, h);
    }

    void append(std::vector<BudgetHart>& dst, const std::vector<BudgetHart>& src)
    {
      dst.insert(dst.end(), src.begin(), src.end());
    }

    BudgetConfig smallTypical()
    {
      BudgetConfig c;
      c.label = "small";
      c.harts = repeat({PrivProfile::MU, 0, true}, 2);
      c.anms = 10;
      return c;
    }

    BudgetConfig mediumTypical()
    {
      BudgetConfig c;
      c.label = "medium";
      c.harts = repeat({PrivProfile::MSU, 0, false}, 4);
      c.harts[0].smallCoreExtra = true;
      c.anms = 30;
      c.note = "includes one small-core allowance; rule-pure total is 42";
      return c;
    }

    // High-end layout: virtualized main harts, the remaining main harts
    // at M+S+U, plus one M+U and one M+S+U auxiliary hart.
    BudgetConfig highProfile(std::string label, unsigned virtHarts,
                             unsigned vmsPerHart, unsigned anms)
    {
      BudgetConfig c;
      c.label = std::move(label);
      c.harts = repeat({PrivProfile::MHSVSVU, vmsPerHart, false}, virtHarts);
      append(c.harts, repeat({PrivProfile::MSU, 0, false}, 6 - virtHarts));
      c.harts.push_back({PrivProfile::MU, 0, false});
      c.harts.push_back({PrivProfile::MSU, 0, false});
      c.anms = anms;
      return c;
    }

  }

  std::vector<BudgetConfig> presetConfigs(std::string_view name)
  {
    if (name == "table2")
      {
        BudgetConfig high = highProfile("high", 3, 2, 50);
        return {smallTypical(), mediumTypical(), high};
      }

    if (name == "fig2")
      {
        BudgetConfig sLow;
        sLow.label = "S,low";
        sLow.harts = repeat({PrivProfile::MU, 0, false}, 2);
        sLow.anms = 2;

        BudgetConfig sTyp = smallTypical();
        sTyp.label = "S,typical";

        BudgetConfig mTyp = mediumTypical();
        mTyp.label = "M,typical";

        return {
          sLow,
          sTyp,
          mTyp,
          highProfile("H,typical,VF0", 0, 0, 50),
          highProfile("H,typical,VF2", 3, 2, 50),
          highProfile("H,typical,VF4", 5, 4, 50),
          highProfile("H,low,VF2", 3, 2, 8),
        };
      }

    return {};
  }

  std::string thresholdFlags(unsigned total)
  {
    std::string flags;
    for (unsigned cap : {32u, 64u, 128u})
      if (total > cap)
        {
          if (not flags.empty())
            flags += ',';
          flags += '>';
          flags += std::to_string(cap);
        }
    return flags;
  }

  std::string formatTable(const std::vector<SweepRow>& rows)
  {
    std::ostringstream os;
    char line[256];
    snprintf(line, sizeof(line), "%-16s %6s %5s %4s %4s %4s %4s %4s %4s %6s  %s\n",
             "label", "total", "anm", "m", "s", "u", "hs", "vs", "vu", "extra",
             "flags");
    os << line;
    for (const SweepRow& r : rows)
      {
        const BudgetBreakdown& b = r.breakdown;
        snprintf(line, sizeof(line),
                 "%-16s %6u %5u %4u %4u %4u %4u %4u %4u %6u  %s\n",
                 r.config.label.c_str(), b.total, b.anmIds, b.mIds, b.sIds,
                 b.uIds, b.hsIds, b.vsIds, b.vuIds, b.extraSmallCoreIds,
                 thresholdFlags(b.total).c_str());
        os << line;
        if (not r.config.note.empty())
          os << "  note: " << r.config.note << "\n";
      }
    return os.str();
  }

  namespace
  {

    std::string csvField(const std::string& s)
    {
      if (s.find_first_of(",\"") == std::string::npos)
        return s;
      std::string quoted = "\"";
      for (char c : s)
        {
          if (c == '"')
            quoted += '"';
          quoted += c;
        }
      quoted += '"';
      return quoted;
    }

  }

  std::string formatCsv(const std::vector<SweepRow>& rows)
  {
    std::ostringstream os;
    os << "label,total,anm,m,s,u,hs,vs,vu,extra\n";
    for (const SweepRow& r : rows)
      {
        const BudgetBreakdown& b = r.breakdown;
        os << csvField(r.config.label) << ',' << b.total << ',' << b.anmIds << ','
           << b.mIds << ',' << b.sIds << ',' << b.uIds << ',' << b.hsIds << ','
           << b.vsIds << ',' << b.vuIds << ',' << b.extraSmallCoreIds << '\n';
      }
    return os.str();
  }

  namespace
  {

    std::string trim(std::string s)
    {
      auto issp = [](char c) { return c == ' ' or c == '\t' or c == '\r'; };
      size_t b = 0;
      size_t e = s.size();
      while (b < e and issp(s[b]))
        ++b;
      while (e > b and issp(s[e - 1]))
        --e;
      return s.substr(b, e - b);
    }

  }

  std::variant<std::vector<BudgetConfig>, std::string>
  parseBudgetConfigs(std::string_view text)
  {
    std::vector<BudgetConfig> configs;
    BudgetConfig current;
    bool open = false;

    auto flush = [&]() {
      if (open)
        configs.push_back(current);
      current = BudgetConfig{};
      open = false;
    };

    std::istringstream is{std::string(text)};
    std::string rawLine;
    unsigned lineNo = 0;
    while (std::getline(is, rawLine))
      {
        ++lineNo;
        std::string line = trim(rawLine);
        if (auto pos = line.find('#'); pos != std::string::npos)
          line = trim(line.substr(0, pos));
        if (line.empty())
          {
            flush();
            continue;
          }

        open = true;
        std::istringstream ls{line};
        std::string word;
        ls >> word;

        if (word == "label")
          {
            std::string eq, rest;
            ls >> eq;
            std::getline(ls, rest);
            if (eq != "=")
              return "line " + std::to_string(lineNo) + ": expected label = <name>";
            current.label = trim(rest);
          }
        else if (word == "anms")
          {
            std::string eq;
            long v = -1;
            ls >> eq >> v;
            if (eq != "=" or v < 0)
              return "line " + std::to_string(lineNo) + ": expected anms = <count>";
            current.anms = unsigned(v);
          }
        else if (word == "hart")
          {
            std::string prof;
            ls >> prof;
            BudgetHart h;
            if (prof == "mu")
              h.profile = PrivProfile::MU;
            else if (prof == "msu")
              h.profile = PrivProfile::MSU;
            else if (prof == "mhsvsvu")
              h.profile = PrivProfile::MHSVSVU;
            else
              return "line " + std::to_string(lineNo)
                     + ": unknown profile '" + prof + "'";
            unsigned count = 1;
            std::string opt;
            while (ls >> opt)
              {
                if (opt == "extra")
                  h.smallCoreExtra = true;
                else if (opt.rfind("vms=", 0) == 0)
                  h.vms = unsigned(std::stoul(opt.substr(4)));
                else if (opt.rfind("count=", 0) == 0)
                  count = unsigned(std::stoul(opt.substr(6)));
                else
                  return "line " + std::to_string(lineNo)
                         + ": unknown hart option '" + opt + "'";
              }
            for (unsigned i = 0; i < count; ++i)
              current.harts.push_back(h);
          }
        else
          return "line " + std::to_string(lineNo) + ": unknown key '" + word + "'";
      }
    flush();

    if (configs.empty())
      return std::string("no configurations found");
    return configs;
  }

}
