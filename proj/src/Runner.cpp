// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgsim/Runner.hpp"

#include <sstream>

#include <json.hpp>

namespace wgsim
{

  unsigned RunReport::failures() const
  {
    unsigned n = 0;
    for (const StepRecord& s : steps)
      if (not s.pass)
        ++n;
    return n;
  }

  std::string RunReport::toText() const
  {
    std::ostringstream os;
    os << "wgsim-report v1\n";
    for (const StepRecord& s : steps)
      {
        std::map<std::string, std::string> kv = s.fields;
        kv["index"] = std::to_string(s.index);
        kv["kind"] = s.kind;
        kv["line"] = std::to_string(s.line);
        kv["status"] = s.pass ? "pass" : "fail";
        os << "step";
        for (const auto& [k, v] : kv)
          os << ' ' << k << '=' << v;
        os << '\n';
      }
    for (const auto& [name, value] : counters)
      os << "counter " << name << '=' << value << '\n';
    os << "overall status=" << (overallPass ? "pass" : "fail")
       << " steps=" << steps.size() << " failures=" << failures() << '\n';
    return os.str();
  }

  std::string RunReport::toJson() const
  {
    nlohmann::json j;
    j["version"] = 1;
    j["steps"] = nlohmann::json::array();
    for (const StepRecord& s : steps)
      {
        nlohmann::json step;
        step["index"] = s.index;
        step["line"] = s.line;
        step["kind"] = s.kind;
        step["pass"] = s.pass;
        step["fields"] = s.fields;
        j["steps"].push_back(step);
      }
    j["counters"] = counters;
    j["overall"] = overallPass ? "pass" : "fail";
    return j.dump(2) + "\n";
  }

  namespace
  {

    std::string verdictString(const CheckVerdict& v)
    {
      if (v.allow)
        return "allow";
      return "deny:" + std::string(toString(*v.denyStage));
    }

    std::string expectationString(const Expectation& e)
    {
      if (e.allow)
        return "allow";
      if (e.stage)
        return "deny:" + std::string(toString(*e.stage));
      return "deny";
    }

    std::string outcomeString(const CsrWriteResult& r)
    {
      switch (r.outcome)
        {
        case WriteOutcome::Accepted:
          return "accepted";
        case WriteOutcome::IgnoredIllegalValue:
          return "ignored-illegal-value";
        case WriteOutcome::AccessViolation:
          break;
        }
      switch (r.issue)
        {
        case CsrIssue::Privilege: return "access-violation:privilege";
        case CsrIssue::Absent:    return "access-violation:absent";
        case CsrIssue::ReadOnly:  return "access-violation:read-only";
        case CsrIssue::None:      break;
        }
      return "access-violation";
    }

    std::string hexString(uint64_t v)
    {
      char buf[24];
      snprintf(buf, sizeof(buf), "0x%llx", (unsigned long long) v);
      return buf;
    }

    /// Executes one program against a freshly built platform and
    /// accumulates the report.
    class Engine
    {
    public:

      explicit Engine(Platform platform)
        : platform_(std::move(platform))
      {
        for (const Hart& h : platform_.harts())
          {
            csrWrites_[h.id()] = 0;
            entryWrites_[h.id()] = 0;
          }
      }

      RunReport run(const ScenarioProgram& program);

    private:

      std::map<std::string, int64_t> currentCounters() const;

      void execute(const StmtNode& node, StepRecord& rec);

      void onMode(const ModeStmt& s, StepRecord& rec);
      void onCsrw(const CsrwStmt& s, StepRecord& rec);
      void onExpectCsrr(const ExpectCsrrStmt& s, StepRecord& rec);
      void onSpmp(const SpmpStmt& s, StepRecord& rec);
      void onAccess(const AccessStmt& s, StepRecord& rec);
      void onVmSwitch(const VmSwitchStmt& s, StepRecord& rec);
      void onAnmAccess(const AnmAccessStmt& s, StepRecord& rec);
      void onChecker(const CheckerStmt& s, StepRecord& rec);
      void onExpectStat(const ExpectStatStmt& s, StepRecord& rec);

      void recordDenial(const CheckVerdict& v)
      {
        if (not v.allow)
          denials_[std::string(toString(*v.denyStage))] += 1;
      }

      Platform platform_;
      std::map<unsigned, int64_t> csrWrites_;
      std::map<unsigned, int64_t> entryWrites_;
      std::map<std::string, int64_t> denials_{
        {"vspmp", 0}, {"hspmp", 0}, {"hgpmp", 0},
        {"mpmp", 0}, {"checker", 0}, {"initiator", 0}};
    };

    std::map<std::string, int64_t> Engine::currentCounters() const
    {
      std::map<std::string, int64_t> c;
      for (const auto& [stage, n] : denials_)
        c["denials." + stage] = n;
      for (const Hart& h : platform_.harts())
        {
          std::string p = "hart" + std::to_string(h.id()) + ".";
          c[p + "csr_writes"] = csrWrites_.at(h.id());
          c[p + "entry_writes"] = entryWrites_.at(h.id());
          c[p + "mpmp_used"] = h.mpmp().usedEntries();
          if (h.config().model == SpmpModel::Unified)
            {
              unsigned used = h.hspmp().usedEntries();
              unsigned avail = h.hspmp().entryCount();
              c[p + "unified_used"] = used;
              c[p + "unified_avail"] = avail;
              c[p + "unified_unused"] = avail - used;
            }
          else
            {
              unsigned bUsed = h.hspmp().usedEntries();
              unsigned bAvail = h.hspmp().entryCount();
              c[p + "baseline_used"] = bUsed;
              c[p + "baseline_avail"] = bAvail;
              c[p + "baseline_unused"] = bAvail - bUsed;
              unsigned gUsed = h.hgpmp()->usedEntries();
              unsigned gAvail = h.hgpmp()->entryCount();
              c[p + "hg_used"] = gUsed;
              c[p + "hg_avail"] = gAvail;
              c[p + "hg_unused"] = gAvail - gUsed;
            }
          if (h.vspmp())
            c[p + "vspmp_used"] = h.vspmp()->usedEntries();
        }
      return c;
    }

    void Engine::onMode(const ModeStmt& s, StepRecord& rec)
    {
      rec.kind = "mode";
      rec.fields["hart"] = std::to_string(s.hart);
      rec.fields["mode"] = std::string(toString(s.mode));
      Hart* h = platform_.findHart(s.hart);
      if (not h->setMode(s.mode))
        {
          rec.pass = false;
          rec.fields["detail"] = "mode not reachable with this extension set";
        }
    }

    void Engine::onCsrw(const CsrwStmt& s, StepRecord& rec)
    {
      rec.kind = "csrw";
      rec.fields["hart"] = std::to_string(s.hart);
      rec.fields["csr"] = std::string(toString(s.csr));
      rec.fields["value"] = hexString(s.value);
      Hart* h = platform_.findHart(s.hart);
      CsrWriteResult r = h->writeCsr(s.csr, s.value);
      rec.fields["outcome"] = outcomeString(r);
      if (r.outcome == WriteOutcome::Accepted)
        csrWrites_[s.hart] += 1;
      rec.pass = r.outcome != WriteOutcome::AccessViolation;
    }

    void Engine::onExpectCsrr(const ExpectCsrrStmt& s, StepRecord& rec)
    {
      rec.kind = "expect-csrr";
      rec.fields["hart"] = std::to_string(s.hart);
      rec.fields["csr"] = std::string(toString(s.csr));
      rec.fields["expected"] = hexString(s.value);
      Hart* h = platform_.findHart(s.hart);
      CsrReadResult r = h->readCsr(s.csr);
      if (not r.ok)
        {
          rec.pass = false;
          rec.fields["observed"] = r.issue == CsrIssue::Absent
                                     ? "access-violation:absent"
                                     : "access-violation:privilege";
          return;
        }
      rec.fields["observed"] = hexString(r.value);
      rec.pass = r.value == s.value;
    }

    void Engine::onSpmp(const SpmpStmt& s, StepRecord& rec)
    {
      rec.kind = "spmp";
      rec.fields["hart"] = std::to_string(s.hart);
      rec.fields["index"] = std::to_string(s.index);
      Hart* h = platform_.findHart(s.hart);
      auto entry = encodeEntry(s.mode, s.a, s.b, s.r, s.w, s.x, s.s, s.lock);
      if (not entry)
        {
          rec.pass = false;
          rec.fields["detail"] = "unencodable entry";
          return;
        }
      if (not h->programEntry(s.index, *entry))
        {
          rec.pass = false;
          rec.fields["detail"] = "no programmable unit in this mode, or index out of range";
          return;
        }
      entryWrites_[s.hart] += 2;
    }

    void Engine::onAccess(const AccessStmt& s, StepRecord& rec)
    {
      rec.kind = "access";
      rec.fields["hart"] = std::to_string(s.hart);
      rec.fields["addr"] = hexString(s.addr);
      rec.fields["akind"] = std::string(toString(s.kind));
      CheckVerdict v = platform_.hartAccess(s.hart, s.addr, s.size, s.kind);
      recordDenial(v);
      rec.fields["observed"] = verdictString(v);
      rec.fields["expected"] = expectationString(s.expect);
      rec.pass = v.allow == s.expect.allow
                 and (s.expect.allow or not s.expect.stage
                      or s.expect.stage == v.denyStage);
    }

    void Engine::onVmSwitch(const VmSwitchStmt& s, StepRecord& rec)
    {
      rec.kind = "vmswitch";
      rec.fields["hart"] = std::to_string(s.hart);
      rec.fields["vm"] = s.vm;
      Hart* h = platform_.findHart(s.hart);
      const VmImage* image = platform_.findVm(s.vm);
      auto result = h->vmSwitch(*image);
      if (std::holds_alternative<std::string>(result))
        {
          rec.pass = false;
          rec.fields["detail"] = std::get<std::string>(result);
          return;
        }
      SwitchStats stats = std::get<SwitchStats>(result);
      csrWrites_[s.hart] += stats.csrWrites;
      entryWrites_[s.hart] += stats.entryWrites;
      rec.fields["csr_writes"] = std::to_string(stats.csrWrites);
      rec.fields["entry_writes"] = std::to_string(stats.entryWrites);
    }

    void Engine::onAnmAccess(const AnmAccessStmt& s, StepRecord& rec)
    {
      rec.kind = "anm-access";
      rec.fields["anm"] = s.anm;
      rec.fields["addr"] = hexString(s.addr);
      rec.fields["akind"] = s.write ? "w" : "r";
      CheckVerdict v = platform_.anmAccess(s.anm, s.addr, 4, s.write);
      recordDenial(v);
      rec.fields["observed"] = verdictString(v);
      rec.fields["expected"] = expectationString(s.expect);
      rec.pass = v.allow == s.expect.allow
                 and (s.expect.allow or not s.expect.stage
                      or s.expect.stage == v.denyStage);
    }

    void Engine::onChecker(const CheckerStmt& s, StepRecord& rec)
    {
      rec.kind = "checker";
      rec.fields["resource"] = s.resource;
      rec.fields["slot"] = std::to_string(s.slot);
      ResourceChecker* checker = platform_.findChecker(s.resource);
      std::map<Wid, Perm> perms;
      for (const WidPermDecl& wp : s.wids)
        {
          Perm& p = perms[wp.wid];
          p.r = p.r or wp.perm.r;
          p.w = p.w or wp.perm.w;
        }
      CheckerConfigOutcome out = checker->configure(s.slot, s.range, perms, s.lock);
      switch (out)
        {
        case CheckerConfigOutcome::Ok:
          break;
        case CheckerConfigOutcome::Locked:
          rec.pass = false;
          rec.fields["detail"] = "checker is locked";
          break;
        case CheckerConfigOutcome::RangeError:
          rec.pass = false;
          rec.fields["detail"] = "range error";
          break;
        case CheckerConfigOutcome::BadSlot:
          rec.pass = false;
          rec.fields["detail"] = "slot index out of range";
          break;
        }
    }

    void Engine::onExpectStat(const ExpectStatStmt& s, StepRecord& rec)
    {
      rec.kind = "expect-stat";
      rec.fields["counter"] = s.counter;
      rec.fields["op"] = std::string(toString(s.op));
      rec.fields["bound"] = std::to_string(s.value);
      auto counters = currentCounters();
      auto it = counters.find(s.counter);
      if (it == counters.end())
        {
          rec.pass = false;
          rec.fields["detail"] = "unknown counter";
          return;
        }
      int64_t observed = it->second;
      rec.fields["observed"] = std::to_string(observed);
      switch (s.op)
        {
        case CmpOp::Eq: rec.pass = observed == s.value; break;
        case CmpOp::Ne: rec.pass = observed != s.value; break;
        case CmpOp::Lt: rec.pass = observed < s.value; break;
        case CmpOp::Le: rec.pass = observed <= s.value; break;
        case CmpOp::Gt: rec.pass = observed > s.value; break;
        case CmpOp::Ge: rec.pass = observed >= s.value; break;
        }
    }

    void Engine::execute(const StmtNode& node, StepRecord& rec)
    {
      std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ModeStmt>)
            onMode(s, rec);
          else if constexpr (std::is_same_v<T, CsrwStmt>)
            onCsrw(s, rec);
          else if constexpr (std::is_same_v<T, ExpectCsrrStmt>)
            onExpectCsrr(s, rec);
          else if constexpr (std::is_same_v<T, SpmpStmt>)
            onSpmp(s, rec);
          else if constexpr (std::is_same_v<T, AccessStmt>)
            onAccess(s, rec);
          else if constexpr (std::is_same_v<T, VmSwitchStmt>)
            onVmSwitch(s, rec);
          else if constexpr (std::is_same_v<T, AnmAccessStmt>)
            onAnmAccess(s, rec);
          else if constexpr (std::is_same_v<T, CheckerStmt>)
            onChecker(s, rec);
          else if constexpr (std::is_same_v<T, ExpectStatStmt>)
            onExpectStat(s, rec);
        },
        node);
    }

    RunReport Engine::run(const ScenarioProgram& program)
    {
      RunReport report;
      unsigned index = 0;
      for (const Statement& stmt : program.steps)
        {
          StepRecord rec;
          rec.index = ++index;
          rec.line = stmt.line;
          execute(stmt.node, rec);
          if (not rec.pass)
            report.overallPass = false;
          report.steps.push_back(std::move(rec));
        }
      report.counters = currentCounters();
      return report;
    }

  }

  std::variant<RunReport, std::string> runScenario(const ScenarioProgram& program)
  {
    auto decl = toPlatformDecl(program.platform);
    if (std::holds_alternative<std::string>(decl))
      return std::get<std::string>(decl);
    auto built = Platform::build(std::get<PlatformDecl>(decl));
    if (std::holds_alternative<std::string>(built))
      return std::get<std::string>(built);

    Engine engine(std::move(std::get<Platform>(built)));
    return engine.run(program);
  }

  std::string ModelComparison::toText() const
  {
    std::ostringstream os;
    os << "compare-models unified=hart" << unifiedHart
       << " separate=hart" << separateHart << '\n';
    for (const PairedAccess& a : accesses)
      os << "access unified_line=" << a.unifiedLine
         << " separate_line=" << a.separateLine
         << " unified=" << a.unifiedVerdict
         << " separate=" << a.separateVerdict
         << " divergent=" << (a.divergent ? "yes" : "no") << '\n';
    os << "divergences=" << divergences << '\n';
    for (const auto& [name, value] : utilization)
      os << "utilization " << name << '=' << value << '\n';
    return os.str();
  }

  std::variant<ModelComparison, std::string> compareModels(const ScenarioProgram& program)
  {
    const HartConfig* unified = nullptr;
    const HartConfig* separate = nullptr;
    for (const HartConfig& h : program.platform.harts)
      {
        if (h.model == SpmpModel::Unified and not unified)
          unified = &h;
        if (h.model == SpmpModel::Separate and not separate)
          separate = &h;
      }
    if (not unified or not separate)
      return std::string("scenario must declare both a unified and a separate hart");

    auto run = runScenario(program);
    if (std::holds_alternative<std::string>(run))
      return std::get<std::string>(run);
    const RunReport& report = std::get<RunReport>(run);

    ModelComparison cmp;
    cmp.unifiedHart = unified->hartId;
    cmp.separateHart = separate->hartId;

    std::vector<std::pair<unsigned, std::string>> uAcc;
    std::vector<std::pair<unsigned, std::string>> sAcc;
    for (const StepRecord& rec : report.steps)
      {
        if (rec.kind != "access")
          continue;
        const std::string& hart = rec.fields.at("hart");
        if (hart == std::to_string(unified->hartId))
          uAcc.emplace_back(rec.line, rec.fields.at("observed"));
        else if (hart == std::to_string(separate->hartId))
          sAcc.emplace_back(rec.line, rec.fields.at("observed"));
      }

    size_t pairs = std::min(uAcc.size(), sAcc.size());
    for (size_t i = 0; i < pairs; ++i)
      {
        ModelComparison::PairedAccess pa;
        pa.unifiedLine = uAcc[i].first;
        pa.separateLine = sAcc[i].first;
        pa.unifiedVerdict = uAcc[i].second;
        pa.separateVerdict = sAcc[i].second;
        bool uAllow = pa.unifiedVerdict == "allow";
        bool sAllow = pa.separateVerdict == "allow";
        pa.divergent = uAllow != sAllow;
        if (pa.divergent)
          ++cmp.divergences;
        cmp.accesses.push_back(std::move(pa));
      }

    for (const auto& [name, value] : report.counters)
      if (name.find("unified_") != std::string::npos
          or name.find("baseline_") != std::string::npos
          or name.find("hg_") != std::string::npos)
        cmp.utilization[name] = value;

    return cmp;
  }

}
