// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wgsim/Platform.hpp"

namespace wgsim
{

  /// Positioned parse or semantic diagnostic. line and col are 1-based
  /// and point inside the offending token.
  struct ParseError
  {
    unsigned line = 0;
    unsigned col = 0;
    std::string message;
  };

  /// Expected outcome of an access step. A stage-less deny matches a
  /// denial at any stage.
  struct Expectation
  {
    bool allow = true;
    std::optional<DenyStage> stage{};

    bool operator==(const Expectation&) const = default;
  };

  struct ModeStmt
  {
    unsigned hart = 0;
    PrivMode mode = PrivMode::M;

    bool operator==(const ModeStmt&) const = default;
  };

  struct CsrwStmt
  {
    unsigned hart = 0;
    CsrName csr = CsrName::Mlwid;
    uint64_t value = 0;

    bool operator==(const CsrwStmt&) const = default;
  };

  struct ExpectCsrrStmt
  {
    unsigned hart = 0;
    CsrName csr = CsrName::Mlwid;
    uint64_t value = 0;

    bool operator==(const ExpectCsrrStmt&) const = default;
  };

  /// Entry programming statement. Field meaning depends on the address
  /// mode: napot uses a=base and b=size; tor uses a as the top byte
  /// address; na4 uses a as the base. The optional s and l suffixes set
  /// the s bit and the lock bit.
  struct SpmpStmt
  {
    unsigned hart = 0;
    unsigned index = 0;
    AddrMode mode = AddrMode::Off;
    uint64_t a = 0;
    uint64_t b = 0;
    bool r = false, w = false, x = false;
    bool s = false;
    bool lock = false;

    bool operator==(const SpmpStmt&) const = default;
  };

  struct AccessStmt
  {
    unsigned hart = 0;
    AccessKind kind = AccessKind::Read;
    uint64_t addr = 0;
    unsigned size = 4;
    Expectation expect{};

    bool operator==(const AccessStmt&) const = default;
  };

  struct VmSwitchStmt
  {
    unsigned hart = 0;
    std::string vm;

    bool operator==(const VmSwitchStmt&) const = default;
  };

  struct AnmAccessStmt
  {
    std::string anm;
    bool write = false;
    uint64_t addr = 0;
    Expectation expect{};

    bool operator==(const AnmAccessStmt&) const = default;
  };

  struct WidPermDecl
  {
    Wid wid = 0;
    Perm perm{};

    bool operator==(const WidPermDecl&) const = default;
  };

  struct CheckerStmt
  {
    std::string resource;
    unsigned slot = 0;
    std::optional<std::pair<uint64_t, uint64_t>> range{};
    std::vector<WidPermDecl> wids;
    bool lock = false;

    bool operator==(const CheckerStmt&) const = default;
  };

  enum class CmpOp : uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

  std::string_view toString(CmpOp op);

  struct ExpectStatStmt
  {
    std::string counter;
    CmpOp op = CmpOp::Eq;
    int64_t value = 0;

    bool operator==(const ExpectStatStmt&) const = default;
  };

  using StmtNode = std::variant<ModeStmt, CsrwStmt, ExpectCsrrStmt, SpmpStmt,
                                AccessStmt, VmSwitchStmt, AnmAccessStmt,
                                CheckerStmt, ExpectStatStmt>;

  /// One scripted step. Source position is carried for diagnostics and
  /// reports but does not participate in structural equality.
  struct Statement
  {
    StmtNode node;
    unsigned line = 0;
    unsigned col = 0;

    bool operator==(const Statement& other) const
    { return node == other.node; }
  };

  /// Surface form of a VM image entry (address mode plus operands as
  /// written, not yet encoded into a PMP address field).
  struct VmEntryDecl
  {
    unsigned index = 0;
    AddrMode mode = AddrMode::Off;
    uint64_t a = 0;
    uint64_t b = 0;
    bool r = false, w = false, x = false;
    bool s = false;

    bool operator==(const VmEntryDecl&) const = default;
  };

  struct VmDecl
  {
    std::string name;
    Wid hslwid = 0;
    std::vector<Wid> wids;
    uint64_t hswitch = 0;
    bool prestaged = true;
    std::vector<VmEntryDecl> entries;

    bool operator==(const VmDecl&) const = default;
  };

  /// The platform declaration as written in the scenario source.
  struct PlatformBlock
  {
    unsigned nworlds = maxWorldsBase;
    std::vector<HartConfig> harts;
    std::vector<Anm> anms;
    std::vector<ResourceDecl> resources;
    std::vector<VmDecl> vms;

    bool operator==(const PlatformBlock&) const = default;
  };

  struct ScenarioProgram
  {
    PlatformBlock platform;
    std::vector<Statement> steps;

    bool operator==(const ScenarioProgram&) const = default;
  };

  /// Encodes a surface entry description into a PMP-style entry.
  /// Returns nullopt for unencodable operands (napot size not a power
  /// of two >= 8, misaligned base, misaligned na4/tor address).
  std::optional<SpmpEntry> encodeEntry(AddrMode mode, uint64_t a, uint64_t b,
                                       bool r, bool w, bool x, bool s, bool lock);

  /// Converts the surface platform block into a buildable declaration.
  std::variant<PlatformDecl, std::string> toPlatformDecl(const PlatformBlock& block);

  /// Parses and semantically validates a scenario. Undeclared names,
  /// out-of-range WIDs and an unbuildable platform are reported as
  /// positioned errors.
  std::variant<ScenarioProgram, ParseError> parseScenario(std::string_view text);

  /// Canonical text form; parseScenario(printScenario(p)) reproduces p.
  std::string printScenario(const ScenarioProgram& program);

}
