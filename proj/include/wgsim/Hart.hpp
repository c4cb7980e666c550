// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wgsim/Spmp.hpp"
#include "wgsim/Types.hpp"

namespace wgsim
{

  /// Symbolic names of the per-hart isolation CSRs. Numeric addresses
  /// are deliberately not assigned.
  enum class CsrName : uint8_t
  {
    Mwid,
    Mlwid,
    Mwiddeleg, Mwiddelegh, Mwiddelegh2, Mwiddelegh3,
    Slwid,
    Hslwid,
    Vslwid,
    Hwiddeleg, Hwiddelegh, Hwiddelegh2, Hwiddelegh3,
    Spmpswitch, Hspmpswitch, Hgpmpswitch, Vspmpswitch
  };

  std::string_view toString(CsrName n);
  std::optional<CsrName> csrFromString(std::string_view s);

  enum class WriteOutcome : uint8_t { Accepted, IgnoredIllegalValue, AccessViolation };

  /// Why an access to a CSR failed.
  enum class CsrIssue : uint8_t { None, Privilege, Absent, ReadOnly };

  struct CsrWriteResult
  {
    WriteOutcome outcome = WriteOutcome::Accepted;
    CsrIssue issue = CsrIssue::None;
  };

  struct CsrReadResult
  {
    bool ok = false;
    uint64_t value = 0;
    CsrIssue issue = CsrIssue::None;
  };

  enum class DelegLevel : uint8_t { Supervisor, VirtualSupervisor };

  /// Hypervisor SPMP arrangement of a hart.
  enum class SpmpModel : uint8_t { Unified, Separate };

  /// Static configuration of one hart.
  struct HartConfig
  {
    unsigned hartId = 0;
    Wid mwid = 0;
    ExtensionSet ext{};
    SpmpModel model = SpmpModel::Unified;
    unsigned splitIndex = 8;     // separate model: baseline owns [0, split)
    unsigned spmpEntries = 16;   // hypervisor-side total entry budget
    unsigned vspmpEntries = 16;
    unsigned mpmpEntries = 16;

    bool operator==(const HartConfig&) const = default;
  };

  /// Everything a hypervisor swaps in when scheduling a VM.
  struct VmImage
  {
    struct EntrySlot
    {
      unsigned index = 0;        // index into the guest-serving unit
      SpmpEntry entry{};

      bool operator==(const EntrySlot&) const = default;
    };

    std::string name;
    Wid hslwid = 0;
    std::vector<Wid> wids;       // WIDs delegated to the VM
    uint64_t hswitchMask = 0;
    bool prestaged = true;
    std::vector<EntrySlot> entries;

    bool operator==(const VmImage&) const = default;
  };

  /// Operation counts emitted by one VM switch.
  struct SwitchStats
  {
    unsigned csrWrites = 0;
    unsigned entryWrites = 0;
  };

  /// All WorldGuard CSRs of one hart. mwid is fixed at construction;
  /// delegation vectors store raw written values.
  struct WidCsrFile
  {
    Wid mwid = 0;
    uint32_t mlwid = 0;
    uint32_t slwid = 0;
    uint32_t hslwid = 0;
    uint32_t vslwid = 0;
    WidBitVector mwiddeleg{};
    WidBitVector hwiddeleg{};
  };

  /// Models one hart: privilege state, the WorldGuard CSR file and the
  /// protection units, and the full initiator-side check pipeline.
  class Hart
  {
  public:

    Hart(const HartConfig& config, unsigned nworlds);

    unsigned id() const
    { return config_.hartId; }

    const HartConfig& config() const
    { return config_; }

    const ExtensionSet& extensions() const
    { return config_.ext; }

    unsigned nworlds() const
    { return nworlds_; }

    PrivMode mode() const
    { return mode_; }

    /// Jump to the given mode. Fails (returns false) when the mode is
    /// not reachable with this hart's extension set.
    bool setMode(PrivMode m);

    bool virtualized() const
    { return isVirtualized(mode_); }

    const WidCsrFile& csrs() const
    { return csrs_; }

    /// WID attached to any access the hart issues in its current mode,
    /// or nullopt when the selected register lost its delegation
    /// (initiator fault).
    std::optional<Wid> resolveWid() const;

    /// Delegation vector effective at the given level: the stored
    /// machine vector masked to NWorlds, intersected with the stored
    /// hypervisor vector for the virtual-supervisor level.
    WidBitVector effectiveDeleg(DelegLevel level) const;

    /// CSR access at the hart's current privilege. With V=1 the slwid
    /// and spmpswitch addresses target the guest copies (vslwid,
    /// vspmpswitch). Illegal lwid values are ignored (WARL retain-old);
    /// rewriting a register's current value is always accepted.
    CsrWriteResult writeCsr(CsrName name, uint64_t value);
    CsrReadResult readCsr(CsrName name) const;

    /// Full CPU-side check: vSPMP then hypervisor stage then machine
    /// PMP for virtualized modes, SPMP then machine PMP otherwise.
    CheckVerdict checkAccess(uint64_t addr, unsigned size, AccessKind kind) const;

    /// Restores a VM context: hslwid, hwiddeleg windows, guest entries
    /// when not pre-staged, and the hypervisor switch register. Returns
    /// an error string when the image references WIDs outside mwiddeleg
    /// or does not fit the hart.
    std::variant<SwitchStats, std::string> vmSwitch(const VmImage& image);

    /// Programs one entry of the unit the current mode controls:
    /// machine PMP in M, the hypervisor-side array in HS (global index,
    /// split across baseline/hgPMP in the separate model), the vSPMP in
    /// VS. Returns false on bad index or missing unit.
    bool programEntry(unsigned globalIndex, const SpmpEntry& entry);

    const SpmpUnit& mpmp() const
    { return mpmp_; }

    const SpmpUnit& hspmp() const
    { return hspmp_; }

    const SpmpUnit* hgpmp() const
    { return config_.model == SpmpModel::Separate ? &hgpmp_ : nullptr; }

    const SpmpUnit* vspmp() const
    { return config_.ext.spmpHypervisor ? &vspmp_ : nullptr; }

  private:

    bool csrPresent(CsrName n) const;
    bool writePermitted(CsrName n, bool viaAlias) const;
    CsrWriteResult writeWidCsr(CsrName n, uint64_t value);
    uint64_t readRaw(CsrName n) const;

    HartConfig config_;
    unsigned nworlds_ = maxWorldsBase;
    PrivMode mode_ = PrivMode::M;
    WidCsrFile csrs_{};
    SpmpUnit mpmp_;
    SpmpUnit hspmp_;    // unified hSPMP, or the baseline side of the separate model
    SpmpUnit hgpmp_;    // separate model only
    SpmpUnit vspmp_;    // present iff spmpHypervisor
  };

}
