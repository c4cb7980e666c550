// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wgsim/Fabric.hpp"
#include "wgsim/Hart.hpp"

namespace wgsim
{

  /// One addressable resource and the shape of its checker.
  struct ResourceDecl
  {
    std::string name;
    bool memory = true;          // false: peripheral (single whole-range slot)
    uint64_t base = 0;
    uint64_t size = 0;
    unsigned slots = 1;

    bool operator==(const ResourceDecl&) const = default;
  };

  /// Everything needed to build a platform.
  struct PlatformDecl
  {
    unsigned nworlds = maxWorldsBase;
    std::vector<HartConfig> harts;
    std::vector<Anm> anms;
    std::vector<ResourceDecl> resources;
    std::vector<VmImage> vms;

    bool operator==(const PlatformDecl&) const = default;
  };

  /// The assembled system: harts, non-CPU initiators, and the fabric
  /// with its resource checkers. Stepping is sequential; there is no
  /// shared mutable state between scenario runs.
  class Platform
  {
  public:

    /// Validates the declaration and builds the platform. Returns an
    /// error string describing the first violated invariant, including
    /// the NWorlds caps (32 without the wide-delegation extension on
    /// every hart, 128 with it).
    static std::variant<Platform, std::string> build(const PlatformDecl& decl);

    unsigned nworlds() const
    { return nworlds_; }

    Hart* findHart(unsigned hartId);
    const Hart* findHart(unsigned hartId) const;

    std::vector<Hart>& harts()
    { return harts_; }

    const std::vector<Hart>& harts() const
    { return harts_; }

    const Anm* findAnm(std::string_view name) const;
    const VmImage* findVm(std::string_view name) const;
    ResourceChecker* findChecker(std::string_view resource);

    std::vector<ResourceChecker>& checkers()
    { return checkers_; }

    const std::vector<ResourceChecker>& checkers() const
    { return checkers_; }

    /// Full initiator-to-resource path for a hart access: CPU-side
    /// protection stages, then WID resolution, then the fabric checker.
    /// The earliest denying stage is attributed.
    CheckVerdict hartAccess(unsigned hartId, uint64_t addr, unsigned size,
                            AccessKind kind) const;

    /// Fabric-only path for a non-CPU initiator.
    CheckVerdict anmAccess(std::string_view name, uint64_t addr, unsigned size,
                           bool write) const;

  private:

    Platform() = default;

    unsigned nworlds_ = maxWorldsBase;
    std::vector<Hart> harts_;
    std::vector<Anm> anms_;
    std::vector<ResourceChecker> checkers_;
    std::vector<VmImage> vms_;
  };

}
