#pragma once

// Machine-readable reports behind the C API and the command-line tool.
// Every report is a JSON document; rationals are strings and players are
// numbered from 1.

#include <cstddef>
#include <string>

#include "kcof/instance_file.hpp"
#include "kcof/instances.hpp"
#include "kcof/optimizer.hpp"

namespace kcof {

/// Pure verdict for "opinions", or mixed verdict when "mixed" is present.
std::string check_report(const InstanceFile& file);

/// Mixed verdict; a pure opinion vector is checked as point masses.
std::string mixed_check_report(const InstanceFile& file);

/// k = 1: existence, best and worst equilibria, optional enumeration
/// (enumerate_limit > 0). k >= 2: best-response dynamics from the beliefs
/// for `rounds` rounds.
std::string solve_report(const InstanceFile& file, std::size_t enumerate_limit, std::size_t rounds);

/// Lower bounds, caps and the PoA bracket. The file's opinions, when
/// present, seed the optimizer and serve as the known equilibrium for k >= 2.
std::string bounds_report(const InstanceFile& file, bool run_optimizer, const OptimizerConfig& cfg);

std::string optimize_report(const InstanceFile& file, const OptimizerConfig& cfg);

std::string segment_graph_dot(const InstanceFile& file);

/// Every catalog entry for the parameters with its instance documents and
/// the expected-versus-recomputed rows.
std::string catalog_report(const CatalogParams& params, const VerifyOptions& options);

} // namespace kcof
