#pragma once

#include "pqlab/grid.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pqlab {

/// Closed interval [lo, hi] sampled uniformly at `count` points.  count == 1
/// collapses to the left endpoint.
struct SampleRange {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    std::vector<double> points() const;
};

/// Everything a run needs, loadable from a JSON file and overridable from the
/// command line.  Field defaults are the ones filled in for keys a config file
/// omits.
struct RunConfig {
    double p = 3.0;
    double q = 2.0;
    int grid_n = 999;
    std::string f_spec = "const:1";                ///< see make_source
    SampleRange alpha_range{-5.0, 40.0, 21};
    SampleRange beta_range{0.0, 25.0, 21};
    std::uint64_t seed = 1;
    std::map<std::string, double> tolerances;      ///< filled from default_tolerances()
    std::string output_dir = ".";

    RunConfig();

    /// Throws DomainError naming the violated constraint: p > q > 1,
    /// grid_n >= 3, sample counts >= 1, every tolerance > 0 (residual_tol
    /// may be negative, selecting the automatic limit), ranges ordered.
    void validate() const;

    double tol(const std::string& name) const;     ///< lookup, throws on unknown name
};

/// The recognized tolerance names and their defaults:
///   eigen_tol     sup-norm target for the eigenpair equation density
///   grad_tol      sup-norm target for the energy gradient
///   endpoint_tol  shooting endpoint bisection width
///   residual_tol  acceptance threshold for candidate solutions (negative
///                 selects the scale-aware automatic limit)
///   curve_tol     relative objective-decrease threshold in curve descent
const std::map<std::string, double>& default_tolerances();

/// Parses a JSON config.  Strict: unknown keys anywhere (top level, ranges,
/// tolerances) are rejected with the offending key named; type mismatches and
/// syntax errors cite the location.  Missing keys take the RunConfig defaults.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

/// Applies one "key=value" command-line override.  Keys use the JSON names,
/// with dots for nesting: p, q, grid_n, f, seed, output_dir,
/// alpha_range.lo|hi|count, beta_range.lo|hi|count, tolerances.<name>.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Builds the source term from its spec string:
///   "const:c"                  constant c at every node
///   "bump:center,width,height" height * (1 + cos(pi (x-center)/width)) / 2
///                              on |x - center| < width, zero elsewhere
///                              (compact support, peak = height)
///   "file:path"                whitespace-separated values, one per interior
///                              node, count must equal grid_n
GridFunction make_source(const std::string& f_spec, Grid1D grid);

/// Canonical serialization: JSON with sorted keys and shortest round-trip
/// number formatting.  Equal configs produce equal bytes.
std::string canonical_json(const RunConfig& cfg);

/// FNV-1a (64-bit) over canonical_json, printed into every output file so a
/// data file can be matched to the run that produced it.
std::uint64_t config_hash(const RunConfig& cfg);

}  // namespace pqlab
