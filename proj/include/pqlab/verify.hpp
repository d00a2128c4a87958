#pragma once

#include "pqlab/curves.hpp"
#include "pqlab/solve.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pqlab {

/// One row of the sign-theorem harness: a parameter sample, the predicate
/// that applied there, and whether every found solution satisfied it.
/// Failures are recorded as data, never thrown.
struct TheoremCheck {
    double alpha = 0.0;
    double beta = 0.0;
    std::string theorem;   ///< nodal | nodal2 | atm | atm2 | aux5i | aux5ii
    int solutions = 0;     ///< how many records the predicate saw
    bool passed = true;
    std::string detail;    ///< first failing record, empty when passed
};

struct VerifyOptions {
    /// Relative clearance from the critical curves before a predicate is
    /// considered applicable, guarding against curve discretization error.
    double margin = 1e-3;
    /// Alpha excess over lambda_1(p) used by the positive-or-negative
    /// dichotomy probe (the theoretical window width is existence-only).
    double nodal2_window = 0.01;
    ScanOptions scan;
};

/// Runs find_solutions at every (alpha, beta) sample and checks each
/// applicable sign predicate on every record found:
///   nodal    alpha <= lambda_1(p), beta < beta_f(alpha):  all solutions positive
///   nodal2   alpha in (lambda_1(p), +window), beta < beta_f(lambda_1(p)):
///            no sign-changing solutions
///   atm      alpha >= lambda_1(p), beta above the pointwise-supremum curve's
///            upper bound: no nonnegative solutions
///   atm2     alpha > alpha_*, beta > lambda_1(q): no nonnegative solutions
///   aux5i    alpha > lambda_1(p), beta < beta_f(alpha), u_minus != 0:
///            H_alpha(u_minus) < 0
///   aux5ii   alpha > lambda_1(p), beta > beta_sup_f(alpha), u_plus != 0:
///            H_alpha(u_plus) > 0
/// Predicates whose curve data is missing at an alpha (outside the sampled
/// range of ctx) are skipped there.  One row per applicable predicate per
/// sample; samples where nothing applies produce no rows.
std::vector<TheoremCheck> verify_sign_theorems(
    const std::vector<std::pair<double, double>>& samples, const GridFunction& f,
    const CurvesContext& ctx, const VerifyOptions& opts = {});

/// Measured width of the no-nonnegative-solutions window below lambda_1(q)
/// at a fixed alpha > alpha_*.  Steps beta down from lambda_1(q) by `cap`,
/// and if a nonnegative solution exists there, bisects the appearance
/// threshold; returns lambda_1(q) minus that threshold.  Returns `cap` when
/// no nonnegative solution appears at lambda_1(q) - cap (the window is at
/// least that wide).  The theory guarantees the width is positive but gives
/// no value to compare against, so this is a measurement, not a check.
double atm2_epsilon(double alpha, const GridFunction& f, const CurvesContext& ctx,
                    double cap = 2.0, int bisect_iters = 12,
                    const ScanOptions& scan = {});

}  // namespace pqlab
