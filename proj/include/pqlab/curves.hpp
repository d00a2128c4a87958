#pragma once

#include "pqlab/eigen.hpp"
#include "pqlab/functionals.hpp"
#include "pqlab/grid.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pqlab {

/// Whether a reported curve sample bounds the true value from below, from
/// above, or is exact up to quadrature.
enum class BoundKind { Lower, Upper, Exact };
const char* to_string(BoundKind k);

/// One sample of a critical curve: the reported value at alpha together with
/// the function certifying it.  For an Upper bound the certificate is a
/// feasible point whose objective equals value; for a Lower bound likewise on
/// the maximization side.
struct CurvePoint {
    double alpha;
    double value;
    BoundKind kind;
    GridFunction certificate;
};

struct CurveOptions {
    int multistarts = 16;
    int penalty_stages = 5;
    double penalty0 = 10.0;       ///< exterior penalty weight, x10 per stage
    int stage_iters = 300;        ///< descent iterations per stage
    double tol = 1e-11;           ///< relative objective-decrease threshold
    std::uint64_t seed = 0x5eed5eedULL;
    std::vector<GridFunction> extra_starts;  ///< shared certificate pool
};

/// Threshold alpha_* = |phi_q'|_p^p / |phi_q|_p^p evaluated on the computed
/// first q-eigenfunction.  Exceeds the first p-eigenvalue strictly.
double alpha_star(double p, double q, Grid1D grid);

/// Threshold beta_* = |phi_p'|_q^q / |phi_p|_q^q on the first p-eigenfunction.
double beta_star(double p, double q, Grid1D grid);

/// q-Rayleigh quotient of the k-th p-eigenfunction, returned as an (equal)
/// pair: on an interval every eigenspace is one-dimensional, so the inf and
/// sup over it coincide.
std::pair<double, double> beta_under_over(double p, double q, Grid1D grid, int k);

/// Upper bound for the lower critical curve
///   beta_f(alpha) = inf { Phi^+(u) : u >= 0, u != 0, h_alpha(u) >= 0 }
/// by multi-start projected penalty descent plus certificate evaluation.
/// kind = Upper; certificate is feasible and attains value.
CurvePoint beta_f(double alpha, double p, double q, Grid1D grid, const GridFunction& f,
                  const CurveOptions& opts = {});

/// Samples beta_f on an ascending alpha grid with a shared certificate pool
/// (each sample also evaluates every other sample's certificate), which keeps
/// the reported curve close to its true monotone shape.
std::vector<CurvePoint> beta_f_curve(const std::vector<double>& alphas, double p, double q,
                                     Grid1D grid, const GridFunction& f,
                                     const CurveOptions& opts = {});

/// Lower bound for the upper critical curve
///   beta^f(alpha) = sup { Phi^-(u) : u >= 0, u != 0, h_alpha(u) <= 0 }
/// for alpha >= lambda_1(p); kind = Lower.
CurvePoint beta_sup_f(double alpha, double p, double q, Grid1D grid, const GridFunction& f,
                      const CurveOptions& opts = {});

std::vector<CurvePoint> beta_sup_f_curve(const std::vector<double>& alphas, double p, double q,
                                         Grid1D grid, const GridFunction& f,
                                         const CurveOptions& opts = {});

/// Certificate-based bounds for the positive-supersolution threshold
///   beta_ps(alpha) = sup_{u > 0} inf_{test >= 0} L(u; test).
/// lower: best over the supplied positive candidates of the hat-function
/// minimum of L (the hats generate the nonnegative test cone, so the inner
/// minimum over hats is the exact inner infimum on the grid).
/// upper: the first q-eigenvalue once alpha >= alpha_*, else +infinity
/// (no finite upper bound is certified below alpha_*).
struct PsBounds {
    CurvePoint lower;
    CurvePoint upper;
};
PsBounds beta_ps_bounds(double alpha, double p, double q, Grid1D grid,
                        const std::vector<GridFunction>& candidates);

/// Phase-diagram labels, in decreasing order of knowledge:
/// AllPositive       every nontrivial solution is positive,
/// NoNonnegative     no nonzero nonnegative solution exists,
/// ExistenceUnknown  alpha sits on the p-spectrum with beta in the window
///                   where the variational existence machinery fails,
/// ExistsUnclassified a solution exists (or is expected) but its sign is not
///                   pinned down by the verified statements.
enum class Region { AllPositive, NoNonnegative, ExistenceUnknown, ExistsUnclassified };
const char* to_string(Region r);

/// Precomputed curve data shared by region classification and the sweeps.
struct CurvesContext {
    double p, q;
    Grid1D grid;
    double lambda1_p, lambda1_q;
    GridFunction phi_p, phi_q;
    double a_star, b_star;
    std::vector<CurvePoint> beta_f_samples;    ///< ascending alpha
    std::vector<CurvePoint> beta_sup_samples;  ///< ascending alpha
    double gate_margin = 0.15;   ///< conservative slack when comparing beta
                                 ///< against optimizer-estimated curves
    double sigma_tol = 1e-6;     ///< relative half-width of the spectral sliver
    int sigma_kmax = 5;
    std::vector<double> sigma_p;        ///< analytic p-eigenvalues 1..kmax
    std::vector<double> beta_window;    ///< q-quotient of the k-th p-eigenfunction

    /// Conservative read of the sampled beta_f upper-bound curve: the smaller
    /// of the two bracketing samples (safe for "beta below the true curve").
    double beta_f_at(double alpha) const;
    /// Conservative read of the beta^f lower-bound curve: the larger bracket.
    double beta_sup_at(double alpha) const;
};

CurvesContext build_context(double p, double q, Grid1D grid, const GridFunction& f,
                            const std::vector<double>& alphas, const CurveOptions& opts = {});

/// Labels one (alpha, beta) point using only certified statements plus the
/// conservative gate margins stored in the context.
Region classify_region(double alpha, double beta, const CurvesContext& ctx);

}  // namespace pqlab
