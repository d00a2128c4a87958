#pragma once

#include "pqlab/eigen.hpp"
#include "pqlab/functionals.hpp"
#include "pqlab/grid.hpp"

#include <vector>

namespace pqlab {

/// Combined flux of the two-exponent operator: |s|^{p-2}s + |s|^{q-2}s.
double flux(double s, double p, double q);

/// Inverse of the flux map, solved by Newton iteration safeguarded with
/// bisection on a monotone bracket; |result error| <= tol * max(1,|result|).
double flux_inverse(double w, double p, double q, double tol = 1e-13);

/// Forward-integrated trajectory of the Dirichlet problem's flux system
///   u' = flux_inverse(w),  w' = -(alpha|u|^{p-2}u + beta|u|^{q-2}u + f(x))
/// from u(0)=0, w(0)=flux(slope0).  Fixed-step RK4 with one step per grid
/// cell; f is interpolated linearly between nodes (constant beyond the first
/// and last node).  If |u| exceeds the blow-up cutoff the march stops and
/// endpoint carries a huge value of the matching sign.
struct ShootResult {
    GridFunction u;
    double slope0;
    double endpoint;   ///< u(1), or +-1e300 on blow-up
    bool blew_up;
    double blowup_x;   ///< where the cutoff tripped (1.0 when it did not)
};
ShootResult shoot(const Params& prm, const GridFunction& f, double slope0);

/// A deduplicated Dirichlet solution found by shooting.
struct SolutionRecord {
    GridFunction u;
    double slope0;
    double residual;   ///< scaled sup-norm of the discrete strong-form density
    SignClass sign;
    EnergyReport energy;
};

struct ScanOptions {
    double slope_min = -40.0;
    double slope_max = 40.0;
    int scan_count = 81;
    double endpoint_tol = 1e-10;   ///< on |u(1)|, scaled by 1 + sup|u|
    int max_bisect = 200;
    /// Residual filter for accepted candidates.  Negative (the default)
    /// selects the scale-aware limit 40 h (1 + sup|u|), which tracks the
    /// O(h) flux-kink error of genuine trajectories; a positive value is
    /// applied verbatim to the scaled residual.
    double residual_tol = -1.0;
    double dedup_tol = 1e-5;       ///< sup-distance, scaled by 1 + sup|u|
};

/// The residual threshold find_solutions applies to a candidate whose
/// trajectory is u (see ScanOptions::residual_tol).
double residual_limit(const ScanOptions& opts, const GridFunction& u);

/// Scans initial slopes, brackets endpoint sign changes, refines each bracket
/// by bisection and returns the surviving distinct solutions sorted by slope.
/// For f = 0 the zero solution is always included.  An empty result is a
/// valid outcome.
std::vector<SolutionRecord> find_solutions(const Params& prm, const GridFunction& f,
                                           const ScanOptions& opts = {});

struct DescentOptions {
    double grad_tol = 1e-8;        ///< sup-norm of the energy-gradient density
    int max_iters = 200000;
    const GridFunction* init = nullptr;  ///< default: Laplacian solve of f
    /// When set, f is first projected to have zero pairing against this
    /// function (exactly, in the discrete inner product).  Regimes whose
    /// hypotheses demand <f, phi> = 0 need the quadrature to honor it.
    const GridFunction* orthogonalize_f_against = nullptr;
};

struct MinimizeResult {
    GridFunction u;
    EnergyReport energy;
    int iterations;
    double grad_sup;
    /// False when the energy reached its roundoff floor before the gradient
    /// target: degenerate regimes (flat valleys where both reaction terms
    /// vanish along a ray) pin the gradient orders of magnitude above any
    /// tight target while the energy value itself is fully converged.
    bool converged;
};

/// Minimizes the energy by Laplacian-preconditioned gradient descent with
/// Armijo line search.  Stops at the gradient target, or once energy
/// decrease stays at roundoff level; a best iterate within 100x the target
/// is returned with converged = false.  Throws SolverError when the budget
/// runs out farther away than that or the iterate diverges (non-coercive
/// data).
MinimizeResult minimize_energy(const Params& prm, const GridFunction& f,
                               const DescentOptions& opts = {});

/// Fiber polynomial t^p H + t^q G + t F and its t-derivative.
double q_eval(double t, double H, double G, double F, double p, double q);
double q_prime(double t, double H, double G, double F, double p, double q);

/// Tangency data of the fiber polynomial for H > 0, F > 0: the G value
/// g_tilde at which Q gains a double root, and the root t_star itself:
///   t_star = ((q-1)/(p-q))^{1/(p-1)} (F/H)^{1/(p-1)},
///   g_tilde = -c(p,q) H^{(q-1)/(p-1)} F^{(p-q)/(p-1)}.
struct Tangency {
    double t_star;
    double g_tilde;
};
Tangency tangency(double H, double F, double p, double q);

/// Tangency data evaluated on a concrete function: H = h_alpha(u), F = <f,u>,
/// and the beta value for which g_beta(u) equals g_tilde.
struct TangencyCertificate {
    double t_star;
    double g_tilde;
    double beta_tilde;
};
TangencyCertificate beta_tilde(const GridFunction& u, double alpha, double p, double q,
                               const GridFunction& f);

/// Cell-sum of |v'|^p - |u'|^{p-2}u' (v^p/u^{p-1})'.  Nonnegative for u > 0,
/// v >= 0 cell by cell (two-point convexity), so the value is >= -roundoff.
double picone_classical_gap(const GridFunction& u, const GridFunction& v, double p);

/// Cell-sum of |v'|^{q-2}v' (v^{p-q+1}/u^{p-q})' - |u'|^{q-2}u' (v^p/u^{p-1})'.
double picone_generalized_gap(const GridFunction& u, const GridFunction& v, double p,
                              double q);

}  // namespace pqlab
