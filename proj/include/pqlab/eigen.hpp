#pragma once

#include "pqlab/grid.hpp"

namespace pqlab {

/// Thrown when an iterative scheme exhausts its budget without converging.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An eigenpair of the discrete r-Laplacian on a grid.  phi is normalized to
/// |phi|_r = 1 with positive first bump; k is the mode index (k-1 interior
/// sign changes); residual is the sup-norm of the discrete equation density
/// (see eigen_residual); iterations is 0 for sampled closed forms.  converged
/// reports whether the residual target was met: for r < 2 on fine grids the
/// kink faces (slope near 0) amplify one ulp of the iterate beyond tight
/// targets, and the solver then returns its best iterate with converged =
/// false rather than lying or throwing.
struct EigenPair {
    double lambda;
    GridFunction phi;
    double r;
    int k;
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

struct EigenOptions {
    double tol = 1e-8;     ///< absolute sup-norm target for the equation density
    int max_iters = 50000;
    const GridFunction* init = nullptr;  ///< optional start; default x(1-x)
};

/// Half-period of the generalized sine profile: 2*pi / (r sin(pi/r)).
double pi_r(double r);

/// k-th Dirichlet eigenvalue of the r-Laplacian on (0,1):
/// (r-1) * (k * pi_r(r))^r.
double analytic_lambda_k(double r, int k);

/// First zero of the profile solving (|u'|^{r-2}u')' + (r-1)|u|^{r-2}u = 0,
/// u(0)=0, u'(0)=1, located by fixed-step RK4 integration in flux variables
/// plus bisection on the final step.  Independent cross-check for pi_r.
double sine_profile_first_zero(double r, double step = 5e-5);

/// k-bump eigenfunction sampled on the grid: the rising quarter-bump comes
/// from integrating the profile initial-value problem, the rest by even and
/// odd reflection.  lambda is the closed-form eigenvalue; residual reports
/// the sampled function's discrete defect (quadrature-level, not zero).
EigenPair analytic_eigenfunction(double r, int k, Grid1D grid);

/// Minimizes the discrete Rayleigh quotient |u'|_r^r / |u|_r^r by projected
/// descent: Laplacian-preconditioned quotient gradient, Armijo steps, iterate
/// renormalized to |u|_r = 1 each accepted step, then a fixed-step polish
/// once quotient decrease falls below roundoff.  Converged means the residual
/// density reached opts.tol in sup norm; a best iterate within 100x the
/// target is returned with converged = false, anything worse throws.
EigenPair first_eigenpair(double r, Grid1D grid, const EigenOptions& opts = {});

/// Sup-norm of the discrete eigen-equation density
///   (flux(slope_i) - flux(slope_{i+1}))/h - lambda |phi_i|^{r-2} phi_i,
/// i.e. the hat-function weak residual normalized by h (the hat's mass).
/// The grid must be the one pair.phi lives on.
double eigen_residual(const EigenPair& pair, const Grid1D& grid);

}  // namespace pqlab
