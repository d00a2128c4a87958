#pragma once

#include "pqlab/grid.hpp"

namespace pqlab {

/// Problem parameters for the two-exponent Dirichlet problem on (0,1):
///   -(|u'|^{p-2}u')' - (|u'|^{q-2}u')' = alpha |u|^{p-2}u + beta |u|^{q-2}u + f.
/// Requires p > q > 1.
struct Params {
    double p;
    double q;
    double alpha = 0.0;
    double beta = 0.0;

    void validate() const {
        if (!(p > q && q > 1.0)) throw DomainError("Params: need p > q > 1");
    }
};

/// The additive pieces of the energy: H = |u'|_p^p - alpha|u|_p^p,
/// G = |u'|_q^q - beta|u|_q^q, F = <f,u>, E = H/p + G/q - F.
struct EnergyReport {
    double H = 0.0;
    double G = 0.0;
    double F = 0.0;
    double E = 0.0;
};

/// H_alpha(u) = seminorm_pow(u,p) - alpha * norm_pow(u,p).
double h_alpha(const GridFunction& u, double p, double alpha);

/// G_beta(u) = seminorm_pow(u,q) - beta * norm_pow(u,q).
double g_beta(const GridFunction& u, double q, double beta);

/// Full energy split for the Dirichlet problem with source f.
EnergyReport energy(const GridFunction& u, const Params& prm, const GridFunction& f);

/// Pointwise density of the energy derivative: component i equals
/// (dE/du_i)/h, which is the discrete strong form
///   -(flux of u')' - alpha|u|^{p-2}u - beta|u|^{q-2}u - f at node i.
/// Zeros of this field are discrete solutions.
GridFunction energy_gradient(const GridFunction& u, const Params& prm, const GridFunction& f);

/// Rayleigh quotient seminorm_pow(u,r)/norm_pow(u,r).  Errors on u = 0.
double rayleigh(const GridFunction& u, double r);

/// Coefficient c(p,q) = (p-1)/(p-q) * ((p-q)/(q-1))^{(q-1)/(p-1)} entering
/// the tangency value of the fibered energy.
double tangency_coefficient(double p, double q);

/// Upper critical-curve integrand
///   Phi^+ = rayleigh(u,q) + c(p,q) H^{(q-1)/(p-1)} F^{(p-q)/(p-1)} / |u|_q^q
/// with H = h_alpha(u,p,alpha) and F = <f,u>.  Requires u >= 0, u != 0,
/// H >= 0 and F >= 0 up to the membership tolerance.
double phi_plus(const GridFunction& u, double p, double q, double alpha, const GridFunction& f);

/// Lower critical-curve integrand; same shape with (-H)^{(q-1)/(p-1)} and a
/// minus sign in front of the correction term.  Requires H <= 0.
double phi_minus(const GridFunction& u, double p, double q, double alpha, const GridFunction& f);

/// Membership feasibility slack: |H| within 1e-10 * seminorm_pow(u,p) counts
/// as zero when testing the constrained sets below.
double membership_tol(const GridFunction& u, double p);

/// u in B^+(alpha): u >= 0, u != 0, h_alpha(u) >= -tol.
bool in_B_plus(const GridFunction& u, double p, double alpha);

/// u in B^-(alpha): u >= 0, u != 0, h_alpha(u) <= +tol.
bool in_B_minus(const GridFunction& u, double p, double alpha);

/// u in Y(lambda): seminorm_pow(u,p) >= lambda * norm_pow(u,p) - tol.
bool in_Y(const GridFunction& u, double p, double lambda);

/// Ratio functional over test directions:
///   L(u;phi) = (a_p(u,phi) + a_q(u,phi) - alpha <u^{p-1}, phi>) / <u^{q-1}, phi>
/// where a_r(u,phi) = sum_cells |u'|^{r-2} u' phi' h and the bracket terms
/// use nodal quadrature.  Requires u > 0, phi >= 0, phi != 0.
double extended_functional(const GridFunction& u, const GridFunction& phi, const Params& prm);

/// Same ratio against the single nodal hat at interior node i (O(1) per call
/// given precomputed fluxes; this overload recomputes, O(n)).
double extended_functional_hat(const GridFunction& u, int i, const Params& prm);

/// Splits u = gamma * phi + u_perp with gamma = <u,phi>/|phi|_2^2 (the
/// L^2-orthogonal projection onto span{phi}).
struct L2Split {
    double gamma;
    GridFunction u_perp;
};
L2Split l2_decompose(const GridFunction& u, const GridFunction& phi);

/// Quotient H_lambda1(u) / (|gamma|^{p-2} sum_cells |phi'|^{p-2}|u_perp'|^2 h
///                          + seminorm_pow(u_perp,p));
/// errors when u is (numerically) proportional to phi.  Positivity of this
/// ratio over non-multiples of phi is a sharpened Poincare inequality.
double improved_poincare_ratio(const GridFunction& u, double p, double lambda1,
                               const GridFunction& phi);

}  // namespace pqlab
