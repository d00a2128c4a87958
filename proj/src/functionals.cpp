#include "pqlab/functionals.hpp"

#include <cmath>

namespace pqlab {

double h_alpha(const GridFunction& u, double p, double alpha) {
    return seminorm_pow(u, p) - alpha * norm_pow(u, p);
}

double g_beta(const GridFunction& u, double q, double beta) {
    return seminorm_pow(u, q) - beta * norm_pow(u, q);
}

EnergyReport energy(const GridFunction& u, const Params& prm, const GridFunction& f) {
    prm.validate();
    EnergyReport r;
    r.H = h_alpha(u, prm.p, prm.alpha);
    r.G = g_beta(u, prm.q, prm.beta);
    r.F = pairing(f, u);
    r.E = r.H / prm.p + r.G / prm.q - r.F;
    return r;
}

GridFunction energy_gradient(const GridFunction& u, const Params& prm, const GridFunction& f) {
    prm.validate();
    if (!(f.grid == u.grid)) throw DomainError("energy_gradient: grid mismatch");
    const int n = u.n();
    const double h = u.h();
    std::vector<double> g = gradient(u);
    GridFunction out(u.grid);
    // flux differences give the discrete divergence; nodal terms are the
    // reaction and source densities
    for (int i = 0; i < n; ++i) {
        const double fl = signed_pow(g[static_cast<size_t>(i)], prm.p - 1.0) +
                          signed_pow(g[static_cast<size_t>(i)], prm.q - 1.0);
        const double fr = signed_pow(g[static_cast<size_t>(i) + 1], prm.p - 1.0) +
                          signed_pow(g[static_cast<size_t>(i) + 1], prm.q - 1.0);
        out[i] = (fl - fr) / h - prm.alpha * signed_pow(u[i], prm.p - 1.0) -
                 prm.beta * signed_pow(u[i], prm.q - 1.0) - f[i];
    }
    return out;
}

double rayleigh(const GridFunction& u, double r) {
    const double den = norm_pow(u, r);
    if (den == 0.0) throw DomainError("rayleigh: zero function");
    return seminorm_pow(u, r) / den;
}

double tangency_coefficient(double p, double q) {
    if (!(p > q && q > 1.0)) throw DomainError("tangency_coefficient: need p > q > 1");
    return (p - 1.0) / (p - q) * std::pow((p - q) / (q - 1.0), (q - 1.0) / (p - 1.0));
}

namespace {

// shared feasibility checks for the constrained functionals
void require_admissible_sign(const GridFunction& u, const char* who) {
    SignClass s = classify_sign(u);
    if (s == SignClass::Zero) throw DomainError(std::string(who) + ": zero function");
    if (s != SignClass::Positive && s != SignClass::Nonnegative)
        throw DomainError(std::string(who) + ": needs a nonnegative function");
}

}  // namespace

double phi_plus(const GridFunction& u, double p, double q, double alpha, const GridFunction& f) {
    Params prm{p, q, alpha, 0.0};
    prm.validate();
    require_admissible_sign(u, "phi_plus");
    const double tol = membership_tol(u, p);
    double H = h_alpha(u, p, alpha);
    if (H < -tol) throw DomainError("phi_plus: h_alpha(u) is negative");
    if (H < 0.0) H = 0.0;
    double F = pairing(f, u);
    if (F < -tol) throw DomainError("phi_plus: <f,u> is negative");
    if (F < 0.0) F = 0.0;
    const double corr = tangency_coefficient(p, q) * std::pow(H, (q - 1.0) / (p - 1.0)) *
                        std::pow(F, (p - q) / (p - 1.0));
    return rayleigh(u, q) + corr / norm_pow(u, q);
}

double phi_minus(const GridFunction& u, double p, double q, double alpha, const GridFunction& f) {
    Params prm{p, q, alpha, 0.0};
    prm.validate();
    require_admissible_sign(u, "phi_minus");
    const double tol = membership_tol(u, p);
    double H = h_alpha(u, p, alpha);
    if (H > tol) throw DomainError("phi_minus: h_alpha(u) is positive");
    if (H > 0.0) H = 0.0;
    double F = pairing(f, u);
    if (F < -tol) throw DomainError("phi_minus: <f,u> is negative");
    if (F < 0.0) F = 0.0;
    const double corr = tangency_coefficient(p, q) * std::pow(-H, (q - 1.0) / (p - 1.0)) *
                        std::pow(F, (p - q) / (p - 1.0));
    return rayleigh(u, q) - corr / norm_pow(u, q);
}

double membership_tol(const GridFunction& u, double p) {
    return 1e-10 * seminorm_pow(u, p);
}

bool in_B_plus(const GridFunction& u, double p, double alpha) {
    SignClass s = classify_sign(u);
    if (s != SignClass::Positive && s != SignClass::Nonnegative) return false;
    return h_alpha(u, p, alpha) >= -membership_tol(u, p);
}

bool in_B_minus(const GridFunction& u, double p, double alpha) {
    SignClass s = classify_sign(u);
    if (s != SignClass::Positive && s != SignClass::Nonnegative) return false;
    return h_alpha(u, p, alpha) <= membership_tol(u, p);
}

bool in_Y(const GridFunction& u, double p, double lambda) {
    if (classify_sign(u) == SignClass::Zero) return false;
    return seminorm_pow(u, p) >= lambda * norm_pow(u, p) - membership_tol(u, p);
}

double extended_functional(const GridFunction& u, const GridFunction& phi, const Params& prm) {
    prm.validate();
    if (!(u.grid == phi.grid)) throw DomainError("extended_functional: grid mismatch");
    if (classify_sign(u) != SignClass::Positive)
        throw DomainError("extended_functional: u must be positive");
    SignClass sp = classify_sign(phi);
    if (sp != SignClass::Positive && sp != SignClass::Nonnegative)
        throw DomainError("extended_functional: phi must be nonnegative and nonzero");
    const int n = u.n();
    const double h = u.h();
    std::vector<double> gu = gradient(u), gp = gradient(phi);
    double num = 0.0, den = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double flux = signed_pow(gu[static_cast<size_t>(j)], prm.p - 1.0) +
                            signed_pow(gu[static_cast<size_t>(j)], prm.q - 1.0);
        num += flux * gp[static_cast<size_t>(j)];
    }
    num *= h;
    for (int i = 0; i < n; ++i) {
        num -= h * prm.alpha * signed_pow(u[i], prm.p - 1.0) * phi[i];
        den += h * signed_pow(u[i], prm.q - 1.0) * phi[i];
    }
    if (!(den > 0.0)) throw DomainError("extended_functional: degenerate denominator");
    return num / den;
}

double extended_functional_hat(const GridFunction& u, int i, const Params& prm) {
    prm.validate();
    if (i < 0 || i >= u.n()) throw DomainError("extended_functional_hat: node out of range");
    if (classify_sign(u) != SignClass::Positive)
        throw DomainError("extended_functional_hat: u must be positive");
    const double h = u.h();
    std::vector<double> gu = gradient(u);
    // the hat at node i has slope +1/h on cell i and -1/h on cell i+1
    const double fl = signed_pow(gu[static_cast<size_t>(i)], prm.p - 1.0) +
                      signed_pow(gu[static_cast<size_t>(i)], prm.q - 1.0);
    const double fr = signed_pow(gu[static_cast<size_t>(i) + 1], prm.p - 1.0) +
                      signed_pow(gu[static_cast<size_t>(i) + 1], prm.q - 1.0);
    const double num = (fl - fr) - h * prm.alpha * signed_pow(u[i], prm.p - 1.0);
    const double den = h * signed_pow(u[i], prm.q - 1.0);
    return num / den;
}

L2Split l2_decompose(const GridFunction& u, const GridFunction& phi) {
    const double den = norm_pow(phi, 2.0);
    if (den == 0.0) throw DomainError("l2_decompose: zero reference function");
    const double gamma = pairing(u, phi) / den;
    GridFunction perp(u.grid);
    for (int i = 0; i < u.n(); ++i) perp[i] = u[i] - gamma * phi[i];
    return {gamma, perp};
}

double improved_poincare_ratio(const GridFunction& u, double p, double lambda1,
                               const GridFunction& phi) {
    if (!(p >= 2.0)) throw DomainError("improved_poincare_ratio: need p >= 2");
    L2Split split = l2_decompose(u, phi);
    const double h = u.h();
    std::vector<double> gphi = gradient(phi), gperp = gradient(split.u_perp);
    double weighted = 0.0;
    for (size_t j = 0; j < gphi.size(); ++j)
        weighted += std::pow(std::fabs(gphi[j]), p - 2.0) * gperp[j] * gperp[j];
    weighted *= h;
    const double den =
        std::pow(std::fabs(split.gamma), p - 2.0) * weighted + seminorm_pow(split.u_perp, p);
    if (den <= 1e-14 * seminorm_pow(u, p))
        throw DomainError("improved_poincare_ratio: u is proportional to the reference");
    return h_alpha(u, p, lambda1) / den;
}

}  // namespace pqlab
