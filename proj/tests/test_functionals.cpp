#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqlab/eigen.hpp"
#include "pqlab/functionals.hpp"
#include "pqlab/grid.hpp"

#include <cmath>
#include <random>

using namespace pqlab;

namespace {

GridFunction smooth_random(Grid1D g, std::uint64_t seed, double offset = 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
    return GridFunction::sample(g, [&](double x) {
        return offset + a1 * std::sin(M_PI * x) + a2 * std::sin(2 * M_PI * x) +
               a3 * std::sin(3 * M_PI * x);
    });
}

}  // namespace

TEST_CASE("parameter validation requires p > q > 1") {
    CHECK_NOTHROW(Params{3.0, 2.0, 0.0, 0.0}.validate());
    CHECK_THROWS_AS(Params({2.0, 2.0, 0.0, 0.0}).validate(), DomainError);
    CHECK_THROWS_AS(Params({1.5, 2.0, 0.0, 0.0}).validate(), DomainError);
    CHECK_THROWS_AS(Params({3.0, 1.0, 0.0, 0.0}).validate(), DomainError);
}

TEST_CASE("energy splits into its additive pieces") {
    Grid1D g(199);
    Params prm{3.0, 2.0, 4.0, -1.5};
    GridFunction u = smooth_random(g, 11);
    GridFunction f = GridFunction::sample(g, [](double x) { return 1.0 + x; });

    EnergyReport er = energy(u, prm, f);
    CHECK(er.E == doctest::Approx(er.H / prm.p + er.G / prm.q - er.F).epsilon(1e-14));
    CHECK(er.H == doctest::Approx(h_alpha(u, prm.p, prm.alpha)).epsilon(1e-14));
    CHECK(er.G == doctest::Approx(g_beta(u, prm.q, prm.beta)).epsilon(1e-14));
    CHECK(er.F == doctest::Approx(pairing(f, u)).epsilon(1e-14));
    CHECK(er.H ==
          doctest::Approx(seminorm_pow(u, 3.0) - 4.0 * norm_pow(u, 3.0)).epsilon(1e-13));
}

TEST_CASE("energy gradient matches central finite differences") {
    Grid1D g(19);
    Params prm{3.0, 2.0, 2.0, 1.0};
    GridFunction u = smooth_random(g, 7, 0.3);
    GridFunction f = GridFunction::sample(g, [](double x) { return std::cos(x); });

    GridFunction grad = energy_gradient(u, prm, f);
    const double eps = 1e-6;
    for (int i : {0, 4, 9, 13, 18}) {
        GridFunction up = u, um = u;
        up[i] += eps;
        um[i] -= eps;
        double dE = (energy(up, prm, f).E - energy(um, prm, f).E) / (2 * eps);
        // grad holds the density (dE/du_i)/h
        CHECK(grad[i] == doctest::Approx(dE / g.h()).epsilon(1e-5));
    }
}

TEST_CASE("zero function has zero energy and gradient equal to minus f") {
    Grid1D g(49);
    Params prm{3.5, 1.8, 2.0, 3.0};
    GridFunction z(g);
    GridFunction f = GridFunction::sample(g, [](double x) { return x * (1 - x); });
    EnergyReport er = energy(z, prm, f);
    CHECK(er.E == 0.0);
    GridFunction grad = energy_gradient(z, prm, f);
    for (int i = 0; i < g.n(); ++i) CHECK(grad[i] == doctest::Approx(-f[i]).epsilon(1e-14));
}

TEST_CASE("Rayleigh quotient is scale invariant and errors on zero") {
    Grid1D g(199);
    GridFunction s = GridFunction::sample(g, [](double x) { return std::sin(M_PI * x); });
    double r0 = rayleigh(s, 2.0);
    CHECK(r0 == doctest::Approx(M_PI * M_PI).epsilon(1e-3));
    GridFunction cs = s;
    for (int i = 0; i < g.n(); ++i) cs[i] *= -7.25;
    CHECK(rayleigh(cs, 2.0) == doctest::Approx(r0).epsilon(1e-13));
    CHECK_THROWS_AS(rayleigh(GridFunction(g), 2.0), DomainError);
}

TEST_CASE("tangency coefficient closed form") {
    // c(p,q) = (p-1)/(p-q) * ((p-q)/(q-1))^((q-1)/(p-1))
    CHECK(tangency_coefficient(3.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    double p = 4.0, q = 1.5;
    double expect = (p - 1) / (p - q) * std::pow((p - q) / (q - 1), (q - 1) / (p - 1));
    CHECK(tangency_coefficient(p, q) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("curve integrands reduce to the Rayleigh quotient when the source term vanishes") {
    Grid1D g(99);
    GridFunction u = GridFunction::sample(g, [](double x) { return std::sin(M_PI * x); });
    GridFunction zero(g);
    double p = 3.0, q = 2.0;
    double alpha = rayleigh(u, p) - 5.0;  // H > 0, feasible for the plus side
    CHECK(phi_plus(u, p, q, alpha, zero) == doctest::Approx(rayleigh(u, q)).epsilon(1e-13));
    double alpha_m = rayleigh(u, p);  // H = 0 boundary of the minus side
    CHECK(phi_minus(u, p, q, alpha_m, zero) == doctest::Approx(rayleigh(u, q)).epsilon(1e-9));
}

TEST_CASE("plus-side integrand matches its hand-assembled formula") {
    Grid1D g(149);
    GridFunction u = GridFunction::sample(g, [](double x) { return std::sin(M_PI * x); });
    GridFunction f = GridFunction::sample(g, [](double) { return 1.0; });
    double p = 3.0, q = 2.0, alpha = 10.0;
    double H = h_alpha(u, p, alpha);
    REQUIRE(H > 0.0);
    double F = pairing(f, u);
    double expect = rayleigh(u, q) + tangency_coefficient(p, q) *
                                         std::pow(H, (q - 1) / (p - 1)) *
                                         std::pow(F, (p - q) / (p - 1)) / norm_pow(u, q);
    CHECK(phi_plus(u, p, q, alpha, f) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("constraint-set membership flips at the first eigenvalue") {
    Grid1D g(199);
    double p = 3.0;
    EigenPair ep = first_eigenpair(p, g);
    // H is positive below the eigenvalue, negative above it
    CHECK(in_B_plus(ep.phi, p, ep.lambda - 1.0));
    CHECK_FALSE(in_B_minus(ep.phi, p, ep.lambda - 1.0));
    CHECK(in_B_minus(ep.phi, p, ep.lambda + 1.0));
    CHECK_FALSE(in_B_plus(ep.phi, p, ep.lambda + 1.0));
    // at the eigenvalue itself H vanishes and both memberships hold
    CHECK(in_B_plus(ep.phi, p, ep.lambda));
    CHECK(in_B_minus(ep.phi, p, ep.lambda));
    CHECK(in_Y(ep.phi, p, ep.lambda));
    CHECK_FALSE(in_Y(ep.phi, p, ep.lambda + 1.0));
    CHECK(membership_tol(ep.phi, p) > 0.0);
}

TEST_CASE("ratio functional against the function itself bounds the first eigenvalue") {
    Grid1D g(199);
    Params prm{3.0, 2.0, 0.0, 0.0};
    EigenPair e2 = first_eigenpair(2.0, g);
    // L(u;u) with alpha = 0 equals (|u'|_p^p + |u'|_q^q) / |u|_q^q >= lambda_1(q)
    double L = extended_functional(e2.phi, e2.phi, prm);
    CHECK(L >= e2.lambda);
    CHECK(L == doctest::Approx(seminorm_pow(e2.phi, 3.0) / norm_pow(e2.phi, 2.0) +
                               e2.lambda)
                   .epsilon(1e-9));
}

TEST_CASE("hat-function overload agrees with the general ratio functional") {
    Grid1D g(49);
    Params prm{3.0, 2.0, 5.0, 0.0};
    GridFunction u = GridFunction::sample(
        g, [](double x) { return 0.2 + std::sin(M_PI * x); });
    for (int i : {0, 7, 24, 40, 48}) {
        GridFunction hat(g);
        hat[i] = 1.0;
        CHECK(extended_functional_hat(u, i, prm) ==
              doctest::Approx(extended_functional(u, hat, prm)).epsilon(1e-12));
    }
}

TEST_CASE("orthogonal decomposition reconstructs and is orthogonal") {
    Grid1D g(99);
    GridFunction phi = GridFunction::sample(g, [](double x) { return std::sin(M_PI * x); });
    GridFunction u = smooth_random(g, 3);
    L2Split sp = l2_decompose(u, phi);
    double dot = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        CHECK(sp.gamma * phi[i] + sp.u_perp[i] == doctest::Approx(u[i]).epsilon(1e-12));
        dot += sp.u_perp[i] * phi[i];
    }
    CHECK(std::fabs(dot) * g.h() <= 1e-13);
}

TEST_CASE("sharpened Poincare ratio is positive off the eigenfunction line") {
    Grid1D g(199);
    double p = 3.0;
    EigenPair ep = first_eigenpair(p, g);
    GridFunction u = ep.phi;
    for (int i = 0; i < g.n(); ++i) u[i] += 0.3 * std::sin(2 * M_PI * g.x(i));
    CHECK(improved_poincare_ratio(u, p, ep.lambda, ep.phi) > 0.0);
    GridFunction multiple = ep.phi;
    for (int i = 0; i < g.n(); ++i) multiple[i] *= 2.0;
    CHECK_THROWS_AS(improved_poincare_ratio(multiple, p, ep.lambda, ep.phi), DomainError);
}
