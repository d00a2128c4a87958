#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqlab/grid.hpp"
#include "pqlab/tridiag.hpp"

#include <cmath>
#include <vector>

using namespace pqlab;

TEST_CASE("grid geometry: spacing and node positions") {
    Grid1D g(9);
    CHECK(g.n() == 9);
    CHECK(g.h() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(g.x(0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(g.x(8) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(Grid1D(9) == g);
}

TEST_CASE("grid rejects fewer than three interior nodes") {
    CHECK_THROWS_AS(Grid1D(2), DomainError);
    CHECK_THROWS_AS(Grid1D(0), DomainError);
    CHECK_THROWS_AS(Grid1D(-5), DomainError);
    CHECK_NOTHROW(Grid1D(3));
}

TEST_CASE("grid function construction and sampling") {
    Grid1D g(7);
    GridFunction z(g);
    for (int i = 0; i < g.n(); ++i) CHECK(z[i] == 0.0);

    GridFunction u = GridFunction::sample(g, [](double x) { return x * x; });
    CHECK(u[3] == doctest::Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_AS(GridFunction(g, std::vector<double>(3, 1.0)), DomainError);
}

TEST_CASE("signed power is odd and matches |s|^(e-1) s") {
    CHECK(signed_pow(2.0, 3.0) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(signed_pow(-2.0, 3.0) == doctest::Approx(-8.0).epsilon(1e-15));
    CHECK(signed_pow(0.0, 1.5) == 0.0);
    CHECK(signed_pow(-3.0, 2.0) == doctest::Approx(-9.0).epsilon(1e-15));
    for (double s : {0.3, 1.7, 42.0})
        CHECK(signed_pow(-s, 2.5) == doctest::Approx(-signed_pow(s, 2.5)).epsilon(1e-15));
}

TEST_CASE("quadrature of nodal values with implicit zero boundary") {
    Grid1D g(99);
    // integrate() sums nodal values times h; for u(x) = x that telescopes to
    // h^2 * n(n+1)/2 = n/(2(n+1)) exactly.
    GridFunction lin = GridFunction::sample(g, [](double x) { return x; });
    CHECK(integrate(lin) == doctest::Approx(99.0 / 200.0).epsilon(1e-14));

    GridFunction s = GridFunction::sample(g, [](double x) { return std::sin(M_PI * x); });
    CHECK(integrate(s) == doctest::Approx(2.0 / M_PI).epsilon(1e-4));
}

TEST_CASE("norms, seminorms, and homogeneity") {
    Grid1D g(199);
    GridFunction s = GridFunction::sample(g, [](double x) { return std::sin(M_PI * x); });

    CHECK(norm_pow(s, 2.0) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(seminorm_pow(s, 2.0) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-3));
    CHECK(norm(s, 2.0) == doctest::Approx(std::sqrt(norm_pow(s, 2.0))).epsilon(1e-14));
    CHECK(seminorm(s, 3.0) ==
          doctest::Approx(std::cbrt(seminorm_pow(s, 3.0))).epsilon(1e-14));

    GridFunction cs = s;
    for (int i = 0; i < g.n(); ++i) cs[i] *= -2.5;
    const double r = 2.7;
    CHECK(norm_pow(cs, r) ==
          doctest::Approx(std::pow(2.5, r) * norm_pow(s, r)).epsilon(1e-12));
    CHECK(seminorm_pow(cs, r) ==
          doctest::Approx(std::pow(2.5, r) * seminorm_pow(s, r)).epsilon(1e-12));
}

TEST_CASE("pairing is the bilinear nodal inner product") {
    Grid1D g(49);
    GridFunction a = GridFunction::sample(g, [](double x) { return x; });
    GridFunction b = GridFunction::sample(g, [](double x) { return 1.0 - x; });
    CHECK(pairing(a, b) == doctest::Approx(pairing(b, a)).epsilon(1e-15));

    double sum = 0.0;
    for (int i = 0; i < g.n(); ++i) sum += a[i] * b[i];
    CHECK(pairing(a, b) == doctest::Approx(sum * g.h()).epsilon(1e-14));
}

TEST_CASE("cell gradient has n+1 slopes with zero boundary") {
    Grid1D g(9);
    GridFunction lin = GridFunction::sample(g, [](double x) { return x; });
    std::vector<double> dv = gradient(lin);
    REQUIRE(static_cast<int>(dv.size()) == g.n() + 1);
    for (int c = 0; c < g.n(); ++c) CHECK(dv[static_cast<size_t>(c)] == doctest::Approx(1.0).epsilon(1e-12));
    // last cell drops from x = 0.9 back to the boundary zero
    CHECK(dv.back() == doctest::Approx(-9.0).epsilon(1e-12));
}

TEST_CASE("signed parts recompose the function") {
    Grid1D g(63);
    GridFunction u = GridFunction::sample(g, [](double x) { return std::sin(3 * M_PI * x); });
    auto [up, um] = split_signs(u);
    for (int i = 0; i < g.n(); ++i) {
        CHECK(up[i] >= 0.0);
        CHECK(um[i] <= 0.0);
        CHECK(up[i] + um[i] == u[i]);
        CHECK(up[i] * um[i] == 0.0);
    }
}

TEST_CASE("sign classification covers all six patterns") {
    Grid1D g(63);
    auto sample = [&](double (*f)(double)) { return GridFunction::sample(g, f); };

    CHECK(classify_sign(GridFunction(g)) == SignClass::Zero);
    CHECK(classify_sign(sample([](double x) { return std::sin(M_PI * x); })) ==
          SignClass::Positive);
    CHECK(classify_sign(sample([](double x) { return -std::sin(M_PI * x); })) ==
          SignClass::Negative);
    CHECK(classify_sign(sample([](double x) { return std::sin(2 * M_PI * x); })) ==
          SignClass::SignChanging);
    CHECK(classify_sign(sample([](double x) { return std::max(0.0, std::sin(2 * M_PI * x)); })) ==
          SignClass::Nonnegative);
    CHECK(classify_sign(sample([](double x) { return std::min(0.0, std::sin(2 * M_PI * x)); })) ==
          SignClass::Nonpositive);
}

TEST_CASE("dips below the scale tolerance never count as sign changes") {
    Grid1D g(19);
    GridFunction u = GridFunction::sample(g, [](double x) { return std::sin(M_PI * x); });
    u[9] = -1e-13;  // far below the default relative tolerance times sup|u|
    CHECK(classify_sign(u) == SignClass::Nonnegative);
    u[9] = -0.2;
    CHECK(classify_sign(u) == SignClass::SignChanging);
}

TEST_CASE("sup norm and sup distance") {
    Grid1D g(9);
    GridFunction u = GridFunction::sample(g, [](double x) { return x - 0.5; });
    CHECK(sup_norm(u) == doctest::Approx(0.4).epsilon(1e-14));
    GridFunction v = u;
    v[0] += 0.25;
    CHECK(sup_dist(u, v) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sup_dist(u, u) == 0.0);
}

TEST_CASE("discrete Poisson solve is exact for quadratic data") {
    Grid1D g(99);
    std::vector<double> rhs(static_cast<size_t>(g.n()), 1.0);
    std::vector<double> u = solve_dirichlet_poisson(rhs, g.h());
    REQUIRE(static_cast<int>(u.size()) == g.n());
    // -u'' = 1 with zero boundary: u(x) = x(1-x)/2, exact for the 3-point stencil
    for (int i = 0; i < g.n(); ++i) {
        double x = g.x(i);
        CHECK(u[static_cast<size_t>(i)] == doctest::Approx(0.5 * x * (1 - x)).epsilon(1e-12));
    }
}

TEST_CASE("weighted tridiagonal solve reduces to Poisson at unit weights") {
    Grid1D g(49);
    std::vector<double> rhs(static_cast<size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) rhs[static_cast<size_t>(i)] = std::cos(3.0 * g.x(i));
    std::vector<double> w(static_cast<size_t>(g.n() + 1), 1.0);
    std::vector<double> a = solve_dirichlet_poisson(rhs, g.h());
    std::vector<double> b = solve_dirichlet_weighted(w, rhs, g.h());
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}
