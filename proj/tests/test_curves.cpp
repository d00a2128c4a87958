#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqlab/curves.hpp"
#include "pqlab/eigen.hpp"
#include "pqlab/functionals.hpp"
#include "pqlab/grid.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace pqlab;

namespace {

GridFunction const_one(Grid1D g) {
    return GridFunction::sample(g, [](double) { return 1.0; });
}

}  // namespace

TEST_CASE("threshold constants hit their closed forms and strict orderings") {
    Grid1D g(999);
    double as = alpha_star(3.0, 2.0, g);
    double bs = beta_star(3.0, 2.0, g);

    // alpha_* = pi^3 for (p,q) = (3,2): the quotient of sine powers collapses
    CHECK(std::fabs(as - M_PI * M_PI * M_PI) / (M_PI * M_PI * M_PI) <= 5e-3);
    CHECK(as == doctest::Approx(31.0062384278).epsilon(1e-6));
    CHECK(bs == doctest::Approx(10.3324578572).epsilon(1e-6));

    EigenPair e3 = first_eigenpair(3.0, g);
    EigenPair e2 = first_eigenpair(2.0, g);
    CHECK(as > e3.lambda);       // strict: the q-eigenfunction is not p-optimal
    CHECK(bs > e2.lambda);
    CHECK_THROWS_AS(alpha_star(2.0, 2.0, g), DomainError);
    CHECK_THROWS_AS(beta_star(2.0, 3.0, g), DomainError);
}

TEST_CASE("eigenspace quotients collapse to a single value per mode") {
    Grid1D g(999);
    auto [under, over] = beta_under_over(3.0, 2.0, g, 1);
    CHECK(under == over);  // one-dimensional eigenspaces
    // the quotient is evaluated on the sampled closed-form profile while
    // beta_star uses the iteratively computed eigenvector; the two
    // discretizations agree only up to their own truncation error
    CHECK(under == doctest::Approx(beta_star(3.0, 2.0, g)).epsilon(1e-4));

    // the second mode is the first one squeezed to half width, so its
    // q-quotient picks up the dilation factor 2^q
    auto [u2, o2] = beta_under_over(3.0, 2.0, g, 2);
    CHECK(u2 == o2);
    CHECK(u2 == doctest::Approx(4.0 * under).epsilon(1e-3));
}

TEST_CASE("lower curve collapses onto the first q-eigenvalue past the threshold") {
    Grid1D g(499);
    GridFunction f = const_one(g);
    double as = alpha_star(3.0, 2.0, g);
    EigenPair e2 = first_eigenpair(2.0, g);

    CurvePoint at = beta_f(as, 3.0, 2.0, g, f);
    CHECK(at.kind == BoundKind::Upper);
    CHECK(at.value == doctest::Approx(e2.lambda).epsilon(1e-6));
    // the certificate is feasible and reproduces the reported value
    CHECK(in_B_plus(at.certificate, 3.0, as));
    CHECK(phi_plus(at.certificate, 3.0, 2.0, as, f) ==
          doctest::Approx(at.value).epsilon(1e-9));

    CurvePoint beyond = beta_f(as + 3.0, 3.0, 2.0, g, f);
    CHECK(std::fabs(beyond.value - e2.lambda) / e2.lambda <= 1e-2);
}

TEST_CASE("the collapse band past the threshold is grid-converged") {
    // Past the threshold the infimum is approached only through spike
    // concentration: the q-cost of restoring the p-constraint in one cell
    // decays like h^(1/3), far too slowly for any practical grid, and
    // gradient multistarts settle on the smooth constrained branch instead.
    // That branch is grid-independent, so the deviation from the first
    // q-eigenvalue at a fixed distance past the threshold is a property of
    // the method, not of the resolution: refining the grid reproduces the
    // same values, inside the 1% band near the threshold and outside it
    // farther away.
    Grid1D g5(499), g9(999);
    GridFunction f5 = const_one(g5), f9 = const_one(g9);
    double as5 = alpha_star(3.0, 2.0, g5);
    double as9 = alpha_star(3.0, 2.0, g9);
    EigenPair e2 = first_eigenpair(2.0, g9);

    CurvePoint near5 = beta_f(as5 + 2.0, 3.0, 2.0, g5, f5);
    CurvePoint near9 = beta_f(as9 + 2.0, 3.0, 2.0, g9, f9);
    CHECK(near5.value == doctest::Approx(near9.value).epsilon(1e-4));
    CHECK(std::fabs(near9.value - e2.lambda) / e2.lambda <= 1e-2);

    CurvePoint far5 = beta_f(as5 + 5.0, 3.0, 2.0, g5, f5);
    CurvePoint far9 = beta_f(as9 + 5.0, 3.0, 2.0, g9, f9);
    CHECK(far5.value == doctest::Approx(far9.value).epsilon(1e-4));
    CHECK(far9.value > e2.lambda * 1.01);
}

TEST_CASE("lower curve with zero source is the plain Rayleigh reduction") {
    Grid1D g(199);
    GridFunction zero(g);
    EigenPair e2 = first_eigenpair(2.0, g);
    CurvePoint cp = beta_f(0.0, 3.0, 2.0, g, zero);
    CHECK(cp.value == doctest::Approx(e2.lambda).epsilon(1e-9));
}

TEST_CASE("lower curve pinned values on the unit source") {
    Grid1D g(999);
    GridFunction f = const_one(g);
    CurvePoint at0 = beta_f(0.0, 3.0, 2.0, g, f);
    CHECK(at0.value == doctest::Approx(21.22806737).epsilon(1e-4));

    // strictly above the first q-eigenvalue below the threshold
    EigenPair e2 = first_eigenpair(2.0, g);
    CHECK(at0.value > e2.lambda + 0.5);

    // at the first p-eigenvalue the value dips under the q-quotient constant
    EigenPair e3 = first_eigenpair(3.0, g);
    CurvePoint atl = beta_f(e3.lambda, 3.0, 2.0, g, f);
    CHECK(atl.value <= beta_star(3.0, 2.0, g) + 1e-3);
}

TEST_CASE("lower curve is nonincreasing along an ascending alpha grid") {
    Grid1D g(499);
    GridFunction f = const_one(g);
    std::vector<double> alphas;
    double as = alpha_star(3.0, 2.0, g);
    for (int i = 0; i < 8; ++i) alphas.push_back(-20.0 + (as + 20.0) * i / 7.0);
    auto curve = beta_f_curve(alphas, 3.0, 2.0, g, f);
    REQUIRE(curve.size() == alphas.size());
    for (size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].value <= curve[i - 1].value + 1e-3);
    for (const auto& cp : curve)
        CHECK(phi_plus(cp.certificate, 3.0, 2.0, cp.alpha, f) ==
              doctest::Approx(cp.value).epsilon(1e-9));
}

TEST_CASE("lower curve grows without bound toward strongly negative alpha") {
    Grid1D g(999);
    GridFunction f = const_one(g);
    double near = beta_f(0.0, 3.0, 2.0, g, f).value;
    double far = beta_f(-1e5, 3.0, 2.0, g, f).value;
    CHECK(far > 10.0 * near);
    CHECK(far == doctest::Approx(656.49047467).epsilon(1e-3));
}

TEST_CASE("a source vanishing on a subinterval caps the lower curve uniformly") {
    // with f supported in (0.1, 0.45), any bump living in the source-free half
    // is admissible with zero source pairing, so its q-quotient bounds the
    // curve at every alpha below that bump's p-quotient
    Grid1D g(399);
    GridFunction f = GridFunction::sample(g, [](double x) {
        double t = (x - 0.275) / 0.175;
        return std::fabs(t) < 1.0 ? 1.0 + std::cos(M_PI * t) : 0.0;
    });
    GridFunction psi = GridFunction::sample(g, [](double x) {
        return x > 0.5 ? std::sin(2 * M_PI * (x - 0.5)) : 0.0;
    });
    CHECK(pairing(f, psi) == 0.0);
    double cap = rayleigh(psi, 2.0);

    CurveOptions opts;
    opts.extra_starts.push_back(psi);
    EigenPair e3 = first_eigenpair(3.0, g);
    for (double alpha : {-50.0, 0.0, e3.lambda}) {
        CurvePoint cp = beta_f(alpha, 3.0, 2.0, g, f, opts);
        CHECK(cp.value <= cap + 1e-9);
    }
}

TEST_CASE("upper curve starts at the q-quotient constant on the first eigenvalue") {
    Grid1D g(999);
    GridFunction f = const_one(g);
    EigenPair e3 = first_eigenpair(3.0, g);
    double bs = beta_star(3.0, 2.0, g);

    CurvePoint cp = beta_sup_f(e3.lambda, 3.0, 2.0, g, f);
    CHECK(cp.kind == BoundKind::Lower);
    CHECK(std::fabs(cp.value - bs) / bs <= 1e-2);
    CHECK(cp.value == doctest::Approx(10.33245793).epsilon(1e-4));
    CHECK(in_B_minus(cp.certificate, 3.0, e3.lambda));
    CHECK(phi_minus(cp.certificate, 3.0, 2.0, e3.lambda, f) ==
          doctest::Approx(cp.value).epsilon(1e-9));
    CHECK(std::isfinite(cp.value));
}

TEST_CASE("upper curve is infeasible below the first eigenvalue and nondecreasing above") {
    Grid1D g(499);
    GridFunction f = const_one(g);
    EigenPair e3 = first_eigenpair(3.0, g);
    CHECK_THROWS_AS(beta_sup_f(e3.lambda - 1.0, 3.0, 2.0, g, f), DomainError);

    std::vector<double> alphas{e3.lambda, 29.5, 31.0, 33.0, 35.0};
    auto curve = beta_sup_f_curve(alphas, 3.0, 2.0, g, f);
    REQUIRE(curve.size() == alphas.size());
    for (size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].value >= curve[i - 1].value - 1e-3);
    for (const auto& cp : curve) CHECK(std::isfinite(cp.value));
}

TEST_CASE("squeezing a certificate bump inflates the upper-curve value") {
    Grid1D g(799);
    GridFunction f = const_one(g);
    double p = 3.0, q = 2.0;
    double values[2];
    int idx = 0;
    for (double d : {1.0, 8.0}) {
        GridFunction u = GridFunction::sample(g, [d](double x) {
            return x < 1.0 / d ? std::sin(M_PI * d * x) : 0.0;
        });
        double alpha = rayleigh(u, p) + 1e-9;  // membership boundary
        REQUIRE(in_B_minus(u, p, alpha));
        values[idx++] = phi_minus(u, p, q, alpha, f);
    }
    // the q-quotient of the squeezed bump scales like d^q = 64; half of that
    // is a comfortable floor for the discrete ratio
    CHECK(values[1] / values[0] >= 32.0);
}

TEST_CASE("supersolution threshold bounds report what the certificates prove") {
    // The inner infimum over nonnegative test functions degenerates toward the
    // boundary for p > q (the density ratio vanishes like x^(p-q)), so the
    // certified lower bound is honest but small; the sharp information lives
    // in the eigenvalue-anchored upper bound past alpha_*.
    Grid1D g(499);
    double as = alpha_star(3.0, 2.0, g);
    EigenPair e3 = first_eigenpair(3.0, g);
    EigenPair e2 = first_eigenpair(2.0, g);
    std::vector<GridFunction> cands{e3.phi, e2.phi};

    PsBounds at_star = beta_ps_bounds(as + 1.0, 3.0, 2.0, g, cands);
    CHECK(at_star.upper.value == doctest::Approx(e2.lambda).epsilon(1e-9));
    CHECK(at_star.upper.kind == BoundKind::Upper);
    CHECK(std::isfinite(at_star.lower.value));
    CHECK(at_star.lower.value <= at_star.upper.value + 1e-6);

    PsBounds at_l1 = beta_ps_bounds(e3.lambda, 3.0, 2.0, g, cands);
    CHECK(std::isfinite(at_l1.lower.value));
    CHECK(at_l1.lower.kind == BoundKind::Lower);
    CHECK(std::isinf(at_l1.upper.value));  // no certified ceiling below alpha_*

    Grid1D other(199);
    std::vector<GridFunction> wrong{GridFunction(other)};
    CHECK_THROWS_AS(beta_ps_bounds(e3.lambda, 3.0, 2.0, g, wrong), DomainError);
}

TEST_CASE("hat minimum is the infimum of the ratio over the whole test cone") {
    // the ratio functional is a quotient of linear functionals of the test
    // argument, so its minimum over nonnegative tests is attained on the
    // extreme rays: the nodal hats
    Grid1D g(199);
    EigenPair e3 = first_eigenpair(3.0, g);
    Params prm{3.0, 2.0, e3.lambda, 0.0};
    std::vector<GridFunction> cands{e3.phi};
    PsBounds bounds = beta_ps_bounds(e3.lambda, 3.0, 2.0, g, cands);

    std::mt19937_64 rng(5150ULL);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction test(g);
        for (int i = 0; i < g.n(); ++i) test[i] = val(rng);
        double L = extended_functional(e3.phi, test, prm);
        CHECK(L >= bounds.lower.value - 1e-9 * std::max(1.0, std::fabs(L)));
    }
}

TEST_CASE("curve evaluation is deterministic for a fixed seed") {
    Grid1D g(199);
    GridFunction f = const_one(g);
    CurvePoint a = beta_f(5.0, 3.0, 2.0, g, f);
    CurvePoint b = beta_f(5.0, 3.0, 2.0, g, f);
    CHECK(a.value == b.value);
    CHECK(sup_dist(a.certificate, b.certificate) == 0.0);
}

TEST_CASE("region labels reproduce the known phase-plane picture") {
    Grid1D g(249);
    GridFunction f = const_one(g);
    std::vector<double> alphas;
    for (int i = 0; i < 10; ++i) alphas.push_back(-5.0 + 45.0 * i / 9.0);
    CurvesContext ctx = build_context(3.0, 2.0, g, f, alphas);

    // coercive corner: every solution is positive
    CHECK(classify_region(ctx.lambda1_p - 1.0, ctx.lambda1_q - 1.0, ctx) ==
          Region::AllPositive);
    // past both thresholds: no nonnegative solutions
    CHECK(classify_region(ctx.a_star + 1.0, ctx.lambda1_q + 1.0, ctx) ==
          Region::NoNonnegative);
    // below the first eigenvalue existence never fails, whatever beta is
    for (double beta : {-50.0, 0.0, 25.0, 1e4})
        CHECK(classify_region(ctx.lambda1_p - 1.0, beta, ctx) !=
              Region::ExistenceUnknown);
    // on the spectrum with beta in the eigenspace window the machinery fails
    CHECK(classify_region(ctx.sigma_p.at(0), ctx.beta_window.at(0), ctx) ==
          Region::ExistenceUnknown);
    // barely off the spectrum the sliver closes again
    CHECK(classify_region(ctx.sigma_p.at(0) * 1.001, ctx.beta_window.at(0), ctx) !=
          Region::ExistenceUnknown);
    // large alpha, moderate beta, away from the curves: a solution exists but
    // its sign is not pinned
    CHECK(classify_region(35.0, 5.0, ctx) == Region::ExistsUnclassified);
}

TEST_CASE("context curve reads are conservative against their sample brackets") {
    Grid1D g(249);
    GridFunction f = const_one(g);
    std::vector<double> alphas{-10.0, 0.0, 10.0, 20.0, 30.0, 40.0};
    CurvesContext ctx = build_context(3.0, 2.0, g, f, alphas);
    REQUIRE(ctx.beta_f_samples.size() == alphas.size());
    for (size_t i = 1; i < alphas.size(); ++i) {
        double mid = 0.5 * (alphas[i - 1] + alphas[i]);
        double read = ctx.beta_f_at(mid);
        CHECK(read <= std::max(ctx.beta_f_samples[i - 1].value,
                               ctx.beta_f_samples[i].value) + 1e-12);
        CHECK(read >= std::min(ctx.beta_f_samples[i - 1].value,
                               ctx.beta_f_samples[i].value) - 1e-12);
    }
}
