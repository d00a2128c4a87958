#include "pqlab/eigen.hpp"
#include "pqlab/functionals.hpp"
#include "pqlab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pqlab {

double pi_r(double r) {
    if (!(r > 1.0)) throw DomainError("pi_r: need r > 1");
    return 2.0 * M_PI / (r * std::sin(M_PI / r));
}

double analytic_lambda_k(double r, int k) {
    if (!(r > 1.0)) throw DomainError("analytic_lambda_k: need r > 1");
    if (k < 1) throw DomainError("analytic_lambda_k: need k >= 1");
    return (r - 1.0) * std::pow(k * pi_r(r), r);
}

namespace {

// One RK4 step of the profile system u' = sgn(w)|w|^{1/(r-1)},
// w' = -(r-1)|u|^{r-2}u (flux variable w keeps the step well defined
// across the peak where u' vanishes).
struct ProfileStepper {
    double r;
    double fu(double w) const { return signed_pow(w, 1.0 / (r - 1.0)); }
    double fw(double u) const { return -(r - 1.0) * signed_pow(u, r - 1.0); }
    void step(double& u, double& w, double h) const {
        const double k1u = fu(w), k1w = fw(u);
        const double k2u = fu(w + 0.5 * h * k1w), k2w = fw(u + 0.5 * h * k1u);
        const double k3u = fu(w + 0.5 * h * k2w), k3w = fw(u + 0.5 * h * k2u);
        const double k4u = fu(w + h * k3w), k4w = fw(u + h * k3u);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    }
};

}  // namespace

double sine_profile_first_zero(double r, double step) {
    if (!(r > 1.0)) throw DomainError("sine_profile_first_zero: need r > 1");
    if (!(step > 0.0)) throw DomainError("sine_profile_first_zero: need step > 0");
    const ProfileStepper ps{r};
    double u = 0.0, w = 1.0, x = 0.0;
    double up = 0.0, wp = 1.0, xp = 0.0;
    const double x_cap = 100.0;
    bool found = false;
    while (x < x_cap) {
        up = u;
        wp = w;
        xp = x;
        ps.step(u, w, step);
        x += step;
        if (x > 10.0 * step && up > 0.0 && u <= 0.0) {
            found = true;
            break;
        }
    }
    if (!found) throw SolverError("sine_profile_first_zero: no crossing before x = 100");
    // bisect on the partial-step length from the last pre-crossing state
    double lo = 0.0, hi = step;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        double uu = up, ww = wp;
        for (int s = 0; s < 4; ++s) ps.step(uu, ww, mid / 4.0);
        (uu > 0.0 ? lo : hi) = mid;
    }
    return xp + 0.5 * (lo + hi);
}

EigenPair analytic_eigenfunction(double r, int k, Grid1D grid) {
    if (!(r > 1.0)) throw DomainError("analytic_eigenfunction: need r > 1");
    if (k < 1) throw DomainError("analytic_eigenfunction: need k >= 1");
    const double pr = pi_r(r);
    const double quarter = 0.5 * pr;

    // fold every node argument k*pr*x into the rising quarter [0, quarter]
    struct Query {
        double t;
        int node;
        double sign;
    };
    std::vector<Query> queries;
    queries.reserve(static_cast<size_t>(grid.n()));
    for (int i = 0; i < grid.n(); ++i) {
        double a = k * pr * grid.x(i);
        const double m = std::floor(a / pr);
        double rho = a - m * pr;
        double sign = (static_cast<long long>(m) % 2 == 0) ? 1.0 : -1.0;
        if (rho > quarter) rho = pr - rho;
        if (rho < 0.0) rho = 0.0;
        queries.push_back({rho, i, sign});
    }
    std::sort(queries.begin(), queries.end(), [](const Query& a, const Query& b) { return a.t < b.t; });

    // single march with exact landing on each query point
    const ProfileStepper ps{r};
    const double hstep = 1e-5;
    GridFunction phi(grid);
    double u = 0.0, w = 1.0, t = 0.0;
    size_t qi = 0;
    while (qi < queries.size() && queries[qi].t <= 0.0) {
        phi[queries[qi].node] = 0.0;
        ++qi;
    }
    while (qi < queries.size()) {
        const double target = queries[qi].t;
        if (target <= t + hstep) {
            double uu = u, ww = w;
            const double dt = target - t;
            if (dt > 0.0) ps.step(uu, ww, dt);
            while (qi < queries.size() && queries[qi].t == target) {
                phi[queries[qi].node] = queries[qi].sign * uu;
                ++qi;
            }
            // keep marching from the landed state to avoid re-integrating
            u = uu;
            w = ww;
            t = target;
        } else {
            ps.step(u, w, hstep);
            t += hstep;
        }
    }
    const double nr = norm(phi, r);
    if (nr > 0.0)
        for (double& v : phi.values) v /= nr;
    EigenPair pair{analytic_lambda_k(r, k), phi, r, k, 0, 0.0};
    pair.residual = eigen_residual(pair, grid);
    return pair;
}

namespace {

// Euclidean gradient of the Rayleigh quotient N/D at u, N = |u'|_r^r,
// D = |u|_r^r (homogeneity makes it tangent to the ray through u).
void quotient_gradient(const GridFunction& u, double r, double R, double D,
                       std::vector<double>& out) {
    const int n = u.n();
    const double h = u.h();
    std::vector<double> g = gradient(u);
    out.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double dn = r * (signed_pow(g[static_cast<size_t>(i)], r - 1.0) -
                               signed_pow(g[static_cast<size_t>(i) + 1], r - 1.0));
        const double dd = r * h * signed_pow(u[i], r - 1.0);
        out[static_cast<size_t>(i)] = (dn - R * dd) / D;
    }
}

}  // namespace

EigenPair first_eigenpair(double r, Grid1D grid, const EigenOptions& opts) {
    if (!(r > 1.0)) throw DomainError("first_eigenpair: need r > 1");
    GridFunction u = opts.init ? *opts.init
                               : GridFunction::sample(grid, [](double x) { return x * (1.0 - x); });
    {
        const double nr = norm(u, r);
        if (!(nr > 0.0)) throw DomainError("first_eigenpair: zero initial function");
        for (double& v : u.values) v /= nr;
    }
    const double h = grid.h();
    double R = rayleigh(u, r);
    double tau = 1.0;
    std::vector<double> grad;
    int it = 0;
    auto grad_sup = [&]() {
        double m = 0.0;
        for (double v : grad) m = std::max(m, std::fabs(v));
        return m;
    };
    const double target = r * h * opts.tol;  // grad_i = r*h*(density)_i

    // Phase 1: Armijo-globalized quotient descent.  Progress is measured on
    // the quotient, which flattens to roundoff while the gradient is still
    // around sqrt(eps), so this phase ends converged, stalled, or making
    // noise-level steps near the minimizer.
    bool converged = false;
    int noise_steps = 0;
    for (; it < opts.max_iters; ++it) {
        quotient_gradient(u, r, R, 1.0, grad);  // D = 1 by normalization
        if (grad_sup() <= target) {
            converged = true;
            break;
        }
        std::vector<double> dir = solve_dirichlet_poisson(grad, h);
        double m = std::inner_product(grad.begin(), grad.end(), dir.begin(), 0.0);
        if (!(m > 0.0)) {
            dir = grad;
            m = std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0);
        }
        bool accepted = false;
        double Rn = R;
        double t = tau;
        GridFunction trial(grid);
        for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
            for (int i = 0; i < grid.n(); ++i) trial[i] = u[i] - t * dir[static_cast<size_t>(i)];
            const double nr = norm(trial, r);
            if (nr > 1e-10) {
                for (double& v : trial.values) v /= nr;
                Rn = rayleigh(trial, r);
                if (Rn <= R - 1e-4 * t * m) {
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) break;  // quotient decrease below roundoff; tau keeps its scale
        const double drop = R - Rn;
        u = trial;
        R = Rn;
        tau = std::min(t * 1.5, 1e6);
        if (drop <= 1e-13 * std::max(1.0, std::fabs(R))) {
            if (++noise_steps >= 5) break;  // attainable decrease is roundoff
        } else {
            noise_steps = 0;
        }
    }

    // Phase 2: fixed-step preconditioned polish.  Near the minimizer the
    // update is a contraction on the iterate itself, so it pushes the
    // gradient to roundoff level where line searches cannot certify
    // progress any more.  Track the best iterate seen.
    if (!converged) {
        // The line search calibrates the local scale, but noise-level
        // acceptances can collapse it; restore at least the preconditioned
        // step's natural order before polishing.
        double step = std::max(tau, 0.25 / h);
        quotient_gradient(u, r, R, 1.0, grad);
        GridFunction best_u = u;
        double best_R = R, best_g = grad_sup();
        int since_improve = 0, streak = 0;
        for (int polish = 0; polish < opts.max_iters; ++polish) {
            ++it;
            if (grad_sup() <= target) {
                converged = true;
                break;
            }
            std::vector<double> dir = solve_dirichlet_poisson(grad, h);
            for (int i = 0; i < grid.n(); ++i) u[i] -= step * dir[static_cast<size_t>(i)];
            const double nr = norm(u, r);
            if (!(nr > 1e-10)) {
                u = best_u;
                break;
            }
            for (double& v : u.values) v /= nr;
            R = rayleigh(u, r);
            quotient_gradient(u, r, R, 1.0, grad);
            const double g = grad_sup();
            if (g < best_g) {
                best_g = g;
                best_u = u;
                best_R = R;
                since_improve = 0;
                if (++streak >= 20) {  // steady contraction: be bolder
                    step = std::min(step * 1.25, 1e6);
                    streak = 0;
                }
            } else {
                streak = 0;
                if (++since_improve >= 25) {
                    // diverging or cycling at this step size; restart smaller
                    u = best_u;
                    R = best_R;
                    quotient_gradient(u, r, R, 1.0, grad);
                    step *= 0.5;
                    since_improve = 0;
                    if (step < 1e-8) break;
                }
            }
        }
        if (!converged) {
            u = best_u;
            R = best_R;
            if (best_g > 100.0 * target)
                throw SolverError("first_eigenpair: did not reach the residual target");
        }
    }
    if (integrate(u) < 0.0)
        for (double& v : u.values) v = -v;
    EigenPair pair{R, u, r, 1, it + 1, 0.0, converged};
    pair.residual = eigen_residual(pair, grid);
    return pair;
}

double eigen_residual(const EigenPair& pair, const Grid1D& grid) {
    if (grid.n() != pair.phi.n())
        throw DomainError("eigen_residual: pair and grid sizes disagree");
    const GridFunction& u = pair.phi;
    const double r = pair.r;
    const double h = u.h();
    std::vector<double> g = gradient(u);
    double worst = 0.0;
    for (int i = 0; i < u.n(); ++i) {
        const double div = (signed_pow(g[static_cast<size_t>(i)], r - 1.0) -
                            signed_pow(g[static_cast<size_t>(i) + 1], r - 1.0)) / h;
        const double res = div - pair.lambda * signed_pow(u[i], r - 1.0);
        worst = std::max(worst, std::fabs(res));
    }
    return worst;
}

}  // namespace pqlab
