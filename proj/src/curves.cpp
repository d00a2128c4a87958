#include "pqlab/curves.hpp"
#include "pqlab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

namespace pqlab {

const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::Lower: return "Lower";
        case BoundKind::Upper: return "Upper";
        case BoundKind::Exact: return "Exact";
    }
    return "?";
}

const char* to_string(Region r) {
    switch (r) {
        case Region::AllPositive: return "AllPositive";
        case Region::NoNonnegative: return "NoNonnegative";
        case Region::ExistenceUnknown: return "ExistenceUnknown";
        case Region::ExistsUnclassified: return "ExistsUnclassified";
    }
    return "?";
}

double alpha_star(double p, double q, Grid1D grid) {
    if (!(p > q && q > 1.0)) throw DomainError("alpha_star: need p > q > 1");
    EigenPair eq = first_eigenpair(q, grid);
    return seminorm_pow(eq.phi, p) / norm_pow(eq.phi, p);
}

double beta_star(double p, double q, Grid1D grid) {
    if (!(p > q && q > 1.0)) throw DomainError("beta_star: need p > q > 1");
    EigenPair ep = first_eigenpair(p, grid);
    return seminorm_pow(ep.phi, q) / norm_pow(ep.phi, q);
}

std::pair<double, double> beta_under_over(double p, double q, Grid1D grid, int k) {
    if (!(p > q && q > 1.0)) throw DomainError("beta_under_over: need p > q > 1");
    EigenPair mode = analytic_eigenfunction(p, k, grid);
    const double v = rayleigh(mode.phi, q);
    return {v, v};
}

// ---------------------------------------------------------------------------
// shared optimizer machinery for the two critical-curve bounds
// ---------------------------------------------------------------------------

namespace {

struct Sums {
    double Np, Dp, Nq, Dq, F, H;
};

Sums compute_sums(const GridFunction& u, double p, double q, double alpha,
                  const GridFunction& f) {
    Sums s;
    s.Np = seminorm_pow(u, p);
    s.Dp = norm_pow(u, p);
    s.Nq = seminorm_pow(u, q);
    s.Dq = norm_pow(u, q);
    s.F = pairing(f, u);
    s.H = s.Np - alpha * s.Dp;
    return s;
}

// evaluation wrappers: an infeasible candidate (sign, membership, or pairing
// violation) is simply not offered to the accumulator
std::optional<double> try_phi_plus(const GridFunction& u, double p, double q, double alpha,
                                   const GridFunction& f) {
    try {
        return phi_plus(u, p, q, alpha, f);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

std::optional<double> try_phi_minus(const GridFunction& u, double p, double q, double alpha,
                                    const GridFunction& f) {
    try {
        return phi_minus(u, p, q, alpha, f);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// change of h_alpha when a single-node tent of height a is added at node j;
// O(1) given the current slopes and node value
double h_alpha_spike_delta(double gl, double gr, double uj, double h, double p, double alpha,
                           double a) {
    const double t1 = std::pow(std::fabs(gl + a / h), p) - std::pow(std::fabs(gl), p);
    const double t2 = std::pow(std::fabs(gr - a / h), p) - std::pow(std::fabs(gr), p);
    const double t3 = std::pow(std::fabs(uj + a), p) - std::pow(std::fabs(uj), p);
    return h * (t1 + t2) - alpha * h * t3;
}

// Repairs H >= 0 by adding a one-node spike; tries a few locations and keeps
// the variant with the smallest Phi^+ value.  Nonnegative inputs stay
// nonnegative (a >= 0).  Returns nothing when u clips to zero.
std::optional<GridFunction> repair_H_up(const GridFunction& u_in, double p, double q, double alpha,
                                        const GridFunction& f) {
    GridFunction u = u_in;
    for (double& v : u.values) v = std::max(v, 0.0);
    if (sup_norm(u) == 0.0) return std::nullopt;
    const double H = h_alpha(u, p, alpha);
    const double tol = membership_tol(u, p);
    if (H >= -tol) return u;
    const int n = u.n();
    const double h = u.h();
    std::vector<double> g = gradient(u);
    const std::vector<int> nodes = {n / 8, n / 4, n / 2, (3 * n) / 4, (7 * n) / 8};
    std::optional<GridFunction> best;
    double best_val = std::numeric_limits<double>::infinity();
    for (int j : nodes) {
        if (j < 0 || j >= n) continue;
        const double gl = g[static_cast<size_t>(j)], gr = g[static_cast<size_t>(j) + 1];
        auto Hof = [&](double a) { return H + h_alpha_spike_delta(gl, gr, u[j], h, p, alpha, a); };
        double ahi = std::max(1.0, sup_norm(u));
        int guard = 0;
        while (Hof(ahi) < 0.0 && guard++ < 200) ahi *= 2.0;
        if (Hof(ahi) < 0.0) continue;
        double alo = 0.0;
        for (int it = 0; it < 100; ++it) {
            const double am = 0.5 * (alo + ahi);
            (Hof(am) < 0.0 ? alo : ahi) = am;
        }
        GridFunction cand = u;
        cand[j] += ahi;  // upper end: H(cand) >= 0 guaranteed
        if (auto val = try_phi_plus(cand, p, q, alpha, f); val && *val < best_val) {
            best_val = *val;
            best = std::move(cand);
        }
    }
    return best;
}

// Repairs H <= 0 by blending toward the first p-eigenfunction (feasible for
// alpha at or above the discrete first p-eigenvalue).
std::optional<GridFunction> repair_H_down(const GridFunction& u_in, double p, double alpha,
                                          const GridFunction& phi_p) {
    GridFunction u = u_in;
    for (double& v : u.values) v = std::max(v, 0.0);
    if (sup_norm(u) == 0.0) return std::nullopt;
    {
        const double nq = sup_norm(u);
        for (double& v : u.values) v /= nq;  // scale-free blend
    }
    if (h_alpha(u, p, alpha) <= membership_tol(u, p)) return u;
    if (h_alpha(phi_p, p, alpha) > membership_tol(phi_p, p)) return std::nullopt;
    double tlo = 0.0, thi = 1.0;
    GridFunction blend(u.grid);
    for (int it = 0; it < 100; ++it) {
        const double t = 0.5 * (tlo + thi);
        for (int i = 0; i < u.n(); ++i) blend[i] = (1.0 - t) * u[i] + t * phi_p[i];
        (h_alpha(blend, p, alpha) > 0.0 ? tlo : thi) = t;
    }
    for (int i = 0; i < u.n(); ++i) blend[i] = (1.0 - thi) * u[i] + thi * phi_p[i];
    if (h_alpha(blend, p, alpha) > membership_tol(blend, p)) return std::nullopt;
    return blend;
}

struct PhiObjective {
    double p, q, alpha;
    const GridFunction& f;
    bool maximize;   // false: Phi^+ descent, true: Phi^- ascent (minimize the negative)
    double mu;       // exterior penalty weight on the violated side of H = 0

    double coeff() const { return tangency_coefficient(p, q); }
    double e1() const { return (q - 1.0) / (p - 1.0); }
    double e2() const { return (p - q) / (p - 1.0); }

    // smooth one-sided part of H with a tiny relative softening
    static double smooth_pos(double x, double eps) { return 0.5 * (x + std::sqrt(x * x + eps * eps)); }

    double value(const GridFunction& u) const {
        const Sums s = compute_sums(u, p, q, alpha, f);
        const double sH = s.Np + std::fabs(alpha) * s.Dp + 1e-300;
        const double eps = 1e-12 * sH;
        const double F = std::max(s.F, 0.0);
        const double R = s.Nq / s.Dq;
        if (!maximize) {
            const double Hs = smooth_pos(s.H, eps);
            const double viol = std::max(-s.H, 0.0) / sH;
            return R + coeff() * std::pow(Hs, e1()) * std::pow(F, e2()) / s.Dq + mu * viol * viol;
        }
        const double Ms = smooth_pos(-s.H, eps);
        const double viol = std::max(s.H, 0.0) / sH;
        return -R + coeff() * std::pow(Ms, e1()) * std::pow(F, e2()) / s.Dq + mu * viol * viol;
    }

    void gradient(const GridFunction& u, std::vector<double>& out) const {
        const int n = u.n();
        const double h = u.h();
        const Sums s = compute_sums(u, p, q, alpha, f);
        const double sH = s.Np + std::fabs(alpha) * s.Dp + 1e-300;
        const double eps = 1e-12 * sH;
        const double F = std::max(s.F, 0.0);
        const double R = s.Nq / s.Dq;
        std::vector<double> g = pqlab::gradient(u);
        out.assign(static_cast<size_t>(n), 0.0);

        const double sgn = maximize ? -1.0 : 1.0;           // R-term sign
        const double Hdir = maximize ? -1.0 : 1.0;          // argument of smooth_pos
        const double X = smooth_pos(Hdir * s.H, eps);
        const double dXdH = 0.5 * (1.0 + Hdir * s.H / std::sqrt(s.H * s.H + eps * eps)) * Hdir;
        const double c = coeff();
        const double Fp = (F > 1e-300) ? std::pow(F, e2()) : 0.0;
        const double corr = c * std::pow(X, e1()) * Fp / s.Dq;
        // d(corr)/dH and d(corr)/dF prefactors, guarded against 0^negative
        const double dcorr_dH = (X > 0.0) ? c * e1() * std::pow(X, e1() - 1.0) * dXdH * Fp / s.Dq : 0.0;
        const double dcorr_dF =
            (F > 1e-300) ? c * std::pow(X, e1()) * e2() * std::pow(F, e2() - 1.0) / s.Dq : 0.0;
        const double viol = std::max((maximize ? s.H : -s.H), 0.0);
        const double dpen_dH = (viol > 0.0) ? (maximize ? 1.0 : -1.0) * 2.0 * mu * viol / (sH * sH) : 0.0;

        for (int i = 0; i < n; ++i) {
            const size_t j = static_cast<size_t>(i);
            const double dNp = p * (signed_pow(g[j], p - 1.0) - signed_pow(g[j + 1], p - 1.0));
            const double dDp = p * h * signed_pow(u[i], p - 1.0);
            const double dNq = q * (signed_pow(g[j], q - 1.0) - signed_pow(g[j + 1], q - 1.0));
            const double dDq = q * h * signed_pow(u[i], q - 1.0);
            const double dF = h * f[i];
            const double dH = dNp - alpha * dDp;
            double v = sgn * (dNq - R * dDq) / s.Dq;           // Rayleigh part
            v += dcorr_dH * dH + dcorr_dF * dF - corr * dDq / s.Dq;
            v += dpen_dH * dH;
            out[j] = v;
        }
    }
};

// Projected preconditioned descent on the penalized objective; the iterate
// stays nonnegative and q-normalized.
void penalty_descent(GridFunction& u, const PhiObjective& base, const CurveOptions& opts) {
    const double h = u.grid.h();
    PhiObjective obj = base;
    for (int i = 0; i < u.n(); ++i) u[i] = std::max(u[i], 0.0);
    {
        const double nq = norm(u, obj.q);
        if (!(nq > 0.0)) return;
        for (double& v : u.values) v /= nq;
    }
    for (int stage = 0; stage < opts.penalty_stages; ++stage) {
        obj.mu = opts.penalty0 * std::pow(10.0, stage);
        double E = obj.value(u);
        double tau = 1.0;
        std::vector<double> grad;
        GridFunction trial(u.grid);
        for (int it = 0; it < opts.stage_iters; ++it) {
            obj.gradient(u, grad);
            std::vector<double> dir = solve_dirichlet_poisson(grad, h);
            double m = std::inner_product(grad.begin(), grad.end(), dir.begin(), 0.0);
            if (!(m > 0.0)) {
                dir = grad;
                m = std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0);
                if (!(m > 0.0)) break;
            }
            bool accepted = false;
            double En = E;
            for (int bt = 0; bt < 50; ++bt) {
                for (int i = 0; i < u.n(); ++i)
                    trial[i] = std::max(u[i] - tau * dir[static_cast<size_t>(i)], 0.0);
                const double nq = norm(trial, obj.q);
                if (nq > 1e-12) {
                    for (double& v : trial.values) v /= nq;
                    // sufficient decrease against the projected displacement
                    double desc = 0.0;
                    for (int i = 0; i < u.n(); ++i)
                        desc += grad[static_cast<size_t>(i)] * (u[i] - trial[i]);
                    En = obj.value(trial);
                    if (En <= E - 1e-4 * std::fabs(desc) && desc > 0.0) {
                        accepted = true;
                        break;
                    }
                }
                tau *= 0.5;
            }
            if (!accepted) break;
            const double drop = E - En;
            u = trial;
            E = En;
            tau = std::min(tau * 1.5, 1e6);
            if (drop <= opts.tol * std::max(1.0, std::fabs(E))) break;
        }
    }
}

std::vector<GridFunction> standard_starts(Grid1D grid, const GridFunction& phi_p,
                                          const GridFunction& phi_q, const CurveOptions& opts) {
    std::vector<GridFunction> starts;
    starts.push_back(phi_q);
    starts.push_back(phi_p);
    starts.push_back(GridFunction::sample(grid, [](double x) { return x * (1.0 - x); }));
    auto bump = [&](double c, double w) {
        return GridFunction::sample(grid, [c, w](double x) {
            const double t = (x - c) / w;
            return (std::fabs(t) < 0.5) ? std::cos(M_PI * t) * std::cos(M_PI * t) : 0.0;
        });
    };
    starts.push_back(bump(0.5, 0.8));
    starts.push_back(bump(0.3, 0.45));
    starts.push_back(bump(0.7, 0.45));
    starts.push_back(GridFunction::sample(
        grid, [](double x) { return std::min(std::min(x, 1.0 - x), 0.25); }));
    {
        GridFunction mix(grid);
        for (int i = 0; i < grid.n(); ++i) mix[i] = 0.5 * (phi_p[i] + phi_q[i]);
        starts.push_back(mix);
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    while (static_cast<int>(starts.size()) < opts.multistarts) {
        const double a1 = U(rng), a2 = U(rng), a3 = U(rng);
        starts.push_back(GridFunction::sample(grid, [a1, a2, a3](double x) {
            return std::fabs(a1 * std::sin(M_PI * x) + a2 * std::sin(2.0 * M_PI * x) +
                             a3 * std::sin(3.0 * M_PI * x));
        }));
    }
    starts.resize(static_cast<size_t>(std::max(opts.multistarts, 1)),
                  GridFunction(grid));
    for (const GridFunction& e : opts.extra_starts) starts.push_back(e);
    return starts;
}

struct BoundAccumulator {
    bool maximize;
    double best = 0.0;
    std::optional<GridFunction> cert;
    BoundAccumulator(bool maxi)
        : maximize(maxi),
          best(maxi ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity()) {}
    void offer(double v, const GridFunction& u) {
        if ((maximize && v > best) || (!maximize && v < best)) {
            best = v;
            cert = u;
        }
    }
};

}  // namespace

CurvePoint beta_f(double alpha, double p, double q, Grid1D grid, const GridFunction& f,
                  const CurveOptions& opts) {
    Params prm{p, q, alpha, 0.0};
    prm.validate();
    EigenPair ep = first_eigenpair(p, grid);
    EigenPair eq = first_eigenpair(q, grid);
    BoundAccumulator acc(false);
    const PhiObjective obj{p, q, alpha, f, false, opts.penalty0};
    for (const GridFunction& s0 : standard_starts(grid, ep.phi, eq.phi, opts)) {
        if (sup_norm(s0) == 0.0) continue;
        if (auto direct = repair_H_up(s0, p, q, alpha, f))
            if (auto v = try_phi_plus(*direct, p, q, alpha, f)) acc.offer(*v, *direct);
        GridFunction u = s0;
        penalty_descent(u, obj, opts);
        if (auto rep = repair_H_up(u, p, q, alpha, f))
            if (auto v = try_phi_plus(*rep, p, q, alpha, f)) acc.offer(*v, *rep);
    }
    if (!acc.cert) throw SolverError("beta_f: no feasible candidate produced");
    return {alpha, acc.best, BoundKind::Upper, *acc.cert};
}

std::vector<CurvePoint> beta_f_curve(const std::vector<double>& alphas, double p, double q,
                                     Grid1D grid, const GridFunction& f,
                                     const CurveOptions& opts) {
    std::vector<CurvePoint> pts;
    pts.reserve(alphas.size());
    for (double a : alphas) pts.push_back(beta_f(a, p, q, grid, f, opts));
    // cross-evaluate every certificate at every sample; each evaluation is a
    // genuine feasible candidate, so the pointwise minimum stays a valid
    // upper bound and the curve loses optimizer jitter
    for (CurvePoint& pt : pts) {
        for (const CurvePoint& other : pts) {
            if (auto rep = repair_H_up(other.certificate, p, q, pt.alpha, f)) {
                if (auto v = try_phi_plus(*rep, p, q, pt.alpha, f); v && *v < pt.value) {
                    pt.value = *v;
                    pt.certificate = *rep;
                }
            }
        }
    }
    return pts;
}

CurvePoint beta_sup_f(double alpha, double p, double q, Grid1D grid, const GridFunction& f,
                      const CurveOptions& opts) {
    Params prm{p, q, alpha, 0.0};
    prm.validate();
    EigenPair ep = first_eigenpair(p, grid);
    EigenPair eq = first_eigenpair(q, grid);
    if (alpha < ep.lambda - 1e-8 * std::fabs(ep.lambda))
        throw DomainError("beta_sup_f: needs alpha at or above the first p-eigenvalue");
    BoundAccumulator acc(true);
    const PhiObjective obj{p, q, alpha, f, true, opts.penalty0};
    std::vector<GridFunction> starts = standard_starts(grid, ep.phi, eq.phi, opts);
    // dilated bumps live deep inside the feasible cone once alpha is large
    for (double s : {0.5, 0.25, 0.125}) {
        starts.push_back(GridFunction::sample(grid, [s](double x) {
            const double t = x / s;
            return (t < 1.0) ? std::sin(M_PI * t) : 0.0;
        }));
    }
    for (const GridFunction& s0 : starts) {
        if (sup_norm(s0) == 0.0) continue;
        if (auto direct = repair_H_down(s0, p, alpha, ep.phi))
            if (auto v = try_phi_minus(*direct, p, q, alpha, f)) acc.offer(*v, *direct);
        GridFunction u = s0;
        penalty_descent(u, obj, opts);
        if (auto rep = repair_H_down(u, p, alpha, ep.phi))
            if (auto v = try_phi_minus(*rep, p, q, alpha, f)) acc.offer(*v, *rep);
    }
    if (!acc.cert) throw SolverError("beta_sup_f: no feasible candidate produced");
    return {alpha, acc.best, BoundKind::Lower, *acc.cert};
}

std::vector<CurvePoint> beta_sup_f_curve(const std::vector<double>& alphas, double p, double q,
                                         Grid1D grid, const GridFunction& f,
                                         const CurveOptions& opts) {
    std::vector<CurvePoint> pts;
    pts.reserve(alphas.size());
    EigenPair ep = first_eigenpair(p, grid);
    for (double a : alphas) pts.push_back(beta_sup_f(a, p, q, grid, f, opts));
    for (CurvePoint& pt : pts) {
        for (const CurvePoint& other : pts) {
            if (auto rep = repair_H_down(other.certificate, p, pt.alpha, ep.phi)) {
                if (auto v = try_phi_minus(*rep, p, q, pt.alpha, f); v && *v > pt.value) {
                    pt.value = *v;
                    pt.certificate = *rep;
                }
            }
        }
    }
    return pts;
}

PsBounds beta_ps_bounds(double alpha, double p, double q, Grid1D grid,
                        const std::vector<GridFunction>& candidates) {
    Params prm{p, q, alpha, 0.0};
    prm.validate();
    CurvePoint lower{alpha, -std::numeric_limits<double>::infinity(), BoundKind::Lower,
                     GridFunction(grid)};
    for (const GridFunction& u : candidates) {
        if (!(u.grid == grid)) throw DomainError("beta_ps_bounds: candidate grid mismatch");
        if (classify_sign(u) != SignClass::Positive) continue;
        double inner = std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid.n(); ++i)
            inner = std::min(inner, extended_functional_hat(u, i, prm));
        if (inner > lower.value) {
            lower.value = inner;
            lower.certificate = u;
        }
    }
    CurvePoint upper{alpha, std::numeric_limits<double>::infinity(), BoundKind::Upper,
                     GridFunction(grid)};
    const double astar = alpha_star(p, q, grid);
    if (alpha >= astar * (1.0 - 1e-12)) {
        EigenPair eq = first_eigenpair(q, grid);
        upper.value = eq.lambda;
        upper.certificate = eq.phi;
    }
    return {lower, upper};
}

double CurvesContext::beta_f_at(double alpha) const {
    if (beta_f_samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (alpha <= beta_f_samples.front().alpha) return beta_f_samples.front().value;
    if (alpha >= beta_f_samples.back().alpha) return beta_f_samples.back().value;
    for (size_t i = 0; i + 1 < beta_f_samples.size(); ++i) {
        if (alpha >= beta_f_samples[i].alpha && alpha <= beta_f_samples[i + 1].alpha)
            return std::min(beta_f_samples[i].value, beta_f_samples[i + 1].value);
    }
    return beta_f_samples.back().value;
}

double CurvesContext::beta_sup_at(double alpha) const {
    if (beta_sup_samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (alpha <= beta_sup_samples.front().alpha) return beta_sup_samples.front().value;
    if (alpha >= beta_sup_samples.back().alpha) return beta_sup_samples.back().value;
    for (size_t i = 0; i + 1 < beta_sup_samples.size(); ++i) {
        if (alpha >= beta_sup_samples[i].alpha && alpha <= beta_sup_samples[i + 1].alpha)
            return std::max(beta_sup_samples[i].value, beta_sup_samples[i + 1].value);
    }
    return beta_sup_samples.back().value;
}

CurvesContext build_context(double p, double q, Grid1D grid, const GridFunction& f,
                            const std::vector<double>& alphas, const CurveOptions& opts) {
    Params prm{p, q, 0.0, 0.0};
    prm.validate();
    EigenPair ep = first_eigenpair(p, grid);
    EigenPair eq = first_eigenpair(q, grid);
    CurvesContext ctx{p,
                      q,
                      grid,
                      ep.lambda,
                      eq.lambda,
                      ep.phi,
                      eq.phi,
                      seminorm_pow(eq.phi, p) / norm_pow(eq.phi, p),
                      seminorm_pow(ep.phi, q) / norm_pow(ep.phi, q),
                      {},
                      {},
                      0.15,
                      1e-6,
                      5,
                      {},
                      {}};
    std::vector<double> sorted = alphas;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    ctx.beta_f_samples = beta_f_curve(sorted, p, q, grid, f, opts);
    std::vector<double> above;
    for (double a : sorted)
        if (a >= ctx.lambda1_p * (1.0 - 1e-12)) above.push_back(a);
    if (!above.empty()) ctx.beta_sup_samples = beta_sup_f_curve(above, p, q, grid, f, opts);
    for (int k = 1; k <= ctx.sigma_kmax; ++k) {
        ctx.sigma_p.push_back(analytic_lambda_k(p, k));
        ctx.beta_window.push_back(beta_under_over(p, q, grid, k).first);
    }
    return ctx;
}

Region classify_region(double alpha, double beta, const CurvesContext& ctx) {
    // spectral sliver first: it overrides the coarse labels on a measure-zero set
    for (int k = 0; k < ctx.sigma_kmax; ++k) {
        const double lam = ctx.sigma_p[static_cast<size_t>(k)];
        const double win = ctx.beta_window[static_cast<size_t>(k)];
        if (std::fabs(alpha - lam) <= ctx.sigma_tol * std::fabs(lam) &&
            beta >= win * (1.0 - ctx.sigma_tol) && beta <= win * (1.0 + ctx.sigma_tol))
            return Region::ExistenceUnknown;
    }
    const double atm_margin = 1e-3;
    if (alpha >= ctx.a_star * (1.0 + 1e-12) && beta > ctx.lambda1_q + atm_margin)
        return Region::NoNonnegative;
    if (alpha <= ctx.lambda1_p && beta < ctx.beta_f_at(alpha) - ctx.gate_margin)
        return Region::AllPositive;
    return Region::ExistsUnclassified;
}

}  // namespace pqlab
