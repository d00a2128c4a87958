#include "pqlab/solve.hpp"
#include "pqlab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pqlab {

double flux(double s, double p, double q) {
    return signed_pow(s, p - 1.0) + signed_pow(s, q - 1.0);
}

double flux_inverse(double w, double p, double q, double tol) {
    if (w == 0.0) return 0.0;
    const double aw = std::fabs(w);
    // t^{p-1} <= phi(t) and t^{q-1} <= phi(t) give two upper brackets
    double hi = std::min(std::pow(aw, 1.0 / (p - 1.0)), std::pow(aw, 1.0 / (q - 1.0)));
    double lo = 0.0;
    double t = hi;
    for (int it = 0; it < 200; ++it) {
        const double f = std::pow(t, p - 1.0) + std::pow(t, q - 1.0) - aw;
        if (f > 0.0) hi = t; else lo = t;
        const double df = (p - 1.0) * std::pow(t, p - 2.0) + (q - 1.0) * std::pow(t, q - 2.0);
        double tn = (df > 0.0 && std::isfinite(df)) ? t - f / df : 0.5 * (lo + hi);
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        const double dt = std::fabs(tn - t);
        t = tn;
        if (dt <= tol * std::max(1.0, t)) break;
    }
    return std::copysign(t, w);
}

namespace {

constexpr double kBlowupCutoff = 1e8;
constexpr double kBlowupSentinel = 1e300;

// piecewise-linear read of a node function, constant beyond the outermost
// nodes so that constant sources stay exactly constant
double interp_source(const GridFunction& f, double x) {
    const double h = f.h();
    const int n = f.n();
    const double s = x / h - 1.0;
    if (s <= 0.0) return f[0];
    if (s >= n - 1) return f[n - 1];
    const int i = static_cast<int>(std::floor(s));
    const double w = s - i;
    return (1.0 - w) * f[i] + w * f[i + 1];
}

struct ShootRhs {
    const Params& prm;
    const GridFunction& f;
    double du(double w) const { return flux_inverse(w, prm.p, prm.q); }
    double dw(double u, double x) const {
        return -(prm.alpha * signed_pow(u, prm.p - 1.0) + prm.beta * signed_pow(u, prm.q - 1.0) +
                 interp_source(f, x));
    }
};

}  // namespace

ShootResult shoot(const Params& prm, const GridFunction& f, double slope0) {
    prm.validate();
    const Grid1D grid = f.grid;
    const int n = grid.n();
    const double h = grid.h();
    const ShootRhs rhs{prm, f};
    ShootResult out{GridFunction(grid), slope0, 0.0, false, 1.0};
    double u = 0.0, w = flux(slope0, prm.p, prm.q), x = 0.0;
    for (int stepi = 0; stepi <= n; ++stepi) {
        const double k1u = rhs.du(w), k1w = rhs.dw(u, x);
        const double k2u = rhs.du(w + 0.5 * h * k1w), k2w = rhs.dw(u + 0.5 * h * k1u, x + 0.5 * h);
        const double k3u = rhs.du(w + 0.5 * h * k2w), k3w = rhs.dw(u + 0.5 * h * k2u, x + 0.5 * h);
        const double k4u = rhs.du(w + h * k3w), k4w = rhs.dw(u + h * k3u, x + h);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        x += h;
        if (!std::isfinite(u) || std::fabs(u) > kBlowupCutoff) {
            out.blew_up = true;
            out.blowup_x = x;
            const double sgn = (std::isfinite(u) ? (u > 0.0 ? 1.0 : -1.0)
                                                 : (std::signbit(u) ? -1.0 : 1.0));
            for (int i = stepi; i < n; ++i) out.u[i] = sgn * kBlowupCutoff;
            out.endpoint = sgn * kBlowupSentinel;
            return out;
        }
        if (stepi < n) out.u[stepi] = u;
    }
    out.endpoint = u;
    return out;
}

namespace {

double endpoint_scale(const ShootResult& s) { return 1.0 + sup_norm(s.u); }

// scaled sup-norm of the discrete strong-form density; O(h) for a genuine
// solution trajectory (the flux second derivative jumps where u' = 0, and
// the jump scales with the solution amplitude), O(1/h) near a bracketed pole
double relative_residual(const GridFunction& u, const Params& prm, const GridFunction& f) {
    GridFunction g = energy_gradient(u, prm, f);
    double scale = 1.0;
    for (int i = 0; i < u.n(); ++i) {
        scale = std::max(scale, std::fabs(prm.alpha) * std::pow(std::fabs(u[i]), prm.p - 1.0) +
                                    std::fabs(prm.beta) * std::pow(std::fabs(u[i]), prm.q - 1.0) +
                                    std::fabs(f[i]));
    }
    return sup_norm(g) / scale;
}

SolutionRecord make_record(const ShootResult& s, const Params& prm, const GridFunction& f) {
    SolutionRecord rec{s.u, s.slope0, relative_residual(s.u, prm, f), classify_sign(s.u),
                       energy(s.u, prm, f)};
    return rec;
}

}  // namespace

double residual_limit(const ScanOptions& opts, const GridFunction& u) {
    if (opts.residual_tol > 0.0) return opts.residual_tol;
    return 40.0 * u.h() * (1.0 + sup_norm(u));
}

std::vector<SolutionRecord> find_solutions(const Params& prm, const GridFunction& f,
                                           const ScanOptions& opts) {
    prm.validate();
    if (opts.scan_count < 2) throw DomainError("find_solutions: scan_count must be >= 2");
    if (!(opts.slope_max > opts.slope_min))
        throw DomainError("find_solutions: empty slope range");

    std::vector<double> slopes(static_cast<size_t>(opts.scan_count));
    for (int i = 0; i < opts.scan_count; ++i)
        slopes[static_cast<size_t>(i)] =
            opts.slope_min + (opts.slope_max - opts.slope_min) * i / (opts.scan_count - 1.0);

    std::vector<ShootResult> shots;
    shots.reserve(slopes.size());
    for (double s : slopes) shots.push_back(shoot(prm, f, s));

    std::vector<SolutionRecord> found;
    auto try_accept = [&](const ShootResult& s) {
        if (s.blew_up) return;
        if (std::fabs(s.endpoint) > opts.endpoint_tol * endpoint_scale(s)) return;
        SolutionRecord rec = make_record(s, prm, f);
        if (rec.residual > residual_limit(opts, rec.u)) return;
        for (const SolutionRecord& kept : found)
            if (sup_dist(kept.u, rec.u) < opts.dedup_tol * (1.0 + sup_norm(kept.u))) return;
        found.push_back(std::move(rec));
    };

    // direct hits at scan points
    for (const ShootResult& s : shots) try_accept(s);

    // bracketed endpoint sign changes, refined by bisection on the slope
    for (size_t j = 0; j + 1 < shots.size(); ++j) {
        double ea = shots[j].endpoint, eb = shots[j + 1].endpoint;
        if (ea == 0.0 || eb == 0.0) continue;  // already accepted above
        if ((ea > 0.0) == (eb > 0.0)) continue;
        double sa = shots[j].slope0, sb = shots[j + 1].slope0;
        ShootResult best = shots[j];
        for (int it = 0; it < opts.max_bisect; ++it) {
            const double sm = 0.5 * (sa + sb);
            ShootResult mid = shoot(prm, f, sm);
            best = mid;
            if (!mid.blew_up &&
                std::fabs(mid.endpoint) <= opts.endpoint_tol * endpoint_scale(mid))
                break;
            const double em = mid.endpoint;
            if ((em > 0.0) == (ea > 0.0)) {
                sa = sm;
            } else {
                sb = sm;
            }
            if (sb - sa <= 1e-15 * (1.0 + std::fabs(sa))) break;
        }
        try_accept(best);
    }

    // for zero sources the zero trajectory is a solution by inspection
    if (sup_norm(f) == 0.0) {
        bool have_zero = false;
        for (const SolutionRecord& r : found)
            if (sup_norm(r.u) <= opts.dedup_tol) have_zero = true;
        if (!have_zero) {
            ShootResult z{GridFunction(f.grid), 0.0, 0.0, false, 1.0};
            found.push_back(make_record(z, prm, f));
        }
    }

    std::sort(found.begin(), found.end(),
              [](const SolutionRecord& a, const SolutionRecord& b) { return a.slope0 < b.slope0; });
    return found;
}

MinimizeResult minimize_energy(const Params& prm, const GridFunction& f,
                               const DescentOptions& opts) {
    prm.validate();
    const Grid1D grid = f.grid;
    const double h = grid.h();
    GridFunction fp = f;
    if (opts.orthogonalize_f_against) {
        const GridFunction& w = *opts.orthogonalize_f_against;
        const double denom = pairing(w, w);
        if (!(denom > 0.0))
            throw DomainError("minimize_energy: cannot orthogonalize against zero");
        const double c = pairing(fp, w) / denom;
        for (int i = 0; i < grid.n(); ++i) fp[i] -= c * w[i];
    }
    const GridFunction& src = fp;
    GridFunction u(grid);
    if (opts.init) {
        u = *opts.init;
    } else {
        // Laplacian solve of the source as a warm start
        u = GridFunction(grid, solve_dirichlet_poisson(src.values, h));
    }
    GridFunction g = energy_gradient(u, prm, src);
    double E = energy(u, prm, src).E;
    double tau = 1.0;
    int it = 0;
    int noise_steps = 0;
    for (; it < opts.max_iters; ++it) {
        if (sup_norm(g) <= opts.grad_tol) break;
        std::vector<double> dir = solve_dirichlet_poisson(g.values, h);
        double m = std::inner_product(g.values.begin(), g.values.end(), dir.begin(), 0.0);
        if (!(m > 0.0)) {
            dir = g.values;
            m = std::inner_product(g.values.begin(), g.values.end(), g.values.begin(), 0.0);
        }
        bool accepted = false;
        double t = tau;
        GridFunction trial(grid);
        for (int bt = 0; bt < 80; ++bt, t *= 0.5) {
            for (int i = 0; i < grid.n(); ++i) trial[i] = u[i] - t * dir[static_cast<size_t>(i)];
            const double En = energy(trial, prm, src).E;
            if (En <= E - 1e-4 * t * h * m) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // stalled at line-search resolution
        const double drop = E - energy(trial, prm, src).E;
        u = trial;
        E = energy(u, prm, src).E;
        tau = std::min(t * 1.5, 1e8);
        g = energy_gradient(u, prm, src);
        if (sup_norm(u) > kBlowupCutoff)
            throw SolverError("minimize_energy: iterate diverged (energy unbounded below?)");
        if (drop <= 1e-13 * std::max(1.0, std::fabs(E))) {
            if (++noise_steps >= 5) break;  // attainable decrease is roundoff
        } else {
            noise_steps = 0;
        }
    }

    // Fixed-step polish: once energy decrease is below roundoff the gradient
    // can still contract by orders of magnitude (flat-valley regimes), which
    // a sufficient-decrease test cannot certify.  Track the best iterate.
    if (sup_norm(g) > opts.grad_tol) {
        double step = std::min(tau, 1.0);
        GridFunction best_u = u;
        double best_g = sup_norm(g);
        int since_improve = 0, streak = 0;
        for (int polish = 0; polish < opts.max_iters; ++polish) {
            ++it;
            std::vector<double> dir = solve_dirichlet_poisson(g.values, h);
            for (int i = 0; i < grid.n(); ++i) u[i] -= step * dir[static_cast<size_t>(i)];
            const bool escaped = sup_norm(u) > kBlowupCutoff;
            double gg = std::numeric_limits<double>::infinity();
            if (!escaped) {
                g = energy_gradient(u, prm, src);
                gg = sup_norm(g);
                if (gg <= opts.grad_tol) break;
            }
            if (gg < best_g) {
                best_g = gg;
                best_u = u;
                since_improve = 0;
                if (++streak >= 20) {  // steady contraction: be bolder
                    step = std::min(step * 1.25, 1e8);
                    streak = 0;
                }
            } else {
                streak = 0;
                if (escaped || ++since_improve >= 25) {
                    u = best_u;
                    g = energy_gradient(u, prm, src);
                    step *= 0.5;
                    since_improve = 0;
                    if (step < 1e-14) break;
                }
            }
        }
        if (sup_norm(g) > best_g) {
            u = best_u;
            g = energy_gradient(u, prm, src);
        }
    }

    const double gs = sup_norm(g);
    if (gs > 100.0 * opts.grad_tol)
        throw SolverError("minimize_energy: no convergence within budget");
    return {u, energy(u, prm, src), it, gs, gs <= opts.grad_tol};
}

double q_eval(double t, double H, double G, double F, double p, double q) {
    return std::pow(t, p) * H + std::pow(t, q) * G + t * F;
}

double q_prime(double t, double H, double G, double F, double p, double q) {
    return p * std::pow(t, p - 1.0) * H + q * std::pow(t, q - 1.0) * G + F;
}

Tangency tangency(double H, double F, double p, double q) {
    if (!(p > q && q > 1.0)) throw DomainError("tangency: need p > q > 1");
    if (!(H > 0.0 && F > 0.0)) throw DomainError("tangency: need H > 0 and F > 0");
    const double t_star =
        std::pow((q - 1.0) / (p - q), 1.0 / (p - 1.0)) * std::pow(F / H, 1.0 / (p - 1.0));
    const double g_tilde = -tangency_coefficient(p, q) *
                           std::pow(H, (q - 1.0) / (p - 1.0)) * std::pow(F, (p - q) / (p - 1.0));
    return {t_star, g_tilde};
}

TangencyCertificate beta_tilde(const GridFunction& u, double alpha, double p, double q,
                               const GridFunction& f) {
    const double H = h_alpha(u, p, alpha);
    const double F = pairing(f, u);
    const Tangency tg = tangency(H, F, p, q);
    const double bt = (seminorm_pow(u, q) - tg.g_tilde) / norm_pow(u, q);
    return {tg.t_star, tg.g_tilde, bt};
}

namespace {

void require_picone_pair(const GridFunction& u, const GridFunction& v, const char* who) {
    if (!(u.grid == v.grid)) throw DomainError(std::string(who) + ": grid mismatch");
    if (classify_sign(u) != SignClass::Positive)
        throw DomainError(std::string(who) + ": u must be positive at every interior node");
    const SignClass sv = classify_sign(v);
    if (sv == SignClass::SignChanging || sv == SignClass::Negative || sv == SignClass::Nonpositive)
        throw DomainError(std::string(who) + ": v must be nonnegative");
}

}  // namespace

double picone_classical_gap(const GridFunction& u, const GridFunction& v, double p) {
    require_picone_pair(u, v, "picone_classical_gap");
    GridFunction a(u.grid);
    for (int i = 0; i < u.n(); ++i)
        a[i] = std::pow(std::max(v[i], 0.0), p) / std::pow(u[i], p - 1.0);
    std::vector<double> gu = gradient(u), gv = gradient(v), ga = gradient(a);
    const double h = u.h();
    double gap = 0.0;
    for (size_t j = 0; j < gu.size(); ++j)
        gap += std::pow(std::fabs(gv[j]), p) - signed_pow(gu[j], p - 1.0) * ga[j];
    return gap * h;
}

double picone_generalized_gap(const GridFunction& u, const GridFunction& v, double p, double q) {
    if (!(p > q && q > 1.0)) throw DomainError("picone_generalized_gap: need p > q > 1");
    require_picone_pair(u, v, "picone_generalized_gap");
    GridFunction a(u.grid), b(u.grid);
    for (int i = 0; i < u.n(); ++i) {
        const double vi = std::max(v[i], 0.0);
        a[i] = std::pow(vi, p) / std::pow(u[i], p - 1.0);
        b[i] = std::pow(vi, p - q + 1.0) / std::pow(u[i], p - q);
    }
    std::vector<double> gu = gradient(u), gv = gradient(v), ga = gradient(a), gb = gradient(b);
    const double h = u.h();
    double gap = 0.0;
    for (size_t j = 0; j < gu.size(); ++j)
        gap += signed_pow(gv[j], q - 1.0) * gb[j] - signed_pow(gu[j], q - 1.0) * ga[j];
    return gap * h;
}

}  // namespace pqlab
