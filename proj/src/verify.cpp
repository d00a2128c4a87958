#include "pqlab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace pqlab {

namespace {

std::string describe(const SolutionRecord& rec, const char* why) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "slope0=%.6g sign=%d: %s", rec.slope0,
                  static_cast<int>(rec.sign), why);
    return buf;
}

bool is_nonnegative(SignClass s) {
    return s == SignClass::Positive || s == SignClass::Nonnegative;
}

/// A sign part counts as present when it rises above the same relative
/// floor classify_sign uses for its default tolerance.
bool part_present(const GridFunction& part, const GridFunction& whole) {
    return sup_norm(part) > 1e-8 * sup_norm(whole);
}

}  // namespace

std::vector<TheoremCheck> verify_sign_theorems(
    const std::vector<std::pair<double, double>>& samples, const GridFunction& f,
    const CurvesContext& ctx, const VerifyOptions& opts) {
    std::vector<TheoremCheck> rows;
    const double l1p = ctx.lambda1_p;
    const double l1q = ctx.lambda1_q;
    const double bf_alpha_max =
        ctx.beta_f_samples.empty() ? -std::numeric_limits<double>::infinity()
                                   : ctx.beta_f_samples.back().alpha;
    const double bsup_alpha_max =
        ctx.beta_sup_samples.empty() ? -std::numeric_limits<double>::infinity()
                                     : ctx.beta_sup_samples.back().alpha;
    const double bf_at_l1p = ctx.beta_f_at(l1p);

    for (const auto& [alpha, beta] : samples) {
        Params prm{ctx.p, ctx.q, alpha, beta};
        std::vector<SolutionRecord> recs = find_solutions(prm, f, opts.scan);

        auto emit = [&](const char* name, bool passed, const std::string& detail) {
            rows.push_back({alpha, beta, name, static_cast<int>(recs.size()), passed, detail});
        };
        auto clearance = [&](double value) { return opts.margin * (1.0 + std::fabs(value)); };

        const double bf = ctx.beta_f_at(alpha);
        const bool bf_known = alpha <= bf_alpha_max && std::isfinite(bf);
        const double bsup = ctx.beta_sup_at(alpha);
        const bool bsup_known = alpha >= l1p && alpha <= bsup_alpha_max && std::isfinite(bsup);

        // Any solution is positive strictly inside the all-positive region.
        if (alpha <= l1p && bf_known && beta < bf - clearance(bf)) {
            bool ok = true;
            std::string detail;
            for (const auto& rec : recs)
                if (rec.sign != SignClass::Positive) {
                    ok = false;
                    detail = describe(rec, "expected a positive solution");
                    break;
                }
            emit("nodal", ok, detail);
        }

        // Dichotomy probe just above lambda_1(p): nothing sign-changing.
        if (alpha > l1p && alpha <= l1p + opts.nodal2_window && std::isfinite(bf_at_l1p) &&
            beta < bf_at_l1p - clearance(bf_at_l1p)) {
            bool ok = true;
            std::string detail;
            for (const auto& rec : recs)
                if (rec.sign == SignClass::SignChanging) {
                    ok = false;
                    detail = describe(rec, "sign-changing inside the dichotomy window");
                    break;
                }
            emit("nodal2", ok, detail);
        }

        // No nonnegative solutions above the pointwise-supremum curve.  Its
        // computable upper bound is lambda_1(q), valid from alpha_* on.
        const bool ps_bound_known = alpha >= ctx.a_star * (1.0 - 1e-12);
        if (alpha >= l1p && ps_bound_known && beta > l1q + clearance(l1q)) {
            bool ok = true;
            std::string detail;
            for (const auto& rec : recs)
                if (is_nonnegative(rec.sign)) {
                    ok = false;
                    detail = describe(rec, "nonnegative above the supremum curve");
                    break;
                }
            emit("atm", ok, detail);
            if (alpha > ctx.a_star + clearance(ctx.a_star)) emit("atm2", ok, detail);
        }

        // Negative-part and positive-part energy signs away from the curves.
        if (alpha > l1p + clearance(l1p)) {
            if (bf_known && beta < bf - clearance(bf)) {
                bool ok = true;
                std::string detail;
                for (const auto& rec : recs) {
                    auto [plus, minus] = split_signs(rec.u);
                    if (part_present(minus, rec.u) &&
                        !(h_alpha(minus, ctx.p, alpha) < 0.0)) {
                        ok = false;
                        detail = describe(rec, "H(u_minus) not negative below beta_f");
                        break;
                    }
                }
                emit("aux5i", ok, detail);
            }
            if (bsup_known && beta > bsup + clearance(bsup)) {
                bool ok = true;
                std::string detail;
                for (const auto& rec : recs) {
                    auto [plus, minus] = split_signs(rec.u);
                    if (part_present(plus, rec.u) && !(h_alpha(plus, ctx.p, alpha) > 0.0)) {
                        ok = false;
                        detail = describe(rec, "H(u_plus) not positive above beta_sup_f");
                        break;
                    }
                }
                emit("aux5ii", ok, detail);
            }
        }
    }
    return rows;
}

double atm2_epsilon(double alpha, const GridFunction& f, const CurvesContext& ctx,
                    double cap, int bisect_iters, const ScanOptions& scan) {
    if (!(alpha > ctx.a_star))
        throw DomainError("atm2_epsilon: need alpha > alpha_*");
    if (!(cap > 0.0)) throw DomainError("atm2_epsilon: need cap > 0");
    auto has_nonneg = [&](double beta) {
        Params prm{ctx.p, ctx.q, alpha, beta};
        for (const auto& rec : find_solutions(prm, f, scan))
            if (is_nonnegative(rec.sign)) return true;
        return false;
    };
    const double top = ctx.lambda1_q;
    double lo = top - cap;
    if (!has_nonneg(lo)) return cap;
    double hi = top;  // no nonnegative solution here by the theory
    for (int i = 0; i < bisect_iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (has_nonneg(mid))
            lo = mid;
        else
            hi = mid;
    }
    return top - 0.5 * (lo + hi);
}

}  // namespace pqlab
