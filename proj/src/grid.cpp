#include "pqlab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace pqlab {

const char* to_string(SignClass s) {
    switch (s) {
        case SignClass::Zero: return "Zero";
        case SignClass::Positive: return "Positive";
        case SignClass::Nonnegative: return "Nonnegative";
        case SignClass::SignChanging: return "SignChanging";
        case SignClass::Nonpositive: return "Nonpositive";
        case SignClass::Negative: return "Negative";
    }
    return "?";
}

double signed_pow(double s, double e) {
    if (s == 0.0) return 0.0;
    return std::copysign(std::pow(std::fabs(s), e), s);
}

double integrate(const GridFunction& u) {
    double s = 0.0;
    for (double v : u.values) s += v;
    return s * u.h();
}

std::vector<double> gradient(const GridFunction& u) {
    const int n = u.n();
    const double h = u.h();
    std::vector<double> g(static_cast<size_t>(n) + 1);
    double prev = 0.0;  // implicit boundary value
    for (int i = 0; i < n; ++i) {
        g[static_cast<size_t>(i)] = (u[i] - prev) / h;
        prev = u[i];
    }
    g[static_cast<size_t>(n)] = (0.0 - prev) / h;
    return g;
}

static void require_exponent(double r) {
    if (!(r > 1.0)) throw DomainError("norm exponent must satisfy r > 1");
}

double norm_pow(const GridFunction& u, double r) {
    require_exponent(r);
    double s = 0.0;
    for (double v : u.values) s += std::pow(std::fabs(v), r);
    return s * u.h();
}

double seminorm_pow(const GridFunction& u, double r) {
    require_exponent(r);
    const int n = u.n();
    const double h = u.h();
    double s = 0.0, prev = 0.0;
    for (int i = 0; i < n; ++i) {
        s += std::pow(std::fabs(u[i] - prev), r);
        prev = u[i];
    }
    s += std::pow(std::fabs(prev), r);
    // slopes are differences / h; pull the h^{-r} out of the sum
    return s * h * std::pow(h, -r);
}

double norm(const GridFunction& u, double r) { return std::pow(norm_pow(u, r), 1.0 / r); }

double seminorm(const GridFunction& u, double r) { return std::pow(seminorm_pow(u, r), 1.0 / r); }

double pairing(const GridFunction& f, const GridFunction& u) {
    if (!(f.grid == u.grid)) throw DomainError("pairing: grid mismatch");
    double s = 0.0;
    for (int i = 0; i < u.n(); ++i) s += f[i] * u[i];
    return s * u.h();
}

std::pair<GridFunction, GridFunction> split_signs(const GridFunction& u) {
    GridFunction plus(u.grid), minus(u.grid);
    for (int i = 0; i < u.n(); ++i) {
        plus[i] = std::max(u[i], 0.0);
        minus[i] = std::min(u[i], 0.0);
    }
    return {plus, minus};
}

SignClass classify_sign(const GridFunction& u, double tol) {
    if (tol < 0.0) tol = 1e-8 * sup_norm(u);
    bool has_pos = false, has_neg = false, has_zero = false;
    for (double v : u.values) {
        if (v > tol) has_pos = true;
        else if (v < -tol) has_neg = true;
        else has_zero = true;
    }
    if (!has_pos && !has_neg) return SignClass::Zero;
    if (has_pos && has_neg) return SignClass::SignChanging;
    if (has_pos) return has_zero ? SignClass::Nonnegative : SignClass::Positive;
    return has_zero ? SignClass::Nonpositive : SignClass::Negative;
}

double sup_norm(const GridFunction& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::fabs(v));
    return m;
}

double sup_dist(const GridFunction& u, const GridFunction& v) {
    if (!(u.grid == v.grid)) throw DomainError("sup_dist: grid mismatch");
    double m = 0.0;
    for (int i = 0; i < u.n(); ++i) m = std::max(m, std::fabs(u[i] - v[i]));
    return m;
}

}  // namespace pqlab
