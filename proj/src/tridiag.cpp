#include "pqlab/tridiag.hpp"

#include <cstddef>

namespace pqlab {

std::vector<double> solve_dirichlet_poisson(const std::vector<double>& rhs, double h) {
    const size_t n = rhs.size();
    const double h2 = h * h;
    std::vector<double> c(n), d(n), x(n);
    // forward sweep on tridiag(-1, 2, -1)/h^2
    double b = 2.0 / h2;
    c[0] = -1.0 / h2 / b;
    d[0] = rhs[0] / b;
    for (size_t i = 1; i < n; ++i) {
        const double m = 2.0 / h2 - (-1.0 / h2) * c[i - 1];
        c[i] = -1.0 / h2 / m;
        d[i] = (rhs[i] - (-1.0 / h2) * d[i - 1]) / m;
    }
    x[n - 1] = d[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

std::vector<double> solve_dirichlet_weighted(const std::vector<double>& face_w,
                                             const std::vector<double>& rhs, double h) {
    const size_t n = rhs.size();
    const double h2 = h * h;
    std::vector<double> c(n), d(n), x(n);
    double b = (face_w[0] + face_w[1]) / h2;
    c[0] = -face_w[1] / h2 / b;
    d[0] = rhs[0] / b;
    for (size_t i = 1; i < n; ++i) {
        const double lo = -face_w[i] / h2;
        const double m = (face_w[i] + face_w[i + 1]) / h2 - lo * c[i - 1];
        c[i] = -face_w[i + 1] / h2 / m;
        d[i] = (rhs[i] - lo * d[i - 1]) / m;
    }
    x[n - 1] = d[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

}  // namespace pqlab
