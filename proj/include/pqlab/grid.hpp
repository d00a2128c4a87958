#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pqlab {

/// Thrown when an argument violates a documented precondition.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Uniform mesh on (0,1) with n interior nodes and spacing h = 1/(n+1).
/// Interior node i (0-based) sits at x = (i+1)h.  Boundary values at x=0
/// and x=1 are implicit zeros everywhere in this library, so every grid
/// function satisfies the homogeneous Dirichlet condition by construction.
class Grid1D {
public:
    explicit Grid1D(int interior_nodes) : n_(interior_nodes) {
        if (interior_nodes < 3)
            throw DomainError("Grid1D: need at least three interior nodes");
    }

    int n() const { return n_; }
    double h() const { return 1.0 / (n_ + 1); }
    double x(int i) const { return (i + 1) * h(); }

    friend bool operator==(const Grid1D& a, const Grid1D& b) { return a.n_ == b.n_; }

private:
    int n_;
};

/// Values of a function at the interior nodes of a grid.  The zero boundary
/// is implicit: gradients and quadratures treat u(0) = u(1) = 0.
struct GridFunction {
    Grid1D grid;
    std::vector<double> values;

    explicit GridFunction(Grid1D g) : grid(g), values(static_cast<size_t>(g.n()), 0.0) {}
    GridFunction(Grid1D g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != grid.n())
            throw DomainError("GridFunction: value count does not match grid");
    }

    int n() const { return grid.n(); }
    double h() const { return grid.h(); }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }

    /// Samples a callable at the interior nodes.
    static GridFunction sample(Grid1D g, const std::function<double(double)>& f) {
        GridFunction u(g);
        for (int i = 0; i < g.n(); ++i) u[i] = f(g.x(i));
        return u;
    }
};

/// Sign pattern of a grid function at the interior nodes, judged with a
/// scale-invariant tolerance (see classify_sign).
enum class SignClass { Zero, Positive, Nonnegative, SignChanging, Nonpositive, Negative };

const char* to_string(SignClass s);

/// |s|^{e} * sgn(s); the odd power that appears in every r-Laplacian flux.
double signed_pow(double s, double e);

/// Trapezoid quadrature of a node function over (0,1); the implicit zero
/// boundary makes this h * sum of interior values.
double integrate(const GridFunction& u);

/// Cell slopes (u_{i} - u_{i-1})/h for the n+1 cells between consecutive
/// nodes, boundary zeros included.  Cell j spans [jh, (j+1)h].
std::vector<double> gradient(const GridFunction& u);

/// h * sum over interior nodes of |u_i|^r.  Requires r > 1.
double norm_pow(const GridFunction& u, double r);

/// h * sum over cells of |slope_j|^r (midpoint rule).  Requires r > 1.
double seminorm_pow(const GridFunction& u, double r);

/// Discrete L^r norm (norm_pow^{1/r}).
double norm(const GridFunction& u, double r);

/// Discrete W^{1,r} seminorm (seminorm_pow^{1/r}).
double seminorm(const GridFunction& u, double r);

/// Trapezoid pairing h * sum f_i u_i.  Errors if the grids differ.
double pairing(const GridFunction& f, const GridFunction& u);

/// Splits u into its signed parts u_plus = max(u,0) >= 0 and
/// u_minus = min(u,0) <= 0, so that u = u_plus + u_minus exactly and
/// u_plus * u_minus = 0 nodewise.
std::pair<GridFunction, GridFunction> split_signs(const GridFunction& u);

/// Classifies the sign pattern of u.  Nodes within the absolute tolerance
/// tol of zero count as zero; Positive/Negative require a strict sign at
/// every interior node, Nonnegative/Nonpositive allow zeros.  Passing a
/// negative tol (the default) selects the scale-invariant choice
/// 1e-8 * max|u|.
SignClass classify_sign(const GridFunction& u, double tol = -1.0);

/// max_i |u_i|
double sup_norm(const GridFunction& u);

/// max_i |u_i - v_i|; errors if the grids differ.
double sup_dist(const GridFunction& u, const GridFunction& v);

}  // namespace pqlab
