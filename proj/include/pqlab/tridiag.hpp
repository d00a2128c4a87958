#pragma once

#include <vector>

namespace pqlab {

/// Solves (-u'')_h d = rhs on the interior nodes of a uniform Dirichlet grid
/// with spacing h, i.e. the tridiagonal system (2 d_i - d_{i-1} - d_{i+1})/h^2
/// = rhs_i with d_0 = d_{n+1} = 0.  Thomas algorithm, O(n).
/// Used as a smoothing preconditioner by the descent solvers.
std::vector<double> solve_dirichlet_poisson(const std::vector<double>& rhs, double h);

/// Solves the face-weighted analogue -(a u')'_h d = rhs with Dirichlet ends:
/// (-a_i d_{i-1} + (a_i + a_{i+1}) d_i - a_{i+1} d_{i+1})/h^2 = rhs_i where
/// face_w holds the n+1 cell-interface weights a_0..a_n (all > 0).
std::vector<double> solve_dirichlet_weighted(const std::vector<double>& face_w,
                                             const std::vector<double>& rhs, double h);

}  // namespace pqlab
