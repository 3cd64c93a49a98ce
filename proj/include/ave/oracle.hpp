#pragma once

#include <utility>
#include <vector>

#include "ave/problem.hpp"

namespace ave::oracle {

/// Solves Ax - |x| = b by trying every sign pattern s in {-1, +1}^n:
/// (A - diag(s)) x = b, kept when sign-consistent. Exponential in n; throws
/// TooLarge when n > max_n. Solutions come back sorted lexicographically.
std::vector<Vector> enumerate_solutions(const AveProblem& problem, Index max_n = 15);

/// Brute-force block minimization of f(x + alpha e_i + beta e_j) over a
/// (steps + 1)^2 grid on [-half_width, half_width]^2, polished by solving the
/// quadratic piece(s) around the best grid point.
std::pair<double, double> grid_block_min(const AveProblem& problem, const Vector& x, Index i,
                                         Index j, double half_width, int steps);

} // namespace ave::oracle
