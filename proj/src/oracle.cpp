#include "ave/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "ave/error.hpp"

namespace ave::oracle {
namespace {

constexpr double kZeroSlack = 1e-12;
constexpr double kDistinct = 1e-9;

bool sign_consistent(const Vector& x, const std::vector<double>& s) {
    for (Index k = 0; k < x.size(); ++k) {
        if (s[k] > 0.0 && x(k) < -kZeroSlack) return false;
        if (s[k] < 0.0 && x(k) > kZeroSlack) return false;
    }
    return true;
}

bool lex_less(const Vector& lhs, const Vector& rhs) {
    return std::lexicographical_compare(lhs.data(), lhs.data() + lhs.size(), rhs.data(),
                                        rhs.data() + rhs.size());
}

// Direct evaluation of f along the (i, j) plane through x, written from the
// definition rather than the block_min machinery.
struct PlaneObjective {
    double a_ii, a_jj, a_ij, c_i, c_j, x_i, x_j;

    PlaneObjective(const AveProblem& problem, const Vector& x, Index i, Index j) {
        const Matrix& a = problem.a();
        a_ii = a(i, i);
        a_jj = a(j, j);
        a_ij = a(i, j);
        x_i = x(i);
        x_j = x(j);
        double rest_i = 0.0;
        double rest_j = 0.0;
        for (Index l = 0; l < x.size(); ++l) {
            if (l == i || l == j) continue;
            rest_i += a(i, l) * x(l);
            rest_j += a(j, l) * x(l);
        }
        c_i = problem.b()(i) - rest_i;
        c_j = problem.b()(j) - rest_j;
    }

    double operator()(double alpha, double beta) const {
        const double t1 = x_i + alpha;
        const double t2 = x_j + beta;
        return a_ii * t1 * t1 + a_jj * t2 * t2 + 2.0 * a_ij * t1 * t2 - t1 * std::abs(t1) -
               t2 * std::abs(t2) - 2.0 * c_i * t1 - 2.0 * c_j * t2;
    }

    // Minimizer of the piece with |t_k| = sign_k t_k, solved by Cramer's rule.
    // Returns false when the piece is not strictly convex.
    bool piece_minimizer(double sign1, double sign2, double& alpha, double& beta) const {
        const double h11 = a_ii - sign1;
        const double h22 = a_jj - sign2;
        const double det = h11 * h22 - a_ij * a_ij;
        if (!(h11 > 0.0) || !(det > 0.0)) return false;
        const double t1 = (c_i * h22 - a_ij * c_j) / det;
        const double t2 = (h11 * c_j - a_ij * c_i) / det;
        alpha = t1 - x_i;
        beta = t2 - x_j;
        return true;
    }
};

} // namespace

std::vector<Vector> enumerate_solutions(const AveProblem& problem, Index max_n) {
    const Index n = problem.n();
    if (n > max_n)
        throw Error(ErrorKind::TooLarge, "sign enumeration limited to n <= " + std::to_string(max_n));
    if (n >= 63) throw Error(ErrorKind::TooLarge, "sign pattern count overflows");

    std::vector<Vector> found;
    std::vector<double> s(static_cast<std::size_t>(n));
    const std::uint64_t patterns = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        Matrix m = problem.a();
        for (Index k = 0; k < n; ++k) {
            s[k] = ((mask >> k) & 1U) ? 1.0 : -1.0;
            m(k, k) -= s[k];
        }
        Eigen::FullPivLU<Matrix> lu(m);
        if (!lu.isInvertible()) continue;
        Vector x = lu.solve(problem.b());
        if (!x.allFinite() || !sign_consistent(x, s)) continue;
        found.push_back(std::move(x));
    }

    std::sort(found.begin(), found.end(), lex_less);
    std::vector<Vector> unique;
    for (Vector& x : found) {
        const bool seen = std::any_of(unique.begin(), unique.end(), [&](const Vector& u) {
            return (u - x).norm() <= kDistinct;
        });
        if (!seen) unique.push_back(std::move(x));
    }
    return unique;
}

std::pair<double, double> grid_block_min(const AveProblem& problem, const Vector& x, Index i,
                                         Index j, double half_width, int steps) {
    if (i == j) throw Error(ErrorKind::InvalidArgument, "block needs two distinct coordinates");
    if (steps < 100) throw Error(ErrorKind::InvalidArgument, "grid needs at least 100 steps");
    if (!(half_width > 0.0)) throw Error(ErrorKind::InvalidArgument, "half width must be positive");

    const PlaneObjective g(problem, x, i, j);
    const double h = 2.0 * half_width / steps;

    double best_alpha = 0.0;
    double best_beta = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= steps; ++p) {
        const double alpha = -half_width + p * h;
        for (int q = 0; q <= steps; ++q) {
            const double beta = -half_width + q * h;
            const double value = g(alpha, beta);
            if (value < best) {
                best = value;
                best_alpha = alpha;
                best_beta = beta;
            }
        }
    }

    // Polish on every piece within one grid cell of the winner; a piece's
    // minimizer only counts if it lies in that piece.
    const double t1 = x(i) + best_alpha;
    const double t2 = x(j) + best_beta;
    for (const double sign1 : {1.0, -1.0}) {
        if ((sign1 > 0.0 && t1 < -h) || (sign1 < 0.0 && t1 >= h)) continue;
        for (const double sign2 : {1.0, -1.0}) {
            if ((sign2 > 0.0 && t2 < -h) || (sign2 < 0.0 && t2 >= h)) continue;
            double alpha = 0.0;
            double beta = 0.0;
            if (!g.piece_minimizer(sign1, sign2, alpha, beta)) continue;
            const double u1 = x(i) + alpha;
            const double u2 = x(j) + beta;
            const bool inside = (sign1 > 0.0 ? u1 >= 0.0 : u1 <= 0.0) &&
                                (sign2 > 0.0 ? u2 >= 0.0 : u2 <= 0.0);
            if (!inside) continue;
            const double value = g(alpha, beta);
            if (value <= best) {
                best = value;
                best_alpha = alpha;
                best_beta = beta;
            }
        }
    }
    return {best_alpha, best_beta};
}

} // namespace ave::oracle
