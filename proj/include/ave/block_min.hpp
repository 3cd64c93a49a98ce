#pragma once

#include <array>

#include "ave/problem.hpp"

namespace ave {

/// Sign region of a coordinate pair (t1, t2). P is t >= 0, N is t < 0.
enum class Region { PP, PN, NP, NN };

const char* to_string(Region region);

/// Data needed to minimize f exactly over coordinates (i, j) with every other
/// coordinate frozen at the current iterate.
struct BlockContext {
    Index i = 0;
    Index j = 1;
    double a_ii = 0.0;
    double a_jj = 0.0;
    double a_ij = 0.0;
    double w1 = 0.0;  ///< row_i(A) . x - b_i
    double w2 = 0.0;  ///< row_j(A) . x - b_j
    double x_i = 0.0;
    double x_j = 0.0;

    static BlockContext from(const AveProblem& problem, const Vector& x, Index i, Index j);
};

/// Unconstrained minimizer of one region's quadratic piece.
struct BlockCandidate {
    Region region = Region::PP;
    double t1 = 0.0;
    double t2 = 0.0;
    bool feasible = false;
};

struct BlockStep {
    double alpha = 0.0;  ///< t1 - x_i
    double beta = 0.0;   ///< t2 - x_j
    Region region = Region::PP;
};

using CandidateSet = std::array<BlockCandidate, 4>;

/// Closed-form minimizers of the four quadratic pieces, in region order
/// PP, PN, NP, NN. Throws DegenerateBlock when a piece has a zero determinant.
CandidateSet candidates(const BlockContext& ctx);

/// f(x + (t1 - x_i) e_i + (t2 - x_j) e_j) minus a constant that does not
/// depend on (t1, t2).
double block_objective(const BlockContext& ctx, double t1, double t2);

/// Picks the candidate with the smallest objective; ties go to the earlier
/// region in PP, PN, NP, NN order.
BlockStep select(const CandidateSet& cands, const BlockContext& ctx);

/// Restriction of f to one coordinate: phi(t) = a_ii t^2 - t|t| - 2 c t with
/// c = b_i - sum_{l != i} a_il x_l.
struct SingleContext {
    double a_ii = 0.0;
    double c = 0.0;
    double x_i = 0.0;

    static SingleContext from(const AveProblem& problem, const Vector& x, Index i);
};

/// Exact minimizer of phi. Throws DegenerateBlock when a_ii <= 1.
double minimize_single(const SingleContext& ctx);

} // namespace ave
