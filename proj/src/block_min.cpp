#include "ave/block_min.hpp"

#include <cmath>
#include <string>

#include "ave/error.hpp"

namespace ave {
namespace {

// Region r uses curvature (a_ii - s1, a_jj - s2), s = +1 on t >= 0, -1 on t < 0.
struct RegionSigns {
    Region region;
    double s1;
    double s2;
};

constexpr std::array<RegionSigns, 4> kRegions{{
    {Region::PP, 1.0, 1.0},
    {Region::PN, 1.0, -1.0},
    {Region::NP, -1.0, 1.0},
    {Region::NN, -1.0, -1.0},
}};

bool in_region(Region region, double t1, double t2) {
    switch (region) {
    case Region::PP: return t1 >= 0.0 && t2 >= 0.0;
    case Region::PN: return t1 >= 0.0 && t2 < 0.0;
    case Region::NP: return t1 < 0.0 && t2 >= 0.0;
    case Region::NN: return t1 < 0.0 && t2 < 0.0;
    }
    return false;
}

} // namespace

const char* to_string(Region region) {
    switch (region) {
    case Region::PP: return "PP";
    case Region::PN: return "PN";
    case Region::NP: return "NP";
    case Region::NN: return "NN";
    }
    return "?";
}

BlockContext BlockContext::from(const AveProblem& problem, const Vector& x, Index i, Index j) {
    if (i == j) throw Error(ErrorKind::InvalidArgument, "block needs two distinct coordinates");
    const Matrix& a = problem.a();
    BlockContext ctx;
    ctx.i = i;
    ctx.j = j;
    ctx.a_ii = a(i, i);
    ctx.a_jj = a(j, j);
    ctx.a_ij = a(i, j);
    ctx.w1 = a.col(i).dot(x) - problem.b()(i);
    ctx.w2 = a.col(j).dot(x) - problem.b()(j);
    ctx.x_i = x(i);
    ctx.x_j = x(j);
    return ctx;
}

CandidateSet candidates(const BlockContext& ctx) {
    const double a_ii = ctx.a_ii;
    const double a_jj = ctx.a_jj;
    const double a_ij = ctx.a_ij;
    const double cross = a_ij * a_ij - a_ii * a_jj;

    CandidateSet out;
    for (std::size_t k = 0; k < kRegions.size(); ++k) {
        const auto [region, s1, s2] = kRegions[k];
        const double denom = a_ij * a_ij - (a_ii - s1) * (a_jj - s2);
        if (denom == 0.0)
            throw Error(ErrorKind::DegenerateBlock,
                        std::string("singular ") + to_string(region) + " piece on block (" +
                            std::to_string(ctx.i) + ", " + std::to_string(ctx.j) + ")");

        const double t1 = (-ctx.w2 * a_ij + ctx.w1 * (a_jj - s2) + s2 * ctx.x_j * a_ij +
                           ctx.x_i * (cross + s2 * a_ii)) /
                          denom;
        const double t2 = (-ctx.w1 * a_ij + ctx.w2 * (a_ii - s1) + s1 * ctx.x_i * a_ij +
                           ctx.x_j * (cross + s1 * a_jj)) /
                          denom;
        out[k] = BlockCandidate{region, t1, t2, in_region(region, t1, t2)};
    }
    return out;
}

double block_objective(const BlockContext& ctx, double t1, double t2) {
    // c = b - (A x restricted to the other coordinates), per block coordinate.
    const double c1 = -ctx.w1 + ctx.a_ii * ctx.x_i + ctx.a_ij * ctx.x_j;
    const double c2 = -ctx.w2 + ctx.a_jj * ctx.x_j + ctx.a_ij * ctx.x_i;
    return ctx.a_ii * t1 * t1 - t1 * std::abs(t1) + ctx.a_jj * t2 * t2 - t2 * std::abs(t2) +
           2.0 * ctx.a_ij * t1 * t2 - 2.0 * c1 * t1 - 2.0 * c2 * t2;
}

BlockStep select(const CandidateSet& cands, const BlockContext& ctx) {
    std::size_t best = 0;
    double best_value = block_objective(ctx, cands[0].t1, cands[0].t2);
    for (std::size_t k = 1; k < cands.size(); ++k) {
        const double value = block_objective(ctx, cands[k].t1, cands[k].t2);
        if (value < best_value) {
            best = k;
            best_value = value;
        }
    }
    return BlockStep{cands[best].t1 - ctx.x_i, cands[best].t2 - ctx.x_j, cands[best].region};
}

SingleContext SingleContext::from(const AveProblem& problem, const Vector& x, Index i) {
    const Matrix& a = problem.a();
    SingleContext ctx;
    ctx.a_ii = a(i, i);
    ctx.x_i = x(i);
    ctx.c = problem.b()(i) - (a.col(i).dot(x) - ctx.a_ii * ctx.x_i);
    return ctx;
}

double minimize_single(const SingleContext& ctx) {
    if (!(ctx.a_ii > 1.0))
        throw Error(ErrorKind::DegenerateBlock, "single-coordinate block needs a_ii > 1");
    return ctx.c >= 0.0 ? ctx.c / (ctx.a_ii - 1.0) : ctx.c / (ctx.a_ii + 1.0);
}

} // namespace ave
