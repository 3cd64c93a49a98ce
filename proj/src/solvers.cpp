#include "ave/solvers.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <string>

#include "ave/block_min.hpp"
#include "ave/error.hpp"
#include "ave/objective.hpp"

namespace ave {
namespace {

using Clock = std::chrono::steady_clock;

void check_options(const AveProblem& problem, const SolverOptions& opts) {
    if (!(opts.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
    if (!(opts.divergence_cap > opts.tol))
        throw Error(ErrorKind::InvalidArgument, "divergence cap must exceed tol");
    if (opts.max_updates < 1) throw Error(ErrorKind::InvalidArgument, "max_updates must be positive");
    if (opts.cycle_window < 0) throw Error(ErrorKind::InvalidArgument, "cycle window must be >= 0");
    if (opts.x0 && opts.x0->size() != problem.n())
        throw Error(ErrorKind::DimensionMismatch,
                    "x0 has length " + std::to_string(opts.x0->size()) + ", expected " +
                        std::to_string(problem.n()));
    if (problem.b().norm() == 0.0)
        throw Error(ErrorKind::ZeroRhs, "relative residual undefined for b = 0");
}

// Iterate plus A x - b, kept in sync with rank-two column updates so that RES
// and f cost O(n) per step instead of a full product.
class IterateState {
public:
    IterateState(const AveProblem& problem, Vector x0)
        : problem_(problem), x_(std::move(x0)), b_norm_(problem.b().norm()) {
        resync();
    }

    const Vector& x() const { return x_; }
    double shifted(Index k) const { return r_(k); }  ///< (A x - b)_k

    void move(Index i, double alpha) {
        if (alpha == 0.0) return;
        x_(i) += alpha;
        r_.noalias() += alpha * problem_.a().col(i);
    }

    void resync() { r_.noalias() = problem_.a() * x_ - problem_.b(); }

    double res() const { return (r_ - x_.cwiseAbs()).norm() / b_norm_; }

    // f = x^T (A x - b) - b^T x - x^T |x|; the + 0.0 folds -0 into 0.
    double f() const { return x_.dot(r_) - problem_.b().dot(x_) - x_.dot(x_.cwiseAbs()) + 0.0; }

    // Recomputes RES from scratch; refreshes the running product when it has drifted
    // across the threshold.
    bool confirm_converged(double tol) {
        resync();
        return res() <= tol;
    }

private:
    const AveProblem& problem_;
    Vector x_;
    Vector r_;
    double b_norm_;
};

class TraceSink {
public:
    TraceSink(bool enabled, Index n) : enabled_(enabled), keep_point_(n <= kTracePointMaxDim) {}

    void record(std::int64_t update, std::int64_t sweep, const IterateState& state) {
        if (!enabled_) return;
        IterationRecord rec;
        rec.update_index = update;
        rec.sweep_index = sweep;
        rec.f_value = state.f();
        rec.res = state.res();
        if (keep_point_) rec.point.assign(state.x().data(), state.x().data() + state.x().size());
        records_.push_back(std::move(rec));
    }

    std::optional<std::vector<IterationRecord>> take() {
        if (!enabled_) return std::nullopt;
        return std::move(records_);
    }

private:
    bool enabled_;
    bool keep_point_;
    std::vector<IterationRecord> records_;
};

bool diverged(double res, double cap) { return !std::isfinite(res) || res > cap; }

SolveReport finish(SolveStatus status, IterateState& state, TraceSink& trace, std::int64_t it,
                   std::int64_t sweeps, Clock::time_point start) {
    SolveReport report;
    report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    report.status = status;
    report.x_final = state.x();
    report.it = it;
    report.sweeps = sweeps;
    state.resync();
    report.res_final = state.res();
    report.trace = trace.take();
    return report;
}

} // namespace

const char* to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxUpdates: return "MaxUpdates";
    case SolveStatus::Diverged: return "Diverged";
    case SolveStatus::CycleDetected: return "CycleDetected";
    case SolveStatus::DegenerateBlock: return "DegenerateBlock";
    }
    return "Unknown";
}

SolveReport solve_bcda(const AveProblem& problem, const SolverOptions& opts) {
    check_options(problem, opts);
    const auto start = Clock::now();
    const Index n = problem.n();
    const Matrix& a = problem.a();

    IterateState state(problem, opts.x0 ? *opts.x0 : Vector::Zero(n));
    TraceSink trace(opts.record_trace, n);
    trace.record(0, 0, state);

    if (state.res() <= opts.tol) return finish(SolveStatus::Converged, state, trace, 0, 0, start);
    if (diverged(state.res(), opts.divergence_cap))
        return finish(SolveStatus::Diverged, state, trace, 0, 0, start);

    const Index blocks = (n + 1) / 2;
    std::int64_t it = 0;
    std::int64_t sweep = 0;
    while (it < opts.max_updates) {
        ++sweep;
        for (Index s = 0; s < blocks && it < opts.max_updates; ++s) {
            const Index i = 2 * s;
            try {
                if (i + 1 < n) {
                    const Index j = i + 1;
                    BlockContext ctx;
                    ctx.i = i;
                    ctx.j = j;
                    ctx.a_ii = a(i, i);
                    ctx.a_jj = a(j, j);
                    ctx.a_ij = a(i, j);
                    ctx.w1 = state.shifted(i);
                    ctx.w2 = state.shifted(j);
                    ctx.x_i = state.x()(i);
                    ctx.x_j = state.x()(j);
                    const BlockStep step = select(candidates(ctx), ctx);
                    state.move(i, step.alpha);
                    state.move(j, step.beta);
                } else {
                    SingleContext ctx;
                    ctx.a_ii = a(i, i);
                    ctx.x_i = state.x()(i);
                    ctx.c = ctx.a_ii * ctx.x_i - state.shifted(i);
                    state.move(i, minimize_single(ctx) - ctx.x_i);
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DegenerateBlock) throw;
                return finish(SolveStatus::DegenerateBlock, state, trace, it, sweep, start);
            }
            ++it;
            trace.record(it, sweep, state);

            const double res = state.res();
            if (res <= opts.tol && state.confirm_converged(opts.tol))
                return finish(SolveStatus::Converged, state, trace, it, sweep, start);
            if (diverged(res, opts.divergence_cap))
                return finish(SolveStatus::Diverged, state, trace, it, sweep, start);
        }
    }
    return finish(SolveStatus::MaxUpdates, state, trace, it, sweep, start);
}

SolveReport solve_mgsm(const AveProblem& problem, const SolverOptions& opts) {
    check_options(problem, opts);
    const Index n = problem.n();
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "MGSM needs n >= 2");
    const auto start = Clock::now();
    const Matrix& a = problem.a();

    IterateState state(problem, opts.x0 ? *opts.x0 : Vector::Zero(n));
    TraceSink trace(opts.record_trace, n);
    trace.record(0, 0, state);

    if (state.res() <= opts.tol) return finish(SolveStatus::Converged, state, trace, 0, 0, start);
    if (diverged(state.res(), opts.divergence_cap))
        return finish(SolveStatus::Diverged, state, trace, 0, 0, start);

    const auto curvature_sign = [rule = opts.zero_curvature](double v) {
        if (rule == ZeroCurvature::NonNegativePiece) return v >= 0.0 ? 1.0 : -1.0;
        return sign(v);
    };

    std::deque<Vector> history;
    if (opts.cycle_window > 0) history.push_back(state.x());

    std::int64_t inner = 0;
    std::int64_t outer = 0;
    while (true) {
        ++outer;
        for (Index i = 0; i < n; ++i) {
            const Index j = (i == 0) ? n - 1 : i - 1;
            const Vector& y = state.x();
            // Curvature of the local model: C = A - D(y).
            const double c_ii = a(i, i) - curvature_sign(y(i));
            const double c_jj = a(j, j) - curvature_sign(y(j));
            const double c_ij = a(i, j);
            const double p_i = state.shifted(i) - std::abs(y(i));
            const double p_j = state.shifted(j) - std::abs(y(j));
            const double det = c_ii * c_jj - c_ij * c_ij;
            if (det == 0.0)
                return finish(SolveStatus::DegenerateBlock, state, trace, (outer - 1) * n, outer,
                              start);
            const double alpha = (c_ij * p_j - c_jj * p_i) / det;
            const double beta = (c_ij * p_i - c_ii * p_j) / det;
            state.move(i, alpha);
            state.move(j, beta);
            ++inner;
            trace.record(inner, outer, state);
        }

        const std::int64_t it = outer * n;
        const double res = state.res();
        if (res <= opts.tol && state.confirm_converged(opts.tol))
            return finish(SolveStatus::Converged, state, trace, it, outer, start);
        if (diverged(res, opts.divergence_cap) || !state.x().allFinite())
            return finish(SolveStatus::Diverged, state, trace, it, outer, start);
        if (opts.cycle_window > 0) {
            for (const Vector& past : history) {
                if ((past - state.x()).cwiseAbs().maxCoeff() <= 1e-12)
                    return finish(SolveStatus::CycleDetected, state, trace, it, outer, start);
            }
            history.push_back(state.x());
            if (history.size() > static_cast<std::size_t>(opts.cycle_window)) history.pop_front();
        }
        if (it >= opts.max_updates)
            return finish(SolveStatus::MaxUpdates, state, trace, it, outer, start);
    }
}

bool verify_solution(const AveProblem& problem, const Vector& x, double tol) {
    return residual(problem, x).norm() <= tol * (1.0 + problem.b().norm());
}

} // namespace ave
