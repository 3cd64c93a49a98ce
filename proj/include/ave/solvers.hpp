#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ave/problem.hpp"

namespace ave {

/// How MGSM treats a zero coordinate of y in its curvature matrix A - D(y).
enum class ZeroCurvature {
    /// Zero belongs to the t >= 0 piece, so it contributes -1 like a positive entry.
    NonNegativePiece,
    /// D(y) = diag(sign(y)) with sign(0) = 0.
    SignZero,
};

struct SolverOptions {
    /// Stop once RES <= tol.
    double tol = 1e-6;
    /// Cap on individual block (BCDA) or inner (MGSM) updates.
    std::int64_t max_updates = 1'000'000;
    /// Starting point; the zero vector when empty.
    std::optional<Vector> x0;
    bool record_trace = false;
    /// Abort with Diverged once RES exceeds this.
    double divergence_cap = 1e12;
    /// MGSM only: number of previous outer iterates checked for a repeat. 0 disables.
    int cycle_window = 0;
    /// MGSM only.
    ZeroCurvature zero_curvature = ZeroCurvature::NonNegativePiece;
};

enum class SolveStatus { Converged, MaxUpdates, Diverged, CycleDetected, DegenerateBlock };

const char* to_string(SolveStatus status);

struct IterationRecord {
    std::int64_t update_index = 0;  ///< 0 is the starting point
    std::int64_t sweep_index = 0;
    double f_value = 0.0;
    double res = 0.0;
    /// Full iterate, kept only for problems with n <= kTracePointMaxDim.
    std::vector<double> point;
};

inline constexpr Index kTracePointMaxDim = 2;

struct SolveReport {
    SolveStatus status = SolveStatus::MaxUpdates;
    Vector x_final;
    /// BCDA: block updates performed. MGSM: k * n for k outer iterations.
    std::int64_t it = 0;
    std::int64_t sweeps = 0;
    double elapsed_seconds = 0.0;
    double res_final = 0.0;
    std::optional<std::vector<IterationRecord>> trace;
};

/// Monotone block coordinate descent. Blocks are the pairs (0,1), (2,3), ...
/// visited cyclically, with a one-coordinate tail block when n is odd. Each
/// block is minimized exactly, so f never increases on SPD instances.
SolveReport solve_bcda(const AveProblem& problem, const SolverOptions& opts = {});

/// Baseline two-coordinate Newton-type sweep: inner step i pairs coordinate i
/// with i-1 (with n-1 for i = 0) and minimizes the local quadratic model.
/// Requires n >= 2.
SolveReport solve_mgsm(const AveProblem& problem, const SolverOptions& opts = {});

/// ||Ax - |x| - b|| <= tol * (1 + ||b||)
bool verify_solution(const AveProblem& problem, const Vector& x, double tol);

} // namespace ave
