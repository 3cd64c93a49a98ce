#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace ave {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// An instance of Ax - |x| = b with symmetric A.
///
/// Construction checks that A is square, exactly symmetric and that b has
/// matching length; the instance is immutable afterwards.
class AveProblem {
public:
    AveProblem(Matrix a, Vector b);

    const Matrix& a() const noexcept { return a_; }
    const Vector& b() const noexcept { return b_; }
    Index n() const noexcept { return b_.size(); }

    friend bool operator==(const AveProblem& lhs, const AveProblem& rhs) {
        return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
    }

private:
    Matrix a_;
    Vector b_;
};

/// Result of attempting a symmetric elimination of A - I.
struct SpdCertificate {
    bool is_spd = false;
    /// Smallest pivot seen before the attempt stopped (the failing pivot on failure).
    double min_pivot = 0.0;
};

/// Checks whether A - I is symmetric positive definite. Advisory: solvers
/// accept problems that fail the check.
SpdCertificate validate(const AveProblem& problem);

/// A = tridiag(3/4, 4, 3/4), b = [1/2, 1, 1/2, 1, ...]; odd n ends with 1/2.
AveProblem make_tridiag_example(Index n);

/// A = I + M M^T / n + margin * I with M uniform in [-1, 1], b uniform in
/// [-1, 1]. Deterministic in (n, seed, margin).
AveProblem make_random_spd(Index n, std::uint64_t seed, double margin);

/// A = [[3/2, 1/4], [1/4, 3/2]], b = [1/4, 1]; unique solution [-2/19, 39/19].
AveProblem make_example_41();

/// A = [[1, 1/4], [1/4, 1]], b = [1, 1/2]; A - I is indefinite, [2, 4] solves it.
AveProblem make_example_43();

} // namespace ave
