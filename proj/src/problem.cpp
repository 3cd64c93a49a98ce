#include "ave/problem.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "ave/error.hpp"

namespace ave {
namespace {

bool exactly_symmetric(const Matrix& a) {
    for (Index col = 0; col < a.cols(); ++col)
        for (Index row = col + 1; row < a.rows(); ++row)
            if (a(row, col) != a(col, row)) return false;
    return true;
}

} // namespace

AveProblem::AveProblem(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
    if (b_.size() < 1) throw Error(ErrorKind::DimensionMismatch, "empty right-hand side");
    if (a_.rows() != a_.cols())
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix is " + std::to_string(a_.rows()) + "x" + std::to_string(a_.cols()));
    if (a_.rows() != b_.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix order " + std::to_string(a_.rows()) + " but rhs length " +
                        std::to_string(b_.size()));
    if (!exactly_symmetric(a_)) throw Error(ErrorKind::NonSymmetric, "matrix is not symmetric");
}

SpdCertificate validate(const AveProblem& problem) {
    const Matrix& a = problem.a();
    if (!exactly_symmetric(a)) throw Error(ErrorKind::NonSymmetric, "matrix is not symmetric");

    // Right-looking LDL^T on A - I; pivots are the entries of D.
    const Index n = problem.n();
    Matrix work = a;
    work.diagonal().array() -= 1.0;

    SpdCertificate cert;
    cert.min_pivot = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < n; ++k) {
        const double pivot = work(k, k);
        cert.min_pivot = std::min(cert.min_pivot, pivot);
        if (!(pivot > 0.0)) {
            cert.is_spd = false;
            return cert;
        }
        for (Index col = k + 1; col < n; ++col) {
            const double l = work(col, k) / pivot;
            for (Index row = col; row < n; ++row) work(row, col) -= l * work(row, k);
        }
    }
    cert.is_spd = true;
    return cert;
}

AveProblem make_tridiag_example(Index n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    Matrix a = Matrix::Zero(n, n);
    Vector b(n);
    for (Index k = 0; k < n; ++k) {
        a(k, k) = 4.0;
        if (k + 1 < n) {
            a(k, k + 1) = 0.75;
            a(k + 1, k) = 0.75;
        }
        b(k) = (k % 2 == 0) ? 0.5 : 1.0;
    }
    return AveProblem(std::move(a), std::move(b));
}

AveProblem make_random_spd(Index n, std::uint64_t seed, double margin) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    if (!(margin > 0.0)) throw Error(ErrorKind::InvalidArgument, "margin must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    Matrix m(n, n);
    for (Index row = 0; row < n; ++row)
        for (Index col = 0; col < n; ++col) m(row, col) = unit(rng);
    Vector b(n);
    for (Index k = 0; k < n; ++k) b(k) = unit(rng);
    if (b.norm() == 0.0) b(0) = 1.0;

    const Matrix gram = m * m.transpose() / static_cast<double>(n);
    Matrix a(n, n);
    for (Index col = 0; col < n; ++col) {
        for (Index row = col; row < n; ++row) {
            a(row, col) = gram(row, col);
            a(col, row) = gram(row, col);
        }
        a(col, col) += 1.0 + margin;
    }
    return AveProblem(std::move(a), std::move(b));
}

AveProblem make_example_41() {
    Matrix a(2, 2);
    a << 1.5, 0.25, 0.25, 1.5;
    Vector b(2);
    b << 0.25, 1.0;
    return AveProblem(std::move(a), std::move(b));
}

AveProblem make_example_43() {
    Matrix a(2, 2);
    a << 1.0, 0.25, 0.25, 1.0;
    Vector b(2);
    b << 1.0, 0.5;
    return AveProblem(std::move(a), std::move(b));
}

} // namespace ave
