#pragma once

#include <filesystem>

#include "ave/problem.hpp"

namespace ave {

// Matrix Market reader for dense symmetric matrices. Accepts `coordinate` and
// `array` storage with `real` or `integer` fields and `symmetric` or
// `general` symmetry. General input must be exactly symmetric.
Matrix read_matrix_market(const std::filesystem::path& path);

// Writes `array real symmetric` (lower triangle, column-major), 17 digits.
void write_matrix_market(const std::filesystem::path& path, const Matrix& a);

// One decimal per line; blank lines and lines starting with '#' or '%' are skipped.
Vector read_vector(const std::filesystem::path& path);
void write_vector(const std::filesystem::path& path, const Vector& v);

AveProblem read_problem(const std::filesystem::path& matrix_path,
                        const std::filesystem::path& rhs_path);
void write_problem(const AveProblem& problem,
                   const std::filesystem::path& matrix_path,
                   const std::filesystem::path& rhs_path);

} // namespace ave
