#include "ave/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ave/error.hpp"

namespace ave {
namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& msg) {
    throw Error(ErrorKind::ParseError, path.string() + ":" + std::to_string(line) + ": " + msg);
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    return out;
}

std::string format17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Reads the next line that is neither blank nor a '%' comment.
bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        return true;
    }
    return false;
}

} // namespace

Matrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
    ++lineno;

    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket") parse_fail(path, lineno, "missing %%MatrixMarket banner");
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") parse_fail(path, lineno, "unsupported object '" + object + "'");
    if (format != "coordinate" && format != "array")
        parse_fail(path, lineno, "unsupported format '" + format + "'");
    if (field != "real" && field != "integer" && field != "double")
        parse_fail(path, lineno, "unsupported field '" + field + "'");
    if (symmetry != "general" && symmetry != "symmetric")
        parse_fail(path, lineno, "unsupported symmetry '" + symmetry + "'");
    const bool symmetric = symmetry == "symmetric";

    if (!next_data_line(in, line, lineno)) parse_fail(path, lineno, "missing size line");
    std::istringstream size_line(line);
    long long rows = 0, cols = 0, entries = 0;
    if (!(size_line >> rows >> cols) || rows < 1 || cols < 1)
        parse_fail(path, lineno, "bad size line");
    if (format == "coordinate" && !(size_line >> entries)) parse_fail(path, lineno, "missing nnz");
    if (rows != cols) throw Error(ErrorKind::DimensionMismatch, path.string() + ": matrix is not square");

    Matrix a = Matrix::Zero(rows, cols);
    if (format == "coordinate") {
        for (long long k = 0; k < entries; ++k) {
            if (!next_data_line(in, line, lineno)) parse_fail(path, lineno, "truncated entry list");
            std::istringstream entry(line);
            long long r = 0, c = 0;
            double v = 0.0;
            if (!(entry >> r >> c >> v)) parse_fail(path, lineno, "bad entry");
            if (r < 1 || r > rows || c < 1 || c > cols) parse_fail(path, lineno, "index out of range");
            a(r - 1, c - 1) = v;
            if (symmetric) {
                if (c > r) parse_fail(path, lineno, "symmetric storage must be lower triangular");
                a(c - 1, r - 1) = v;
            }
        }
    } else {
        for (long long c = 0; c < cols; ++c) {
            for (long long r = symmetric ? c : 0; r < rows; ++r) {
                if (!next_data_line(in, line, lineno)) parse_fail(path, lineno, "truncated array");
                std::istringstream entry(line);
                double v = 0.0;
                if (!(entry >> v)) parse_fail(path, lineno, "bad value");
                a(r, c) = v;
                if (symmetric) a(c, r) = v;
            }
        }
    }
    if (next_data_line(in, line, lineno)) parse_fail(path, lineno, "trailing data");
    return a;
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& a) {
    std::ofstream out = open_out(path);
    out << "%%MatrixMarket matrix array real symmetric\n";
    out << a.rows() << ' ' << a.cols() << '\n';
    for (Index c = 0; c < a.cols(); ++c)
        for (Index r = c; r < a.rows(); ++r) out << format17(a(r, c)) << '\n';
}

Vector read_vector(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
        std::istringstream field(line);
        double v = 0.0;
        std::string rest;
        if (!(field >> v) || (field >> rest)) parse_fail(path, lineno, "expected one number");
        values.push_back(v);
    }
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

void write_vector(const std::filesystem::path& path, const Vector& v) {
    std::ofstream out = open_out(path);
    for (Index k = 0; k < v.size(); ++k) out << format17(v(k)) << '\n';
}

AveProblem read_problem(const std::filesystem::path& matrix_path,
                        const std::filesystem::path& rhs_path) {
    Matrix a = read_matrix_market(matrix_path);
    Vector b = read_vector(rhs_path);
    if (b.size() != a.rows())
        throw Error(ErrorKind::DimensionMismatch, "rhs has " + std::to_string(b.size()) +
                                                      " entries, matrix order is " +
                                                      std::to_string(a.rows()));
    return AveProblem(std::move(a), std::move(b));
}

void write_problem(const AveProblem& problem, const std::filesystem::path& matrix_path,
                   const std::filesystem::path& rhs_path) {
    write_matrix_market(matrix_path, problem.a());
    write_vector(rhs_path, problem.b());
}

} // namespace ave
