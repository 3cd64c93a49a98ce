#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ave/error.hpp"
#include "ave/io.hpp"
#include "ave/problem.hpp"
#include "ave/solvers.hpp"

namespace ave::cli {
namespace {

enum class Command { Solve, Compare, Trace };
enum class Method { Bcda, Mgsm, Both };
enum class Format { Table, Csv, Ndjson };

struct RunConfig {
    Command command = Command::Solve;
    Method method = Method::Bcda;
    std::string matrix_path;
    std::string rhs_path;
    std::string generator;
    long n = 0;
    std::vector<long> sizes;
    std::string x0 = "zero";
    double tol = 1e-6;
    long long max_updates = 1'000'000;
    int cycle_window = 0;
    std::uint64_t seed = 1;
    double margin = 0.1;
    std::string zero_sign = "region";
    Format format = Format::Table;
    std::string out_path;
};

struct Instance {
    std::string label;
    AveProblem problem;
};

struct Run {
    std::string method;
    long n = 0;
    SolveReport report;
};

std::string num17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const std::vector<std::string> kGenerators{"tridiag", "example41", "example43", "random-spd"};

AveProblem generate(const RunConfig& cfg, long n) {
    if (cfg.generator == "example41") return make_example_41();
    if (cfg.generator == "example43") return make_example_43();
    if (cfg.generator == "tridiag") return make_tridiag_example(n);
    return make_random_spd(n, cfg.seed, cfg.margin);
}

std::vector<Instance> load_instances(const RunConfig& cfg) {
    const bool from_files = !cfg.matrix_path.empty() || !cfg.rhs_path.empty();
    if (from_files && !cfg.generator.empty())
        throw Error(ErrorKind::InvalidArgument, "--generator and --matrix/--rhs are mutually exclusive");
    if (from_files) {
        if (cfg.matrix_path.empty() || cfg.rhs_path.empty())
            throw Error(ErrorKind::InvalidArgument, "--matrix and --rhs must be given together");
        if (!cfg.sizes.empty()) throw Error(ErrorKind::InvalidArgument, "--sizes needs a generator");
        AveProblem p = read_problem(cfg.matrix_path, cfg.rhs_path);
        return {Instance{cfg.matrix_path, std::move(p)}};
    }
    if (cfg.generator.empty())
        throw Error(ErrorKind::InvalidArgument, "need --generator or --matrix/--rhs");

    const bool sized = cfg.generator == "tridiag" || cfg.generator == "random-spd";
    std::vector<long> sizes = cfg.sizes;
    if (sizes.empty()) {
        long n = cfg.n;
        if (n == 0) n = cfg.generator == "tridiag" ? 1000 : 10;
        sizes.push_back(n);
    }
    if (!sized && (cfg.sizes.size() > 1 || cfg.n != 0))
        throw Error(ErrorKind::InvalidArgument, cfg.generator + " has a fixed size");

    std::vector<Instance> out;
    for (long n : sizes) {
        if (sized && n < 1) throw Error(ErrorKind::InvalidArgument, "sizes must be positive");
        out.push_back(Instance{cfg.generator, generate(cfg, n)});
    }
    return out;
}

SolverOptions solver_options(const RunConfig& cfg, const AveProblem& problem, bool trace) {
    SolverOptions opts;
    opts.tol = cfg.tol;
    opts.max_updates = cfg.max_updates;
    opts.cycle_window = cfg.cycle_window;
    opts.record_trace = trace;
    opts.zero_curvature =
        cfg.zero_sign == "zero" ? ZeroCurvature::SignZero : ZeroCurvature::NonNegativePiece;
    if (cfg.x0 != "zero") {
        Vector x0 = read_vector(cfg.x0);
        if (x0.size() != problem.n())
            throw Error(ErrorKind::DimensionMismatch, "x0 has " + std::to_string(x0.size()) +
                                                          " entries, problem has n = " +
                                                          std::to_string(problem.n()));
        opts.x0 = std::move(x0);
    }
    return opts;
}

std::vector<std::string> methods_of(Method m) {
    switch (m) {
    case Method::Bcda: return {"bcda"};
    case Method::Mgsm: return {"mgsm"};
    case Method::Both: return {"bcda", "mgsm"};
    }
    return {};
}

SolveReport run_method(const std::string& method, const AveProblem& problem,
                       const SolverOptions& opts) {
    return method == "bcda" ? solve_bcda(problem, opts) : solve_mgsm(problem, opts);
}

std::vector<Run> run_all(const RunConfig& cfg, const std::vector<Instance>& instances, bool trace) {
    std::vector<Run> runs;
    for (const Instance& inst : instances) {
        const SolverOptions opts = solver_options(cfg, inst.problem, trace);
        for (const std::string& method : methods_of(cfg.method))
            runs.push_back(Run{method, static_cast<long>(inst.problem.n()),
                               run_method(method, inst.problem, opts)});
    }
    std::stable_sort(runs.begin(), runs.end(), [](const Run& l, const Run& r) {
        return std::tie(l.n, l.method) < std::tie(r.n, r.method);
    });
    return runs;
}

nlohmann::ordered_json run_json(const Run& r) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["n"] = r.n;
    j["status"] = to_string(r.report.status);
    j["it"] = r.report.it;
    j["sweeps"] = r.report.sweeps;
    j["time_seconds"] = r.report.elapsed_seconds;
    j["res"] = r.report.res_final;
    return j;
}

void write_runs_csv(std::ostream& os, const std::vector<Run>& runs) {
    os << "method,n,status,it,sweeps,time_seconds,res\n";
    for (const Run& r : runs)
        os << r.method << ',' << r.n << ',' << to_string(r.report.status) << ',' << r.report.it
           << ',' << r.report.sweeps << ',' << num17(r.report.elapsed_seconds) << ','
           << num17(r.report.res_final) << '\n';
}

void write_runs_ndjson(std::ostream& os, const std::vector<Run>& runs) {
    for (const Run& r : runs) os << run_json(r).dump() << '\n';
}

void write_runs_table(std::ostream& os, const std::vector<Run>& runs) {
    os << std::left << std::setw(8) << "method" << std::setw(8) << "n" << std::setw(17) << "status"
       << std::setw(10) << "IT" << std::setw(14) << "Time(s)" << "RES" << '\n';
    for (const Run& r : runs)
        os << std::left << std::setw(8) << r.method << std::setw(8) << r.n << std::setw(17)
           << to_string(r.report.status) << std::setw(10) << r.report.it << std::setw(14)
           << num6(r.report.elapsed_seconds) << num6(r.report.res_final) << '\n';
}

// Side-by-side layout: one block per method, rows IT / Time / RES, one column per size.
void write_compare_table(std::ostream& os, const std::vector<Run>& runs) {
    std::vector<long> sizes;
    for (const Run& r : runs)
        if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end()) sizes.push_back(r.n);
    std::vector<std::string> methods;
    for (const Run& r : runs)
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
            methods.push_back(r.method);
    std::sort(methods.begin(), methods.end());

    const auto find = [&](const std::string& m, long n) -> const Run* {
        for (const Run& r : runs)
            if (r.method == m && r.n == n) return &r;
        return nullptr;
    };

    constexpr int w = 14;
    os << std::left << std::setw(8) << "Method" << std::setw(8) << "n";
    for (long n : sizes) os << std::setw(w) << n;
    os << '\n';
    for (const std::string& m : methods) {
        std::string label = m;
        std::transform(label.begin(), label.end(), label.begin(), ::toupper);
        const std::vector<std::pair<std::string, std::function<std::string(const Run&)>>> rows{
            {"IT", [](const Run& r) { return std::to_string(r.report.it); }},
            {"Time", [](const Run& r) { return num6(r.report.elapsed_seconds); }},
            {"RES", [](const Run& r) { return num6(r.report.res_final); }},
            {"Status", [](const Run& r) { return std::string(to_string(r.report.status)); }},
        };
        for (std::size_t k = 0; k < rows.size(); ++k) {
            os << std::left << std::setw(8) << (k == 0 ? label : "") << std::setw(8)
               << rows[k].first;
            for (long n : sizes) {
                const Run* r = find(m, n);
                os << std::setw(w) << (r ? rows[k].second(*r) : "-");
            }
            os << '\n';
        }
    }
}

void write_trace(std::ostream& os, const std::vector<Run>& runs, Format format) {
    const bool with_point = !runs.empty() && runs.front().n <= kTracePointMaxDim;
    const long dim = runs.empty() ? 0 : runs.front().n;

    if (format == Format::Ndjson) {
        for (const Run& r : runs) {
            for (const IterationRecord& rec : *r.report.trace) {
                nlohmann::ordered_json j;
                j["method"] = r.method;
                j["update_index"] = rec.update_index;
                j["sweep_index"] = rec.sweep_index;
                j["f_value"] = rec.f_value;
                j["res"] = rec.res;
                if (with_point) j["x"] = rec.point;
                os << j.dump() << '\n';
            }
        }
        return;
    }

    const bool csv = format == Format::Csv;
    const auto fmt = csv ? num17 : num6;
    const auto cell = [&](const std::string& s, int width) {
        if (csv) return;
        os << std::left << std::setw(width) << s;
    };
    std::vector<std::string> header{"method", "update_index", "sweep_index", "f_value", "res"};
    if (with_point)
        for (long k = 1; k <= dim; ++k) header.push_back("x" + std::to_string(k));
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (csv)
            os << (k ? "," : "") << header[k];
        else
            cell(header[k], 14);
    }
    os << '\n';
    for (const Run& r : runs) {
        for (const IterationRecord& rec : *r.report.trace) {
            std::vector<std::string> fields{r.method, std::to_string(rec.update_index),
                                            std::to_string(rec.sweep_index), fmt(rec.f_value),
                                            fmt(rec.res)};
            if (with_point)
                for (double v : rec.point) fields.push_back(fmt(v));
            for (std::size_t k = 0; k < fields.size(); ++k) {
                if (csv)
                    os << (k ? "," : "") << fields[k];
                else
                    cell(fields[k], 14);
            }
            os << '\n';
        }
    }
}

bool all_converged(const std::vector<Run>& runs) {
    return std::all_of(runs.begin(), runs.end(),
                       [](const Run& r) { return r.report.status == SolveStatus::Converged; });
}

// Report destination: --out when the command writes its report there, else `out`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
        stream_ = file_.get();
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

void write_report(std::ostream& os, const std::vector<Run>& runs, Format format, bool side_by_side) {
    switch (format) {
    case Format::Csv: write_runs_csv(os, runs); break;
    case Format::Ndjson: write_runs_ndjson(os, runs); break;
    case Format::Table:
        if (side_by_side)
            write_compare_table(os, runs);
        else
            write_runs_table(os, runs);
        break;
    }
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    const std::vector<Instance> instances = load_instances(cfg);
    const std::vector<Run> runs = run_all(cfg, instances, false);
    write_report(out, runs, cfg.format, false);
    if (!cfg.out_path.empty()) {
        if (runs.size() == 1) {
            write_vector(cfg.out_path, runs.front().report.x_final);
        } else {
            for (const Run& r : runs)
                write_vector(cfg.out_path + "." + r.method + "." + std::to_string(r.n),
                             r.report.x_final);
        }
    }
    return all_converged(runs) ? 0 : 2;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    const std::vector<Instance> instances = load_instances(cfg);
    const std::vector<Run> runs = run_all(cfg, instances, false);
    Sink sink(cfg.out_path, out);
    write_report(sink.get(), runs, cfg.format, true);
    return all_converged(runs) ? 0 : 2;
}

int cmd_trace(const RunConfig& cfg, std::ostream& out) {
    const std::vector<Instance> instances = load_instances(cfg);
    if (instances.size() != 1) throw Error(ErrorKind::InvalidArgument, "trace takes a single problem");
    const std::vector<Run> runs = run_all(cfg, instances, true);
    Sink sink(cfg.out_path, out);
    write_trace(sink.get(), runs, cfg.format);
    return all_converged(runs) ? 0 : 2;
}

void add_run_options(CLI::App* sub, RunConfig& cfg, Method default_method) {
    cfg.method = default_method;
    const std::map<std::string, Method> methods{
        {"bcda", Method::Bcda}, {"mgsm", Method::Mgsm}, {"both", Method::Both}};
    const std::map<std::string, Format> formats{
        {"table", Format::Table}, {"csv", Format::Csv}, {"ndjson", Format::Ndjson}};

    sub->add_option("--method", cfg.method, "bcda, mgsm or both")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    auto* matrix = sub->add_option("--matrix", cfg.matrix_path, "Matrix Market file for A");
    auto* rhs = sub->add_option("--rhs", cfg.rhs_path, "right-hand side, one value per line");
    auto* gen = sub->add_option("--generator", cfg.generator, "built-in problem")
                    ->check(CLI::IsMember(kGenerators));
    gen->excludes(matrix)->excludes(rhs);
    auto* n = sub->add_option("--n", cfg.n, "problem size for tridiag / random-spd");
    auto* sizes = sub->add_option("--sizes", cfg.sizes, "comma-separated sizes")->delimiter(',');
    n->excludes(sizes);
    sub->add_option("--x0", cfg.x0, "starting point file, or 'zero'");
    sub->add_option("--tol", cfg.tol, "RES threshold")->check(CLI::PositiveNumber);
    sub->add_option("--max-updates", cfg.max_updates, "update cap")->check(CLI::PositiveNumber);
    sub->add_option("--cycle-window", cfg.cycle_window, "MGSM cycle detection window")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", cfg.seed, "random-spd seed");
    sub->add_option("--margin", cfg.margin, "random-spd eigenvalue margin")->check(CLI::PositiveNumber);
    sub->add_option("--mgsm-zero-sign", cfg.zero_sign,
                    "MGSM curvature at zero entries: region (zero counts as >= 0) or zero")
        ->check(CLI::IsMember({"region", "zero"}));
    sub->add_option("--format", cfg.format, "table, csv or ndjson")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", cfg.out_path, "solve: x_final file; compare/trace: report file");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solvers for the absolute value equation Ax - |x| = b"};
    app.name("ave");
    app.require_subcommand(1);

    RunConfig solve_cfg, compare_cfg, trace_cfg;
    auto* solve = app.add_subcommand("solve", "run a solver and print IT / Time / RES");
    add_run_options(solve, solve_cfg, Method::Bcda);
    auto* compare = app.add_subcommand("compare", "BCDA vs MGSM side by side");
    add_run_options(compare, compare_cfg, Method::Both);
    auto* trace = app.add_subcommand("trace", "per-update f and RES records");
    add_run_options(trace, trace_cfg, Method::Bcda);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ave: " << e.what() << '\n';
        return 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_cfg, out);
        if (compare->parsed()) return cmd_compare(compare_cfg, out);
        return cmd_trace(trace_cfg, out);
    } catch (const Error& e) {
        err << "ave: " << e.what() << '\n';
        return 1;
    }
}

} // namespace ave::cli
