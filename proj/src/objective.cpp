#include "ave/objective.hpp"

#include <string>

#include "ave/error.hpp"

namespace ave {
namespace {

void check_length(const AveProblem& problem, const Vector& x) {
    if (x.size() != problem.n())
        throw Error(ErrorKind::DimensionMismatch, "iterate has length " + std::to_string(x.size()) +
                                                      ", expected " + std::to_string(problem.n()));
}

} // namespace

double eval_f(const AveProblem& problem, const Vector& x) {
    check_length(problem, x);
    const Vector ax = problem.a() * x;
    return x.dot(ax) - x.dot(x.cwiseAbs()) - 2.0 * problem.b().dot(x);
}

Vector residual(const AveProblem& problem, const Vector& x) {
    check_length(problem, x);
    return problem.a() * x - x.cwiseAbs() - problem.b();
}

Vector eval_grad(const AveProblem& problem, const Vector& x) {
    return 2.0 * residual(problem, x);
}

double eval_res(const AveProblem& problem, const Vector& x) {
    const double b_norm = problem.b().norm();
    if (b_norm == 0.0)
        throw Error(ErrorKind::ZeroRhs, "relative residual undefined for b = 0");
    return residual(problem, x).norm() / b_norm;
}

Evaluation evaluate(const AveProblem& problem, const Vector& x, bool with_gradient) {
    Evaluation out;
    out.f_value = eval_f(problem, x);
    out.res = eval_res(problem, x);
    if (with_gradient) out.gradient = eval_grad(problem, x);
    return out;
}

} // namespace ave
