#pragma once

#include "ave/problem.hpp"

namespace ave {

/// sign(0) == 0.
inline double sign(double v) noexcept {
    return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
}

/// f(x) = <Ax, x> - <|x|, x> - 2 <b, x>
double eval_f(const AveProblem& problem, const Vector& x);

/// grad f(x) = 2 (Ax - |x| - b)
Vector eval_grad(const AveProblem& problem, const Vector& x);

/// Ax - |x| - b
Vector residual(const AveProblem& problem, const Vector& x);

/// RES = ||b + |x| - Ax|| / ||b||. Throws ZeroRhs when b == 0.
double eval_res(const AveProblem& problem, const Vector& x);

struct Evaluation {
    double f_value = 0.0;
    Vector gradient;
    double res = 0.0;
};

Evaluation evaluate(const AveProblem& problem, const Vector& x, bool with_gradient = true);

} // namespace ave
