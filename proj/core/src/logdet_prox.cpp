#include "clar/logdet_prox.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "clar/error.hpp"

namespace clar {

namespace {

// Real roots of x^3 + a x^2 + b x + c.
int real_cubic_roots(double a, double b, double c, std::array<double, 3>& roots) {
    // Depressed cubic t^3 + p t + q with x = t - a/3.
    const double shift = a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        roots[0] = std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq) - shift;
        return 1;
    }
    if (p == 0.0) {
        roots[0] = -shift;
        return 1;
    }
    // Three real roots (possibly repeated): trigonometric form.
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
        roots[k] = r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift;
    return 3;
}

// Newton iterations on the stationarity condition, kept inside [0, target].
// For beta > 1/4 the derivative of the condition is at least beta - 1/4, so
// the condition is increasing and [0, target] brackets its only zero;
// bisection takes over whenever a Newton step leaves the bracket.
double polish(const ScalarProxProblem& p, double s) {
    double lo = 0.0;
    double hi = p.target;
    const double scale = 1.0 + p.beta * p.target;
    for (int it = 0; it < 200; ++it) {
        const double g = p.stationarity(s);
        if (std::abs(g) <= 1e-15 * scale) break;
        (g < 0.0 ? lo : hi) = s;
        const double den = 1.0 + s * s;
        const double dg = 2.0 * (1.0 - s * s) / (den * den) + p.beta;
        double next = s - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == s) break;
        s = next;
    }
    return s;
}

}  // namespace

double logdet_value(const Matrix& z) {
    const SingularSystem s = svd(z, SvdMode::full);
    return s.sigma.unaryExpr([](double v) { return std::log1p(v * v); }).sum();
}

void ScalarProxProblem::validate() const {
    if (!std::isfinite(beta) || !(beta > 0.25)) {
        std::ostringstream os;
        os << "scalar_prox: beta must exceed 1/4 (got " << beta << ")";
        throw ValidationError(os.str());
    }
    if (!std::isfinite(target) || target < 0.0) {
        std::ostringstream os;
        os << "scalar_prox: target singular value must be finite and >= 0 (got "
           << target << ")";
        throw ValidationError(os.str());
    }
}

double ScalarProxProblem::objective(double s) const {
    const double d = s - target;
    return std::log1p(s * s) + 0.5 * beta * d * d;
}

double ScalarProxProblem::stationarity(double s) const {
    return 2.0 * s / (1.0 + s * s) + beta * (s - target);
}

double scalar_prox(const ScalarProxProblem& p) {
    p.validate();
    if (p.target == 0.0) return 0.0;

    // Stationarity times (1 + s^2) / beta:
    //   s^3 - target s^2 + (1 + 2 / beta) s - target = 0.
    std::array<double, 3> roots{};
    const int count =
        real_cubic_roots(-p.target, 1.0 + 2.0 / p.beta, -p.target, roots);

    double best = 0.0;
    double best_value = p.objective(0.0);
    for (int i = 0; i < count; ++i) {
        if (!std::isfinite(roots[i])) continue;
        const double s = polish(p, std::clamp(roots[i], 0.0, p.target));
        const double value = p.objective(s);
        if (value < best_value) {
            best = s;
            best_value = value;
        }
    }
    return best;
}

SingularSystem prox_singular_system(const Matrix& a, double beta) {
    ScalarProxProblem{0.0, beta}.validate();
    SingularSystem s = svd(a, SvdMode::full);
    for (Eigen::Index i = 0; i < s.sigma.size(); ++i)
        s.sigma(i) = scalar_prox({s.sigma(i), beta});
    return s;
}

Matrix matrix_prox(const Matrix& a, double beta) {
    return prox_singular_system(a, beta).reconstruct();
}

}  // namespace clar
