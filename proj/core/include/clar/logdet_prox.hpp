#pragma once

#include "clar/numeric.hpp"

namespace clar {

/// Smoothed rank surrogate sum_i log(1 + sigma_i(Z)^2), evaluated from the
/// singular values of Z (never via a determinant).
double logdet_value(const Matrix& z);

/// One-dimensional subproblem
///     min_{s >= 0}  log(1 + s^2) + (beta / 2) (s - target)^2
/// with target >= 0 and beta > 1/4.
struct ScalarProxProblem {
    double target;  // singular value being shrunk
    double beta;    // quadratic weight

    /// Throws ValidationError unless beta > 1/4, target >= 0 and both finite.
    void validate() const;
    double objective(double s) const;
    /// Derivative of the objective; zero at interior minimizers.
    double stationarity(double s) const;
};

/// Global minimizer of the scalar subproblem. Lies in [0, target), and is 0
/// exactly when target is 0.
double scalar_prox(const ScalarProxProblem& p);

/// Prox result in factored form: A's singular vectors with shrunk values.
/// Values are left in A's order, which stays nonincreasing because the
/// scalar prox is monotone in its target.
SingularSystem prox_singular_system(const Matrix& a, double beta);

/// argmin_J logdet(I + J^T J) + (beta / 2) ||J - A||_F^2, computed by
/// shrinking each singular value of A with scalar_prox.
Matrix matrix_prox(const Matrix& a, double beta);

}  // namespace clar
