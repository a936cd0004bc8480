#pragma once

#include <string>
#include <string_view>

#include "clar/numeric.hpp"

namespace clar {

/// Norm on the error term E.
enum class ErrorNorm {
    fro2,  // squared Frobenius, Gaussian noise
    l1,    // entrywise, sparse corruption
    l21,   // sum of column norms, sample-specific outliers
};

std::string_view to_string(ErrorNorm norm);
/// Accepts "fro2", "l1" or "l21"; throws ValidationError otherwise.
ErrorNorm parse_error_norm(std::string_view name);

/// lambda * ||E||_norm, the penalty being minimized.
double error_penalty(ErrorNorm norm, const Matrix& e, double lambda);

/// Minimizer of lambda ||E|| + (mu / 2) ||Q - E||_F^2 for the shifted
/// residual Q (shared by the l1 and l21 branches).
Matrix prox_error(ErrorNorm norm, const Matrix& q, double mu, double lambda);

/// E step of the solver. Forms Q = X - XZ + Y2 / mu and returns the exact
/// minimizer of lambda ||E|| + (mu / 2) ||Q - E||_F^2. For fro2 this is
/// (Y2 + mu (X - XZ)) / (mu + 2 lambda).
Matrix update_error(ErrorNorm norm, const Matrix& x, const Matrix& xz,
                    const Matrix& y2, double mu, double lambda);

}  // namespace clar
