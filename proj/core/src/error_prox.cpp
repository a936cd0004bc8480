#include "clar/error_prox.hpp"

#include <cmath>

#include "clar/error.hpp"

namespace clar {

std::string_view to_string(ErrorNorm norm) {
    switch (norm) {
        case ErrorNorm::fro2: return "fro2";
        case ErrorNorm::l1: return "l1";
        case ErrorNorm::l21: return "l21";
    }
    return "?";
}

ErrorNorm parse_error_norm(std::string_view name) {
    if (name == "fro2") return ErrorNorm::fro2;
    if (name == "l1") return ErrorNorm::l1;
    if (name == "l21") return ErrorNorm::l21;
    throw ValidationError("unknown error norm '" + std::string(name) +
                          "' (expected fro2, l1 or l21)");
}

double error_penalty(ErrorNorm norm, const Matrix& e, double lambda) {
    switch (norm) {
        case ErrorNorm::fro2: return lambda * e.squaredNorm();
        case ErrorNorm::l1: return lambda * e.cwiseAbs().sum();
        case ErrorNorm::l21: return lambda * e.colwise().norm().sum();
    }
    return 0.0;
}

namespace {

void check_weights(double mu, double lambda) {
    if (!(mu > 0.0) || !(lambda > 0.0) || !std::isfinite(mu) || !std::isfinite(lambda))
        throw ValidationError("update_error: mu and lambda must be finite and positive");
}

}  // namespace

Matrix prox_error(ErrorNorm norm, const Matrix& q, double mu, double lambda) {
    check_weights(mu, lambda);
    const double thresh = lambda / mu;
    switch (norm) {
        case ErrorNorm::fro2:
            return q * (mu / (mu + 2.0 * lambda));
        case ErrorNorm::l1:
            // Soft threshold; |q| == thresh maps to 0.
            return q.unaryExpr([thresh](double v) {
                const double mag = std::abs(v) - thresh;
                return mag > 0.0 ? std::copysign(mag, v) : 0.0;
            });
        case ErrorNorm::l21: {
            Matrix e = Matrix::Zero(q.rows(), q.cols());
            for (Eigen::Index j = 0; j < q.cols(); ++j) {
                const double len = q.col(j).norm();
                if (len > thresh) e.col(j) = ((len - thresh) / len) * q.col(j);
            }
            return e;
        }
    }
    return q;
}

Matrix update_error(ErrorNorm norm, const Matrix& x, const Matrix& xz,
                    const Matrix& y2, double mu, double lambda) {
    if (x.rows() != xz.rows() || x.cols() != xz.cols() || x.rows() != y2.rows() ||
        x.cols() != y2.cols())
        throw ValidationError("update_error: X, XZ and Y2 must share one shape");
    check_weights(mu, lambda);
    if (norm == ErrorNorm::fro2) {
        // Direct closed form rather than prox of Q; same value, fewer roundings.
        return (y2 + mu * (x - xz)) / (mu + 2.0 * lambda);
    }
    return prox_error(norm, x - xz + y2 / mu, mu, lambda);
}

}  // namespace clar
