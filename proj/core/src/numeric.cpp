#include "clar/numeric.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "clar/error.hpp"

namespace clar {

namespace {

std::string dims(const Matrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

Matrix SingularSystem::reconstruct() const {
    return U * sigma.asDiagonal() * V.transpose();
}

SingularSystem svd(const Matrix& a, SvdMode mode, double tol) {
    if (!all_finite(a))
        throw NumericalError("svd: non-finite entries in " + dims(a) + " matrix");

    Eigen::BDCSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
        throw NumericalError("svd: decomposition failed for " + dims(a) + " matrix");

    const Vector& s = dec.singularValues();
    Eigen::Index keep = s.size();
    if (mode == SvdMode::skinny) {
        keep = 0;
        if (s.size() > 0 && s(0) > 0.0) {
            const double cut = tol * s(0);
            while (keep < s.size() && s(keep) > cut) ++keep;
        }
    }
    return SingularSystem{dec.matrixU().leftCols(keep), s.head(keep),
                          dec.matrixV().leftCols(keep)};
}

SpdFactorization::SpdFactorization(const Matrix& g) : llt_(g.rows()) {
    if (g.rows() != g.cols())
        throw ValidationError("solve_spd: system matrix is " + dims(g) + ", not square");
    if (max_abs(g - g.transpose()) > 1e-10)
        throw ValidationError("solve_spd: system matrix is not symmetric");
    llt_.compute(g);
    if (llt_.info() != Eigen::Success)
        throw NumericalError("solve_spd: " + dims(g) +
                             " matrix is not positive definite");
}

Matrix SpdFactorization::solve(const Matrix& b) const {
    if (b.rows() != llt_.rows())
        throw ValidationError("solve_spd: right-hand side has " +
                              std::to_string(b.rows()) + " rows, expected " +
                              std::to_string(llt_.rows()));
    return llt_.solve(b);
}

Matrix solve_spd(const Matrix& g, const Matrix& b) {
    return SpdFactorization(g).solve(b);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (spare_normal_) {
        const double v = *spare_normal_;
        spare_normal_.reset();
        return v;
    }
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(t);
    return r * std::cos(t);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection sampling avoids modulo bias.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

Matrix Rng::matrix(Eigen::Index rows, Eigen::Index cols, Distribution dist) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = dist == Distribution::uniform ? uniform() : normal();
    return m;
}

Matrix seeded_random_matrix(Eigen::Index rows, Eigen::Index cols,
                            Distribution dist, std::uint64_t seed) {
    Rng rng(seed);
    return rng.matrix(rows, cols, dist);
}

double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& a) { return a.allFinite(); }

}  // namespace clar
