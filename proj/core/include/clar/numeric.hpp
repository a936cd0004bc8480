#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace clar {

/// Dense real matrix. Storage is Eigen's default column-major order.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thin SVD A = U * diag(sigma) * V^T with sigma nonincreasing.
struct SingularSystem {
    Matrix U;      // m x r
    Vector sigma;  // r
    Matrix V;      // n x r

    Eigen::Index rank() const { return sigma.size(); }
    Matrix reconstruct() const;
};

enum class SvdMode { full, skinny };

/// Default relative cut-off for skinny SVDs (relative to sigma_1).
inline constexpr double kSkinnyTolerance = 1e-8;

/// Full mode keeps all min(m, n) triplets. Skinny mode keeps the triplets
/// with sigma_i > tol * sigma_1 and returns rank 0 for the zero matrix.
/// Throws NumericalError if the decomposition does not converge.
SingularSystem svd(const Matrix& a, SvdMode mode = SvdMode::full,
                   double tol = kSkinnyTolerance);

/// Cholesky factorization of a symmetric positive definite matrix, kept so
/// repeated solves against the same system reuse it.
class SpdFactorization {
public:
    explicit SpdFactorization(const Matrix& g);

    Matrix solve(const Matrix& b) const;
    Eigen::Index size() const { return llt_.rows(); }

private:
    Eigen::LLT<Matrix> llt_;
};

/// Solves G * S = B for SPD G.
Matrix solve_spd(const Matrix& g, const Matrix& b);

enum class Distribution { standard_normal, uniform };

/// Deterministic matrix fill. Entries are drawn in column-major order from a
/// std::mt19937_64 stream; uniform values are the top 53 bits scaled to
/// [0, 1) and normals come from the Box-Muller transform of two uniforms.
/// Both transforms are spelled out here (instead of using <random>
/// distributions) so results match across standard library implementations.
Matrix seeded_random_matrix(Eigen::Index rows, Eigen::Index cols,
                            Distribution dist, std::uint64_t seed);

/// Portable generator behind seeded_random_matrix, reusable for any
/// stream that must replay bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double normal();
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    Matrix matrix(Eigen::Index rows, Eigen::Index cols, Distribution dist);

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

/// Largest absolute entry.
double max_abs(const Matrix& a);

/// True if every entry is finite.
bool all_finite(const Matrix& a);

}  // namespace clar
