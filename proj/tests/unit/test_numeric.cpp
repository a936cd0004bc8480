#include "doctest.h"

#include <cstring>

#include "clar/error.hpp"
#include "clar/numeric.hpp"

using namespace clar;

namespace {

void check_singular_system(const SingularSystem& s, const Matrix& a) {
    for (Eigen::Index i = 0; i < s.rank(); ++i) {
        CHECK(s.sigma(i) >= 0.0);
        if (i > 0) CHECK(s.sigma(i) <= s.sigma(i - 1));
    }
    const Matrix iu = Matrix::Identity(s.rank(), s.rank());
    CHECK(max_abs(s.U.transpose() * s.U - iu) <= 1e-8);
    CHECK(max_abs(s.V.transpose() * s.V - iu) <= 1e-8);
    CHECK((s.reconstruct() - a).norm() <= 1e-7 * std::max(1.0, a.norm()));
}

}  // namespace

TEST_CASE("svd of the identity has unit singular values") {
    const SingularSystem s = svd(Matrix::Identity(3, 3));
    REQUIRE(s.rank() == 3);
    CHECK(max_abs(s.sigma - Vector::Ones(3)) <= 1e-15);
}

TEST_CASE("skinny svd of a zero matrix is rank 0") {
    const SingularSystem s = svd(Matrix::Zero(2, 4), SvdMode::skinny, 1e-10);
    CHECK(s.rank() == 0);
    CHECK(s.U.rows() == 2);
    CHECK(s.V.rows() == 4);
}

TEST_CASE("skinny svd drops values below the relative threshold") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 1e-12;
    const SingularSystem s = svd(a, SvdMode::skinny, 1e-8);
    REQUIRE(s.rank() == 1);
    CHECK(s.sigma(0) == doctest::Approx(3.0));
}

TEST_CASE("svd rejects non-finite input") {
    Matrix a = Matrix::Ones(2, 2);
    a(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(a), NumericalError);
}

TEST_CASE("full svd reconstructs random matrices") {
    Rng dims(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = static_cast<Eigen::Index>(1 + dims.below(50));
        const auto n = static_cast<Eigen::Index>(1 + dims.below(50));
        const Matrix a = seeded_random_matrix(m, n, Distribution::standard_normal, 100 + trial);
        const SingularSystem s = svd(a);
        CHECK(s.rank() == std::min(m, n));
        check_singular_system(s, a);
    }
}

TEST_CASE("skinny svd rank matches constructed rank") {
    for (int r = 0; r <= 6; ++r) {
        const Matrix left = seeded_random_matrix(12, r, Distribution::standard_normal, 7 + r);
        const Matrix right = seeded_random_matrix(r, 9, Distribution::standard_normal, 70 + r);
        const Matrix a = r == 0 ? Matrix::Zero(12, 9) : Matrix(left * right);
        const SingularSystem s = svd(a, SvdMode::skinny);
        CHECK(s.rank() == r);
        if (r > 0) check_singular_system(s, a);
    }
}

TEST_CASE("solve_spd on trivial systems") {
    const Matrix b = seeded_random_matrix(3, 2, Distribution::standard_normal, 3);
    CHECK(max_abs(solve_spd(Matrix::Identity(3, 3), b) - b) == 0.0);
    const Matrix half = solve_spd(2.0 * Matrix::Identity(3, 3), Matrix::Identity(3, 3));
    CHECK(max_abs(half - 0.5 * Matrix::Identity(3, 3)) <= 1e-15);
}

TEST_CASE("solve_spd residual bound on random SPD systems") {
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix m = seeded_random_matrix(8, 8, Distribution::standard_normal, 500 + trial);
        Matrix g = m.transpose() * m + Matrix::Identity(8, 8);
        g = (0.5 * (g + g.transpose())).eval();
        const Matrix b = seeded_random_matrix(8, 3, Distribution::standard_normal, 900 + trial);
        const Matrix s = solve_spd(g, b);
        CHECK((g * s - b).norm() <= 1e-8 * std::max(1.0, b.norm()));
    }
}

TEST_CASE("solve_spd rejects indefinite and asymmetric systems") {
    Matrix g = Matrix::Identity(2, 2);
    g(1, 1) = -1.0;
    CHECK_THROWS_AS(solve_spd(g, Matrix::Ones(2, 1)), NumericalError);
    Matrix h = Matrix::Identity(2, 2);
    h(0, 1) = 0.5;
    CHECK_THROWS_AS(solve_spd(h, Matrix::Ones(2, 1)), ValidationError);
}

TEST_CASE("seeded random matrices are deterministic") {
    const Matrix a = seeded_random_matrix(2, 2, Distribution::standard_normal, 7);
    const Matrix b = seeded_random_matrix(2, 2, Distribution::standard_normal, 7);
    CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * 4) == 0);
    const Matrix c = seeded_random_matrix(2, 2, Distribution::standard_normal, 8);
    CHECK(max_abs(a - c) > 0.0);
}

TEST_CASE("standard normal sample mean is near zero") {
    const Matrix a = seeded_random_matrix(1000, 1, Distribution::standard_normal, 1);
    CHECK(std::abs(a.mean()) <= 0.15);
}

TEST_CASE("uniform entries lie in [0, 1)") {
    const Matrix a = seeded_random_matrix(3, 3, Distribution::uniform, 0);
    CHECK(a.minCoeff() >= 0.0);
    CHECK(a.maxCoeff() < 1.0);
}

TEST_CASE("Rng::below stays in range") {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) CHECK(rng.below(7) < 7u);
}
