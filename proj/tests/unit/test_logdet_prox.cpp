#include "doctest.h"

#include <cmath>

#include "clar/error.hpp"
#include "clar/logdet_prox.hpp"
#include "oracles.hpp"

using namespace clar;

TEST_CASE("logdet_value examples") {
    CHECK(logdet_value(Matrix::Zero(3, 3)) == 0.0);
    CHECK(logdet_value(Matrix::Identity(3, 3)) == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-14));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2.0;
    CHECK(logdet_value(d) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
}

TEST_CASE("logdet_value agrees with the determinant route") {
    for (int t = 0; t < 20; ++t) {
        const Matrix z = seeded_random_matrix(7, 5, Distribution::standard_normal, 40 + t);
        CHECK(logdet_value(z) == doctest::Approx(oracle::logdet_by_cholesky(z)).epsilon(1e-12));
    }
}

TEST_CASE("logdet is bounded by the nuclear norm") {
    for (int t = 0; t < 200; ++t) {
        const double scale = 0.01 * std::pow(10.0, (t % 5));
        const Matrix z = scale * seeded_random_matrix(6, 4, Distribution::standard_normal, 1000 + t);
        CHECK(logdet_value(z) <= svd(z).sigma.sum() + 1e-12);
    }
}

TEST_CASE("scalar_prox examples") {
    CHECK(scalar_prox({0.0, 0.3}) == 0.0);
    CHECK(scalar_prox({0.0, 50.0}) == 0.0);
    // Unique real root of s^3 - 2 s^2 + 3 s - 2.
    CHECK(scalar_prox({2.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    // Frozen grid-search value.
    const double big = scalar_prox({10.0, 100.0});
    CHECK(big == doctest::Approx(9.998019415).epsilon(1e-9));
    CHECK(10.0 - big < 2.5e-3);
}

TEST_CASE("scalar_prox rejects beta <= 1/4 and bad targets") {
    CHECK_THROWS_AS(scalar_prox({1.0, 0.25}), ValidationError);
    CHECK_THROWS_AS(scalar_prox({1.0, 0.1}), ValidationError);
    CHECK_THROWS_AS(scalar_prox({-1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(scalar_prox({std::nan(""), 1.0}), ValidationError);
}

TEST_CASE("scalar_prox shrinks, is stationary and beats random points") {
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        const ScalarProxProblem p{100.0 * rng.uniform(), 0.25 + 1e-3 + 20.0 * rng.uniform()};
        const double s = scalar_prox(p);
        CHECK(s >= 0.0);
        CHECK(s < p.target);
        CHECK(std::abs(p.stationarity(s)) <= 1e-10);
        const double fs = p.objective(s);
        for (int i = 0; i < 1000; ++i) CHECK(fs <= p.objective(150.0 * rng.uniform()));
    }
}

TEST_CASE("scalar_prox is nondecreasing in beta") {
    for (double target : {0.1, 0.9, 1.7, 3.0, 12.0}) {
        double prev = 0.0;
        for (double beta : {0.3, 0.5, 1.0, 5.0, 50.0}) {
            const double s = scalar_prox({target, beta});
            CHECK(s >= prev);
            prev = s;
        }
    }
}

TEST_CASE("scalar_prox near the beta = 1/4 boundary matches the grid oracle") {
    for (double target : {0.5, 1.5, 1.732, 2.5, 4.0, 40.0})
        for (double beta : {0.2501, 0.26, 0.3}) {
            const double s = scalar_prox({target, beta});
            CHECK(s == doctest::Approx(oracle::scalar_prox_grid(target, beta)).epsilon(1e-6));
        }
}

TEST_CASE("matrix_prox examples") {
    CHECK(matrix_prox(Matrix::Zero(3, 2), 1.0).norm() == 0.0);
    const Matrix j = matrix_prox(2.0 * Matrix::Identity(2, 2), 1.0);
    CHECK(max_abs(j - Matrix::Identity(2, 2)) <= 1e-12);
    CHECK_THROWS_AS(matrix_prox(Matrix::Identity(2, 2), 0.2), ValidationError);
}

TEST_CASE("matrix_prox matches gradient descent on the full objective") {
    const Matrix a = 2.0 * seeded_random_matrix(6, 6, Distribution::standard_normal, 17);
    const Matrix j = matrix_prox(a, 0.4);
    const Matrix ref = oracle::matrix_prox_descent(a, 0.4);
    CHECK((j - ref).norm() <= 1e-4);
    CHECK(oracle::matrix_prox_objective(j, a, 0.4) <=
          oracle::matrix_prox_objective(ref, a, 0.4) + 1e-10);
}

TEST_CASE("matrix_prox shrinks every singular value") {
    for (int t = 0; t < 20; ++t) {
        const Matrix a = 3.0 * seeded_random_matrix(5, 7, Distribution::standard_normal, 60 + t);
        const Matrix j = matrix_prox(a, 0.3 + t);
        const Vector sa = svd(a).sigma;
        const Vector sj = svd(j).sigma;
        for (Eigen::Index i = 0; i < sa.size(); ++i) CHECK(sj(i) <= sa(i) + 1e-12);
        CHECK(j.norm() <= a.norm());
    }
}

TEST_CASE("matrix_prox is unitarily invariant") {
    for (int t = 0; t < 10; ++t) {
        const Matrix a = 2.0 * seeded_random_matrix(5, 4, Distribution::standard_normal, 80 + t);
        const Matrix q1 = oracle::random_orthogonal(
            seeded_random_matrix(5, 5, Distribution::standard_normal, 180 + t));
        const Matrix q2 = oracle::random_orthogonal(
            seeded_random_matrix(4, 4, Distribution::standard_normal, 280 + t));
        const Matrix lhs = matrix_prox(q1 * a * q2.transpose(), 0.7);
        const Matrix rhs = q1 * matrix_prox(a, 0.7) * q2.transpose();
        CHECK(max_abs(lhs - rhs) <= 1e-8);
    }
}
