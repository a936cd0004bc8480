#include "doctest.h"

#include <cmath>
#include <cstring>
#include <sstream>

#include <Eigen/LU>

#include "clar/alm_solver.hpp"
#include "clar/data_io.hpp"
#include "clar/logdet_prox.hpp"

using namespace clar;

namespace {

SolverConfig config(double lambda = 10.0, ErrorNorm norm = ErrorNorm::fro2) {
    SolverConfig c;
    c.lambda = lambda;
    c.error_norm = norm;
    return c;
}

SolverState random_state(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
    Rng rng(seed);
    SolverState s;
    s.Z = rng.matrix(n, n, Distribution::standard_normal);
    s.J = rng.matrix(n, n, Distribution::standard_normal);
    s.E = rng.matrix(m, n, Distribution::standard_normal);
    s.Y1 = rng.matrix(n, n, Distribution::standard_normal);
    s.Y2 = rng.matrix(m, n, Distribution::standard_normal);
    s.mu = 0.9;
    return s;
}

Matrix synthetic_x(std::uint64_t seed = 1) {
    SynthSpec spec;
    spec.points_per_subspace = 20;
    spec.seed = seed;
    return generate_synthetic(spec).X;
}

}  // namespace

TEST_CASE("config validation") {
    CHECK_NOTHROW(config().validate());
    SolverConfig c = config();
    c.lambda = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = config();
    c.mu0 = 0.25;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = config();
    c.gamma = 1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = config();
    c.max_iters = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("update_z trivial cases") {
    const Eigen::Index m = 3, n = 4;
    {
        const Matrix x = Matrix::Zero(m, n);
        SolverState s = random_state(m, n, 1);
        s.J = Matrix::Identity(n, n);
        s.Y1.setZero();
        s.Y2.setZero();
        const SpdFactorization gram(Matrix::Identity(n, n));
        CHECK(max_abs(update_z(s, x, gram) - Matrix::Identity(n, n)) <= 1e-15);
    }
    {
        const Matrix x = seeded_random_matrix(m, n, Distribution::standard_normal, 2);
        SolverState s = random_state(m, n, 3);
        s.E = x;
        s.J.setZero();
        s.Y1.setZero();
        s.Y2.setZero();
        Matrix g = x.transpose() * x + Matrix::Identity(n, n);
        g = (0.5 * (g + g.transpose())).eval();
        CHECK(update_z(s, x, SpdFactorization(g)).norm() <= 1e-14);
    }
}

TEST_CASE("update_z matches a dense LU solve of the normal equations") {
    const Matrix x = seeded_random_matrix(5, 8, Distribution::standard_normal, 4);
    const SolverState s = random_state(5, 8, 5);
    const Solver solver(x, config());
    const Matrix z = update_z(s, x, solver.gram());

    const Matrix g = Matrix::Identity(8, 8) + x.transpose() * x;
    const Matrix rhs = x.transpose() * (x - s.E) + s.J + (s.Y1 + x.transpose() * s.Y2) / s.mu;
    const Matrix ref = Eigen::FullPivLU<Matrix>(g).solve(rhs);
    CHECK((z - ref).norm() <= 1e-8 * std::max(1.0, ref.norm()));
    CHECK((g * z - rhs).norm() <= 1e-8 * std::max(1.0, rhs.norm()));
}

TEST_CASE("update_j examples") {
    const Eigen::Index n = 3;
    CHECK(update_j(Matrix::Zero(n, n), Matrix::Zero(n, n), 0.4).reconstruct().norm() == 0.0);
    const Matrix j = update_j(3.0 * Matrix::Identity(n, n), Matrix::Identity(n, n), 1.0).reconstruct();
    CHECK(max_abs(j - Matrix::Identity(n, n)) <= 1e-12);

    const Matrix z = 2.0 * seeded_random_matrix(6, 6, Distribution::standard_normal, 8);
    const Matrix y1 = seeded_random_matrix(6, 6, Distribution::standard_normal, 9);
    const double mu = 0.55;
    const SingularSystem js = update_j(z, y1, mu);
    const Vector target = svd(z - y1 / mu).sigma;
    for (Eigen::Index i = 0; i < target.size(); ++i) {
        const ScalarProxProblem p{target(i), mu};
        if (js.sigma(i) > 0) CHECK(std::abs(p.stationarity(js.sigma(i))) <= 1e-10);
    }
}

TEST_CASE("one step from initialization grows mu by gamma") {
    const Solver solver(synthetic_x(), config());
    SolverState s = solver.initial_state();
    CHECK(s.J == Matrix::Identity(s.J.rows(), s.J.cols()));
    const TraceRecord r = solver.step(s);
    CHECK(r.iter == 1);
    CHECK(r.mu == 0.4);
    CHECK(s.mu == doctest::Approx(0.44).epsilon(1e-15));
}

TEST_CASE("mu schedule, multiplier ascent and certificates along a run") {
    SolverConfig c = config();
    c.mu_max = 2.0;
    const Matrix x = synthetic_x(2);
    const Solver solver(x, c);
    SolverState s = solver.initial_state();
    double expected_mu = c.mu0;
    for (int t = 0; t < 25; ++t) {
        const SolverState before = s;
        const TraceRecord r = solver.step(s);
        CHECK(r.mu == expected_mu);
        CHECK(r.mu == doctest::Approx(std::min(c.mu0 * std::pow(c.gamma, t), c.mu_max)).epsilon(1e-12));
        expected_mu = std::min(c.gamma * expected_mu, c.mu_max);
        CHECK(s.mu == expected_mu);

        const Matrix dy1 = s.Y1 - before.Y1;
        CHECK(max_abs(dy1 - r.mu * (s.J - s.Z)) <= 1e-12 * std::max(1.0, max_abs(dy1)));
        const Matrix dy2 = s.Y2 - before.Y2;
        CHECK(max_abs(dy2 - r.mu * (x - x * s.Z - s.E)) <= 1e-10 * std::max(1.0, max_abs(dy2)));

        CHECK(s.Z.rows() == x.cols());
        CHECK(s.J.cols() == x.cols());
        CHECK(s.E.rows() == x.rows());
        CHECK(s.Y2.cols() == x.cols());
        CHECK(r.res_constraint >= 0.0);
        CHECK(r.res_split >= 0.0);

        const Vector target = svd(s.Z - before.Y1 / r.mu).sigma;
        const Vector kept = svd(s.J).sigma;
        for (Eigen::Index i = 0; i < kept.size(); ++i)
            if (kept(i) > 1e-9)
                CHECK(std::abs(ScalarProxProblem{target(i), r.mu}.stationarity(kept(i))) <= 1e-8);
    }
}

TEST_CASE("zero data drives every iterate to zero") {
    const Solver solver(Matrix::Zero(4, 5), config(1.0));
    SolverState s = solver.initial_state();
    for (int t = 0; t < 30; ++t) {
        solver.step(s);
        CHECK(s.E.norm() == 0.0);
    }
    CHECK(s.Z.norm() <= 1e-10);
    CHECK(s.J.norm() <= 1e-10);
}

TEST_CASE("a single sample solves") {
    Matrix x(3, 1);
    x << 1.0, -2.0, 0.5;
    const SolveResult r = solve(x, config(1.0));
    CHECK(r.Z.rows() == 1);
    CHECK(r.Z.cols() == 1);
    CHECK(std::isfinite(r.Z(0, 0)));
}

TEST_CASE("synthetic run converges with small residuals") {
    const Matrix x = synthetic_x(3);
    const SolveResult r = solve(x, config());
    REQUIRE(!r.trace.empty());
    const TraceRecord& last = r.trace.back();
    CHECK(last.res_constraint <= 1e-3 * x.norm());
    CHECK(last.res_constraint / x.norm() <= 1e-4);
    CHECK(last.res_split <= 1e-4);
    CHECK(r.status == SolveStatus::converged);
    CHECK(last.stop_metric <= 1e-5);
}

TEST_CASE("l1 and l21 runs stay finite") {
    const Matrix x = synthetic_x(4);
    for (ErrorNorm n : {ErrorNorm::l1, ErrorNorm::l21}) {
        const SolveResult r = solve(x, config(0.2, n));
        CHECK(all_finite(r.Z));
        CHECK(all_finite(r.E));
    }
}

TEST_CASE("solves are bitwise reproducible") {
    const Matrix x = synthetic_x(5);
    const SolveResult a = solve(x, config());
    const SolveResult b = solve(x, config());
    REQUIRE(a.Z.size() == b.Z.size());
    CHECK(std::memcmp(a.Z.data(), b.Z.data(), sizeof(double) * static_cast<std::size_t>(a.Z.size())) == 0);
}

TEST_CASE("non-finite iterates raise a divergence error") {
    const Solver solver(synthetic_x(), config());
    SolverState s = solver.initial_state();
    s.Y1(0, 0) = std::numeric_limits<double>::infinity();
    try {
        solver.step(s);
        FAIL("expected divergence");
    } catch (const DivergenceError& e) {
        CHECK(std::string(e.what()).find("Z at iteration 1") != std::string::npos);
    }
}

TEST_CASE("solver rejects bad data") {
    Matrix x = Matrix::Ones(2, 2);
    x(0, 0) = std::nan("");
    CHECK_THROWS_AS(Solver(x, config()), ValidationError);
}

TEST_CASE("trace csv layout") {
    IterationTrace t(2);
    t[0].iter = 1;
    t[0].mu = 0.4;
    t[0].seconds = 0.25;
    t[1].iter = 2;
    std::ostringstream os;
    write_trace_csv(os, t, false);
    CHECK(os.str() ==
          "iter,res_constraint,res_split,logdet,rel_change_z,mu,seconds\n"
          "1,0,0,0,0,0.4,0\n"
          "2,0,0,0,0,0,0\n");
}
