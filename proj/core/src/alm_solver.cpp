#include "clar/alm_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "clar/format.hpp"
#include "clar/logdet_prox.hpp"

namespace clar {

namespace {

Matrix gram_system(const Matrix& x) {
    Matrix g = x.transpose() * x;
    g.diagonal().array() += 1.0;
    // Exact symmetry; the product can differ in the last bit across triangles.
    return 0.5 * (g + g.transpose());
}

Matrix checked_data(Matrix x) {
    if (x.size() == 0) throw ValidationError("solver: data matrix is empty");
    if (!all_finite(x)) throw ValidationError("solver: data matrix has non-finite entries");
    return x;
}

SolverConfig validated(const SolverConfig& c) {
    c.validate();
    return c;
}

void check_finite(const Matrix& m, const char* name, int iter) {
    if (!all_finite(m))
        throw DivergenceError("solver diverged: non-finite entries in " +
                              std::string(name) + " at iteration " +
                              std::to_string(iter));
}

}  // namespace

void SolverConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ValidationError("solver config: " + msg); };
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail("lambda must be > 0");
    if (!(mu0 > 0.25) || !std::isfinite(mu0)) fail("mu0 must be > 0.25");
    if (!(gamma > 1.0) || !std::isfinite(gamma)) fail("gamma must be > 1");
    if (!(mu_max >= mu0)) fail("mu_max must be >= mu0");
    if (max_iters < 1) fail("max_iters must be >= 1");
    if (!(rel_tol > 0.0)) fail("tol must be > 0");
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace, bool timing) {
    out << "iter,res_constraint,res_split,logdet,rel_change_z,mu,seconds\n";
    for (const TraceRecord& r : trace) {
        out << r.iter << ',' << format_real(r.res_constraint) << ','
            << format_real(r.res_split) << ',' << format_real(r.logdet) << ','
            << format_real(r.rel_change_z) << ',' << format_real(r.mu) << ','
            << format_real(timing ? r.seconds : 0.0) << '\n';
    }
}

Matrix update_z(const SolverState& state, const Matrix& x,
                const SpdFactorization& gram) {
    const Matrix xt = x.transpose();
    const Matrix rhs = xt * (x - state.E) + state.J +
                       (state.Y1 + xt * state.Y2) / state.mu;
    return gram.solve(rhs);
}

SingularSystem update_j(const Matrix& z_next, const Matrix& y1, double mu) {
    return prox_singular_system(z_next - y1 / mu, mu);
}

Solver::Solver(Matrix x, SolverConfig config)
    : x_(checked_data(std::move(x))),
      config_(validated(config)),
      gram_(gram_system(x_)),
      x_norm_(x_.norm()) {}

SolverState Solver::initial_state() const {
    const Eigen::Index m = x_.rows();
    const Eigen::Index n = x_.cols();
    return SolverState{Matrix::Zero(n, n), Matrix::Identity(n, n),
                       Matrix::Zero(m, n), Matrix::Zero(n, n),
                       Matrix::Zero(m, n), config_.mu0, 0};
}

TraceRecord Solver::step(SolverState& s) const {
    const int iter = s.iter + 1;
    const double mu = s.mu;

    Matrix z = update_z(s, x_, gram_);
    check_finite(z, "Z", iter);

    const SingularSystem j_sys = update_j(z, s.Y1, mu);
    Matrix j = j_sys.reconstruct();
    check_finite(j, "J", iter);

    const Matrix xz = x_ * z;
    Matrix e = update_error(config_.error_norm, x_, xz, s.Y2, mu, config_.lambda);
    check_finite(e, "E", iter);

    const Matrix constraint = x_ - xz - e;
    const Matrix split = j - z;
    s.Y1 += mu * split;
    s.Y2 += mu * constraint;
    check_finite(s.Y1, "Y1", iter);
    check_finite(s.Y2, "Y2", iter);

    TraceRecord r;
    r.iter = iter;
    r.res_constraint = constraint.norm();
    r.res_split = split.norm();
    r.logdet = j_sys.sigma.unaryExpr([](double v) { return std::log1p(v * v); }).sum();
    r.rel_change_z = (z - s.Z).norm() / std::max(1.0, s.Z.norm());
    r.mu = mu;

    s.Z = std::move(z);
    s.J = std::move(j);
    s.E = std::move(e);
    s.mu = std::min(config_.gamma * mu, config_.mu_max);
    s.iter = iter;

    r.stop_metric = stop_metric(r, s);
    return r;
}

double Solver::stop_metric(const TraceRecord& r, const SolverState& s) const {
    const double x_scale = x_norm_ > 0.0 ? x_norm_ : 1.0;
    return std::max({r.rel_change_z, r.res_constraint / x_scale,
                     r.res_split / std::max(1.0, s.Z.norm())});
}

SolveResult Solver::solve() const {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    SolveResult result;
    SolverState state = initial_state();
    result.trace.reserve(static_cast<std::size_t>(config_.max_iters));
    while (state.iter < config_.max_iters) {
        TraceRecord r = step(state);
        r.seconds = std::chrono::duration<double>(clock::now() - start).count();
        result.trace.push_back(r);
        if (r.stop_metric <= config_.rel_tol) {
            result.status = SolveStatus::converged;
            break;
        }
    }
    result.Z = std::move(state.Z);
    result.E = std::move(state.E);
    return result;
}

SolveResult solve(const Matrix& x, const SolverConfig& config) {
    return Solver(x, config).solve();
}

}  // namespace clar
