#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "clar/error.hpp"
#include "clar/error_prox.hpp"
#include "clar/numeric.hpp"

namespace clar {

/// Augmented Lagrangian parameters for
///     min logdet(I + Z^T Z) + lambda ||E||  s.t.  X = XZ + E.
struct SolverConfig {
    double lambda = 0.0;  // no default; must be set
    double mu0 = 0.4;
    double gamma = 1.1;
    double mu_max = 1e8;
    int max_iters = 100;
    double rel_tol = 1e-5;
    ErrorNorm error_norm = ErrorNorm::fro2;

    /// Throws ValidationError. mu0 must exceed 1/4 so every J step has a
    /// unique minimizer; mu never decreases afterwards.
    void validate() const;
};

/// Iterate (Z, J, E, Y1, Y2, mu). Z, J, Y1 are n x n; E, Y2 are m x n.
struct SolverState {
    Matrix Z;
    Matrix J;
    Matrix E;
    Matrix Y1;
    Matrix Y2;
    double mu = 0.0;
    int iter = 0;
};

/// Diagnostics for one completed iteration.
struct TraceRecord {
    int iter = 0;                // 1-based
    double res_constraint = 0;   // ||X - XZ - E||_F
    double res_split = 0;        // ||J - Z||_F
    double logdet = 0;           // logdet(I + J^T J)
    double rel_change_z = 0;     // ||Z+ - Z||_F / max(1, ||Z||_F)
    double mu = 0;               // penalty used during the iteration
    double seconds = 0;          // wall clock since the solve started
    double stop_metric = 0;
};

using IterationTrace = std::vector<TraceRecord>;

/// Writes `iter,res_constraint,res_split,logdet,rel_change_z,mu,seconds`
/// rows. With `timing` false the seconds column is written as 0 so the file
/// is reproducible byte for byte.
void write_trace_csv(std::ostream& out, const IterationTrace& trace,
                     bool timing = true);

enum class SolveStatus { converged, max_iters };

struct SolveResult {
    Matrix Z;
    Matrix E;
    IterationTrace trace;
    SolveStatus status = SolveStatus::max_iters;
};

/// Non-finite iterate; reports the iteration and the offending variable.
struct DivergenceError : NumericalError {
    using NumericalError::NumericalError;
};

/// Z step: solves (I + X^T X) Z = X^T (X - E) + J + (Y1 + X^T Y2) / mu.
Matrix update_z(const SolverState& state, const Matrix& x,
                const SpdFactorization& gram);

/// J step: logdet prox of Z+ - Y1 / mu with weight mu.
SingularSystem update_j(const Matrix& z_next, const Matrix& y1, double mu);

/// The ALM iteration bound to one data matrix. Factorizes I + X^T X once
/// on construction; a Solver is immutable afterwards, so independent
/// solves may share it across threads.
class Solver {
public:
    Solver(Matrix x, SolverConfig config);

    /// J = I, E = 0, Y1 = Y2 = 0, Z = 0, mu = mu0.
    SolverState initial_state() const;

    /// One pass of Z, J, E, multiplier and penalty updates. Throws
    /// DivergenceError on any non-finite iterate.
    TraceRecord step(SolverState& state) const;

    /// Max of the relative Z change, the relative constraint residual
    /// ||X - XZ - E|| / ||X|| and ||J - Z|| / max(1, ||Z||).
    double stop_metric(const TraceRecord& record, const SolverState& state) const;

    SolveResult solve() const;

    const Matrix& data() const { return x_; }
    const SolverConfig& config() const { return config_; }
    const SpdFactorization& gram() const { return gram_; }

private:
    Matrix x_;
    SolverConfig config_;
    SpdFactorization gram_;
    double x_norm_;
};

SolveResult solve(const Matrix& x, const SolverConfig& config);

}  // namespace clar
