#pragma once

#include <cstdint>
#include <optional>

#include "clar/affinity.hpp"
#include "clar/alm_solver.hpp"
#include "clar/data_io.hpp"
#include "clar/evaluation.hpp"
#include "clar/spectral.hpp"

namespace clar {

struct PipelineOptions {
    SolverConfig solver;
    int phi = 2;
    int k = 0;  // 0: take the dataset's k
    std::uint64_t seed = 0;
    SpectralOptions spectral;
};

struct PipelineResult {
    SolveResult solve;
    AffinityGraph graph;
    ClusterLabels labels;
    std::optional<EvalReport> report;  // present when the dataset has truth
    double seconds = 0.0;              // solve through clustering
};

/// Coefficient solve, affinity graph, spectral clustering and, if truth is
/// available, the error rate.
PipelineResult run_pipeline(const Dataset& data, const PipelineOptions& opts);

}  // namespace clar
