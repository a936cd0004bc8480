#include "clar/pipeline.hpp"

#include <chrono>

namespace clar {

PipelineResult run_pipeline(const Dataset& data, const PipelineOptions& opts) {
    const int k = opts.k > 0 ? opts.k : data.k;
    if (k < 1)
        throw ValidationError(data.name + ": cluster count unknown; set k explicitly");
    if (k > data.X.cols())
        throw ValidationError(data.name + ": k = " + std::to_string(k) + " exceeds " +
                              std::to_string(data.X.cols()) + " samples");

    const auto start = std::chrono::steady_clock::now();
    PipelineResult r;
    r.solve = solve(data.X, opts.solver);
    r.graph = build_affinity(r.solve.Z, opts.phi);
    r.labels = spectral_cluster(r.graph, k, opts.seed, opts.spectral);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (data.truth) {
        r.report = clustering_error(r.labels, *data.truth);
        r.report->seconds = r.seconds;
    }
    return r;
}

}  // namespace clar
