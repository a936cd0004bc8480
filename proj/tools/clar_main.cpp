#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clar_tools/commands.hpp"

namespace {

using clar::tools::RunManifest;

// Flags that override (or, without --manifest, define) manifest keys.
struct ManifestFlags {
    std::string manifest_path;
    std::optional<std::string> dataset, error_norm, out;
    std::optional<double> lambda, mu0, gamma, mu_max, tol;
    std::optional<int> max_iters, phi, k, restarts;
    std::optional<std::uint64_t> seed;
    bool no_timing = false;

    void attach(CLI::App& app, bool with_dataset) {
        app.add_option("--manifest", manifest_path, "Run manifest (key = value file)")
            ->check(CLI::ExistingFile);
        if (with_dataset)
            app.add_option("--dataset", dataset, "Dataset directory or synth:<spec file>");
        app.add_option("--lambda", lambda, "Error trade-off weight (required)");
        app.add_option("--mu0", mu0, "Initial penalty (default 0.4)");
        app.add_option("--gamma", gamma, "Penalty growth factor (default 1.1)");
        app.add_option("--mu-max", mu_max, "Penalty cap (default 1e8)");
        app.add_option("--max-iters", max_iters, "Iteration limit (default 100)");
        app.add_option("--tol", tol, "Relative stopping tolerance (default 1e-5)");
        app.add_option("--error-norm", error_norm, "fro2, l1 or l21 (default fro2)");
        app.add_option("--phi", phi, "Affinity sharpness exponent (default 2)");
        app.add_option("--k", k, "Number of clusters (default: from labels)");
        app.add_option("--seed", seed, "Clustering seed (default 0)");
        app.add_option("--restarts", restarts, "k-means restarts (default 50)");
        app.add_option("--out", out, "Output directory (default out)");
        app.add_flag("--no-timing", no_timing, "Write 0 for timing fields");
    }

    RunManifest resolve() const {
        RunManifest m = manifest_path.empty() ? RunManifest{} : clar::tools::load_manifest(manifest_path);
        if (dataset) m.dataset = *dataset;
        if (lambda) m.solver.lambda = *lambda;
        if (mu0) m.solver.mu0 = *mu0;
        if (gamma) m.solver.gamma = *gamma;
        if (mu_max) m.solver.mu_max = *mu_max;
        if (max_iters) m.solver.max_iters = *max_iters;
        if (tol) m.solver.rel_tol = *tol;
        if (error_norm) m.solver.error_norm = clar::parse_error_norm(*error_norm);
        if (phi) m.phi = *phi;
        if (k) m.k = *k;
        if (seed) m.seed = *seed;
        if (restarts) m.restarts = *restarts;
        if (out) m.out = *out;
        if (no_timing) m.timing = false;
        return m;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-rank subspace clustering with a log-determinant rank surrogate"};
    app.require_subcommand(1);

    ManifestFlags cluster_flags;
    auto* cluster = app.add_subcommand("cluster", "Solve, build the affinity graph, cluster and evaluate");
    cluster_flags.attach(*cluster, true);

    ManifestFlags sweep_flags;
    std::string sweep_param = "lambda";
    std::vector<double> sweep_values;
    int sweep_repeats = 1;
    auto* sweep = app.add_subcommand("sweep", "Repeat the pipeline over a parameter grid");
    sweep_flags.attach(*sweep, true);
    sweep->add_option("--param", sweep_param, "lambda, phi or gamma")->capture_default_str();
    sweep->add_option("--values", sweep_values, "Comma-separated parameter values")
        ->delimiter(',')
        ->required();
    sweep->add_option("--repeats", sweep_repeats, "Replicates per value (synthetic data is redrawn)")
        ->capture_default_str();

    std::string synth_spec, synth_out;
    int synth_count = 1;
    auto* synth = app.add_subcommand("synth", "Write synthetic union-of-subspaces datasets");
    synth->add_option("--spec", synth_spec, "Synthetic spec (key = value file)")
        ->required()
        ->check(CLI::ExistingFile);
    synth->add_option("--out", synth_out, "Benchmark directory to populate")->required();
    synth->add_option("--count", synth_count, "Number of datasets (consecutive seeds)")
        ->capture_default_str();

    ManifestFlags bench_flags;
    std::string bench_dir;
    int bench_jobs = 1;
    auto* bench = app.add_subcommand("bench", "Run every dataset in a benchmark directory");
    bench->add_option("dir", bench_dir, "Directory of dataset subdirectories")->required();
    bench_flags.attach(*bench, false);
    bench->add_option("--jobs", bench_jobs, "Datasets processed in parallel")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : clar::tools::kValidation;
    }

    using namespace clar::tools;
    auto& out = std::cout;
    auto& err = std::cerr;
    if (*cluster)
        return guarded(err, [&] { return cmd_cluster(cluster_flags.resolve(), out, err); });
    if (*sweep)
        return guarded(err, [&] {
            return cmd_sweep(sweep_flags.resolve(), parse_sweep_parameter(sweep_param),
                             sweep_values, sweep_repeats, out, err);
        });
    if (*synth) return cmd_synth(synth_spec, synth_out, synth_count, out, err);
    return guarded(err, [&] {
        RunManifest m = bench_flags.resolve();
        return cmd_bench(bench_dir, m, bench_jobs, out, err);
    });
}
