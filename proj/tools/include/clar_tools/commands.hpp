#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "clar_tools/manifest.hpp"

namespace clar::tools {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kNumerical = 3,
    kIo = 4,
};

int exit_code_for(const Error& e);

/// Runs `body`, mapping clar errors to exit codes and printing the
/// diagnostic to `err`.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    }
}

/// Solve, graph, cluster and evaluate one dataset. Writes Z.bin, E.bin,
/// labels.csv, trace.csv, report.csv and manifest.txt to manifest.out.
int cmd_cluster(const RunManifest& manifest, std::ostream& log, std::ostream& err);

enum class SweepParameter { lambda, phi, gamma };
SweepParameter parse_sweep_parameter(const std::string& name);

/// One sub-run per value (times `repeats` replicates); writes sweep.csv with
/// `value,mean_error,median_error,mean_seconds`.
int cmd_sweep(const RunManifest& manifest, SweepParameter parameter,
              const std::vector<double>& values, int repeats, std::ostream& log,
              std::ostream& err);

/// Writes `count` datasets (seeds spec.seed, spec.seed + 1, ...) into
/// `out_dir`, one subdirectory each, in the benchmark-directory layout.
int cmd_synth(const std::filesystem::path& spec_file, const std::filesystem::path& out_dir,
              int count, std::ostream& log, std::ostream& err);

/// Runs every dataset under `bench_dir` with the manifest's settings (its
/// `dataset` key is ignored). Writes report.csv (one row per dataset) and
/// table.csv (mean and median rows per cluster count) to manifest.out.
int cmd_bench(const std::filesystem::path& bench_dir, const RunManifest& defaults,
              int jobs, std::ostream& log, std::ostream& err);

}  // namespace clar::tools
