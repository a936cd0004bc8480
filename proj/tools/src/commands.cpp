#include "clar_tools/commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "clar/format.hpp"

namespace clar::tools {

namespace fs = std::filesystem;

namespace {

std::string status_name(SolveStatus s) {
    return s == SolveStatus::converged ? "converged" : "max-iters";
}

std::string error_text(const std::optional<EvalReport>& rep) {
    return rep ? format_real(rep->error_rate) : std::string("n/a");
}

void print_summary(std::ostream& log, const Dataset& data, int k, const PipelineResult& r) {
    log << data.name << ": n=" << data.X.cols() << " k=" << k
        << " iters=" << r.solve.trace.size() << " status=" << status_name(r.solve.status)
        << " error_rate=" << error_text(r.report) << " seconds=" << format_real(r.seconds)
        << '\n';
}

ReportRow report_row(const Dataset& data, int k, const PipelineResult& r) {
    ReportRow row;
    row.dataset = data.name;
    row.n = static_cast<std::size_t>(data.X.cols());
    row.k = k;
    if (r.report) row.error_rate = r.report->error_rate;
    row.seconds = r.seconds;
    return row;
}

std::string csv_text(const std::vector<ReportRow>& rows, bool timing) {
    std::ostringstream os;
    write_report_csv(os, rows, timing);
    return os.str();
}

}  // namespace

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::validation: return kValidation;
        case ErrorKind::numerical: return kNumerical;
        case ErrorKind::io: return kIo;
    }
    return kNumerical;
}

int cmd_cluster(const RunManifest& manifest, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        manifest.validate();
        const Dataset data = resolve_dataset(manifest.dataset);
        for (const auto& w : data.warnings) err << "warning: " << w << '\n';

        const PipelineOptions opts = manifest.pipeline_options();
        const PipelineResult r = run_pipeline(data, opts);
        const int k = r.labels.k;

        const fs::path out = manifest.out;
        fs::create_directories(out);
        save_matrix(out / "Z.bin", r.solve.Z, MatrixFormat::binary);
        save_matrix(out / "E.bin", r.solve.E, MatrixFormat::binary);
        save_labels(out / "labels.csv", r.labels);

        std::ostringstream trace;
        write_trace_csv(trace, r.solve.trace, manifest.timing);
        write_file_atomic(out / "trace.csv", trace.str());
        write_file_atomic(out / "report.csv",
                          csv_text({report_row(data, k, r)}, manifest.timing));
        write_file_atomic(out / "manifest.txt", manifest.serialize());

        if (r.graph.degenerate())
            err << "warning: " << data.name << ": coefficient matrix has rank 0\n";
        print_summary(log, data, k, r);
        return kOk;
    });
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "lambda") return SweepParameter::lambda;
    if (name == "phi") return SweepParameter::phi;
    if (name == "gamma") return SweepParameter::gamma;
    throw ValidationError("unknown sweep parameter '" + name + "' (expected lambda, phi or gamma)");
}

int cmd_sweep(const RunManifest& manifest, SweepParameter parameter,
              const std::vector<double>& values, int repeats, std::ostream& log,
              std::ostream& err) {
    return guarded(err, [&] {
        manifest.validate();
        if (values.empty()) throw ValidationError("sweep: at least one value is required");
        if (repeats < 1) throw ValidationError("sweep: repeats must be >= 1");

        std::vector<Dataset> data;
        for (int r = 0; r < repeats; ++r) {
            data.push_back(resolve_dataset(manifest.dataset, r));
            if (!data.back().truth)
                throw ValidationError("sweep: dataset " + data.back().name + " has no labels");
        }

        std::ostringstream csv;
        csv << "value,mean_error,median_error,mean_seconds\n";
        for (double value : values) {
            RunManifest m = manifest;
            switch (parameter) {
                case SweepParameter::lambda: m.solver.lambda = value; break;
                case SweepParameter::gamma: m.solver.gamma = value; break;
                case SweepParameter::phi:
                    if (value != std::floor(value) || value < 1 || value > 1e6)
                        throw ValidationError("sweep: phi values must be positive integers");
                    m.phi = static_cast<int>(value);
                    break;
            }
            m.validate();

            std::vector<EvalReport> reports;
            for (int r = 0; r < repeats; ++r) {
                PipelineOptions opts = m.pipeline_options();
                opts.seed += static_cast<std::uint64_t>(r);
                PipelineResult res = run_pipeline(data[static_cast<std::size_t>(r)], opts);
                reports.push_back(*res.report);
            }
            const ErrorSummary s = aggregate(reports);
            csv << format_real(value) << ',' << format_real(s.mean_error) << ','
                << format_real(s.median_error) << ','
                << format_real(manifest.timing ? s.mean_seconds : 0.0) << '\n';
            log << "value=" << format_real(value) << " mean_error=" << format_real(s.mean_error)
                << " median_error=" << format_real(s.median_error) << '\n';
        }

        fs::create_directories(manifest.out);
        write_file_atomic(fs::path(manifest.out) / "sweep.csv", csv.str());
        return kOk;
    });
}

int cmd_synth(const fs::path& spec_file, const fs::path& out_dir, int count,
              std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        if (count < 1) throw ValidationError("synth: count must be >= 1");
        const SynthSpec base = load_synth_spec(spec_file);
        for (int i = 0; i < count; ++i) {
            SynthSpec spec = base;
            spec.seed += static_cast<std::uint64_t>(i);
            const Dataset data = generate_synthetic(spec);
            const fs::path dir = out_dir / data.name;
            save_dataset_dir(dir, data);
            write_file_atomic(dir / "spec.txt", spec.serialize());
            log << "wrote " << dir.string() << " (" << data.X.rows() << "x" << data.X.cols()
                << ", k=" << data.k << ")\n";
        }
        return kOk;
    });
}

int cmd_bench(const fs::path& bench_dir, const RunManifest& defaults, int jobs,
              std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        RunManifest check = defaults;
        if (check.dataset.empty()) check.dataset = bench_dir.string();
        check.validate();
        if (jobs < 1) throw ValidationError("bench: jobs must be >= 1");

        const std::vector<Dataset> sets = load_benchmark_dir(bench_dir);
        if (sets.empty())
            throw ValidationError("bench: no dataset subdirectories in " + bench_dir.string());

        struct Slot {
            int k = 0;
            std::optional<PipelineResult> result;
            std::exception_ptr failure;
        };
        std::vector<Slot> slots(sets.size());
        for (std::size_t i = 0; i < sets.size(); ++i) {
            slots[i].k = defaults.k > 0 ? defaults.k : sets[i].k;
            for (const auto& w : sets[i].warnings) err << "warning: " << w << '\n';
            if (slots[i].k < 1)
                err << "warning: " << sets[i].name << ": skipped, cluster count unknown\n";
        }

        // Each dataset is an independent task with the manifest's fixed seed,
        // so the job count cannot change any result.
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < sets.size();) {
                if (slots[i].k < 1) continue;
                try {
                    PipelineOptions opts = defaults.pipeline_options();
                    opts.k = slots[i].k;
                    slots[i].result = run_pipeline(sets[i], opts);
                } catch (...) {
                    slots[i].failure = std::current_exception();
                }
            }
        };
        const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), sets.size());
        std::vector<std::thread> pool;
        for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        for (const Slot& s : slots)
            if (s.failure) std::rethrow_exception(s.failure);

        std::vector<ReportRow> rows;
        std::map<int, std::vector<EvalReport>> by_k;
        std::vector<EvalReport> all;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const Slot& s = slots[i];
            if (!s.result) {
                rows.push_back({sets[i].name, static_cast<std::size_t>(sets[i].X.cols()), 0,
                                std::nullopt, 0.0});
                continue;
            }
            rows.push_back(report_row(sets[i], s.k, *s.result));
            print_summary(log, sets[i], s.k, *s.result);
            if (s.result->report) {
                by_k[s.k].push_back(*s.result->report);
                all.push_back(*s.result->report);
            }
        }

        std::ostringstream table;
        table << "k,count,statistic,error_rate,mean_seconds\n";
        auto emit = [&](const std::string& group, const std::vector<EvalReport>& reps) {
            const ErrorSummary s = aggregate(reps);
            const std::string secs = format_real(defaults.timing ? s.mean_seconds : 0.0);
            table << group << ',' << s.count << ",mean," << format_real(s.mean_error) << ','
                  << secs << '\n'
                  << group << ',' << s.count << ",median," << format_real(s.median_error)
                  << ',' << secs << '\n';
        };
        for (const auto& [k, reps] : by_k) emit(std::to_string(k), reps);
        if (!all.empty()) emit("all", all);

        const fs::path out = defaults.out;
        fs::create_directories(out);
        write_file_atomic(out / "report.csv", csv_text(rows, defaults.timing));
        write_file_atomic(out / "table.csv", table.str());
        return kOk;
    });
}

}  // namespace clar::tools
