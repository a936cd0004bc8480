#include "clar_tools/manifest.hpp"

#include <climits>
#include <fstream>
#include <sstream>

#include "clar/format.hpp"

namespace clar::tools {

namespace {

constexpr std::string_view kSynthPrefix = "synth:";

int parse_int(const std::string& v) {
    const long long x = parse_integer(v);
    if (x < INT_MIN || x > INT_MAX) throw ValidationError("integer out of range: '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ValidationError("expected true or false, got '" + v + "'");
}

}  // namespace

void RunManifest::validate() const {
    if (dataset.empty()) throw ValidationError("manifest: dataset is required");
    solver.validate();
    if (phi < 1) throw ValidationError("manifest: phi must be >= 1");
    if (k < 0) throw ValidationError("manifest: k must be >= 0 (0 = infer)");
    if (restarts < 1) throw ValidationError("manifest: restarts must be >= 1");
    if (out.empty()) throw ValidationError("manifest: out is required");
}

PipelineOptions RunManifest::pipeline_options() const {
    PipelineOptions o;
    o.solver = solver;
    o.phi = phi;
    o.k = k;
    o.seed = seed;
    o.spectral.restarts = restarts;
    return o;
}

std::string RunManifest::serialize() const {
    std::ostringstream os;
    os << "dataset = " << dataset << '\n'
       << "lambda = " << format_real(solver.lambda) << '\n'
       << "mu0 = " << format_real(solver.mu0) << '\n'
       << "gamma = " << format_real(solver.gamma) << '\n'
       << "mu_max = " << format_real(solver.mu_max) << '\n'
       << "max_iters = " << solver.max_iters << '\n'
       << "tol = " << format_real(solver.rel_tol) << '\n'
       << "error_norm = " << to_string(solver.error_norm) << '\n'
       << "phi = " << phi << '\n'
       << "k = " << k << '\n'
       << "seed = " << seed << '\n'
       << "restarts = " << restarts << '\n'
       << "out = " << out << '\n'
       << "timing = " << (timing ? "true" : "false") << '\n';
    return os.str();
}

RunManifest RunManifest::parse(const KeyValues& kv, const std::string& source) {
    RunManifest m;
    for (const auto& [key, value] : kv) {
        try {
            if (key == "dataset") m.dataset = value;
            else if (key == "lambda") m.solver.lambda = parse_real(value);
            else if (key == "mu0") m.solver.mu0 = parse_real(value);
            else if (key == "gamma") m.solver.gamma = parse_real(value);
            else if (key == "mu_max") m.solver.mu_max = parse_real(value);
            else if (key == "max_iters") m.solver.max_iters = parse_int(value);
            else if (key == "tol") m.solver.rel_tol = parse_real(value);
            else if (key == "error_norm") m.solver.error_norm = parse_error_norm(value);
            else if (key == "phi") m.phi = parse_int(value);
            else if (key == "k") m.k = parse_int(value);
            else if (key == "seed") {
                const long long s = parse_integer(value);
                if (s < 0) throw ValidationError("seed must be >= 0");
                m.seed = static_cast<std::uint64_t>(s);
            } else if (key == "restarts") m.restarts = parse_int(value);
            else if (key == "out") m.out = value;
            else if (key == "timing") m.timing = parse_bool(value);
            else throw ValidationError("unknown key '" + key + "'");
        } catch (const ValidationError& e) {
            throw ValidationError(source + ": " + key + ": " + e.what());
        }
    }
    return m;
}

RunManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    return RunManifest::parse(parse_key_values(in, path.string()), path.string());
}

Dataset resolve_dataset(const std::string& ref, int replicate) {
    if (ref.starts_with(kSynthPrefix)) {
        SynthSpec spec = load_synth_spec(ref.substr(kSynthPrefix.size()));
        spec.seed += static_cast<std::uint64_t>(replicate);
        return generate_synthetic(spec);
    }
    return load_dataset_dir(ref);
}

}  // namespace clar::tools
