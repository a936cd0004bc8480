#include "clar/data_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/QR>

#include "clar/format.hpp"

namespace clar {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[8] = {'C', 'L', 'A', 'R', 'M', 'A', 'T', '1'};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string line_at(std::size_t n) { return "line " + std::to_string(n); }

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u64(std::istream& in, std::uint64_t& v) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return true;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

}  // namespace

MatrixFormat matrix_format_for(const fs::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".csv") return MatrixFormat::csv;
    if (ext == ".bin") return MatrixFormat::binary;
    throw ValidationError("cannot infer matrix format from '" + path.string() +
                          "' (expected .csv or .bin)");
}

Matrix read_matrix_csv(std::istream& in, const std::string& source) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t blank_run_start = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            if (blank_run_start == 0) blank_run_start = lineno;
            continue;
        }
        if (blank_run_start != 0)
            throw ParseError(source, line_at(blank_run_start), "blank line inside matrix");
        std::vector<double> row;
        for (const std::string& field : split_commas(line)) {
            try {
                row.push_back(parse_real(field));
            } catch (const ValidationError&) {
                throw ParseError(source, line_at(lineno), "bad number '" + field + "'");
            }
            if (!std::isfinite(row.back()))
                throw ParseError(source, line_at(lineno), "non-finite value");
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(source, line_at(lineno),
                             "expected " + std::to_string(rows.front().size()) +
                                 " columns, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(source, line_at(lineno), "empty matrix");

    Matrix m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_real(m(i, j));
        }
        out << '\n';
    }
}

Matrix read_matrix_binary(std::istream& in, const std::string& source) {
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
        throw ParseError(source, "offset 0", "missing CLARMAT1 magic");
    std::uint64_t rows = 0, cols = 0;
    if (!get_u64(in, rows) || !get_u64(in, cols))
        throw ParseError(source, "offset 8", "truncated header");
    if (rows == 0 || cols == 0)
        throw SizeError(source + ": matrix has zero rows or columns");
    const auto max_index = static_cast<std::uint64_t>(std::numeric_limits<Eigen::Index>::max());
    if (rows > max_index || cols > max_index || rows > max_index / cols ||
        rows * cols > std::numeric_limits<std::uint64_t>::max() / 8)
        throw SizeError(source + ": dimensions " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " overflow");

    // Compare against the remaining payload before allocating.
    const auto here = in.tellg();
    if (here != std::streampos(-1)) {
        in.seekg(0, std::ios::end);
        const auto end = in.tellg();
        in.seekg(here);
        const auto remaining = static_cast<std::uint64_t>(end - here);
        if (remaining != rows * cols * 8)
            throw ParseError(source, "offset 24",
                             "header announces " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " values but payload has " +
                                 std::to_string(remaining) + " bytes");
    }

    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::uint64_t bits = 0;
            if (!get_u64(in, bits))
                throw ParseError(source,
                                 "offset " + std::to_string(24 + 8 * (i * m.cols() + j)),
                                 "truncated payload");
            m(i, j) = std::bit_cast<double>(bits);
        }
    }
    return m;
}

void write_matrix_binary(std::ostream& out, const Matrix& m) {
    out.write(kMagic, 8);
    put_u64(out, static_cast<std::uint64_t>(m.rows()));
    put_u64(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            put_u64(out, std::bit_cast<std::uint64_t>(m(i, j)));
}

Matrix load_matrix(const fs::path& path, MatrixFormat format) {
    if (format == MatrixFormat::binary) {
        auto in = open_in(path, std::ios::in | std::ios::binary);
        return read_matrix_binary(in, path.string());
    }
    auto in = open_in(path);
    return read_matrix_csv(in, path.string());
}

Matrix load_matrix(const fs::path& path) { return load_matrix(path, matrix_format_for(path)); }

void save_matrix(const fs::path& path, const Matrix& m, MatrixFormat format) {
    std::ostringstream out;
    if (format == MatrixFormat::binary)
        write_matrix_binary(out, m);
    else
        write_matrix_csv(out, m);
    write_file_atomic(path, out.str());
}

void save_matrix(const fs::path& path, const Matrix& m) {
    save_matrix(path, m, matrix_format_for(path));
}

ClusterLabels read_labels_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "sample_index,cluster")
        throw ParseError(source, line_at(1), "expected header 'sample_index,cluster'");

    std::vector<std::pair<long long, long long>> entries;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != 2) throw ParseError(source, line_at(lineno), "expected 2 fields");
        try {
            entries.emplace_back(parse_integer(fields[0]), parse_integer(fields[1]));
        } catch (const ValidationError& e) {
            throw ParseError(source, line_at(lineno), e.what());
        }
    }
    if (entries.empty()) throw ParseError(source, line_at(lineno), "no labels");

    const auto n = entries.size();
    std::vector<long long> ids(n);
    std::vector<bool> seen(n, false);
    for (const auto& [idx, id] : entries) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= n || seen[static_cast<std::size_t>(idx)])
            throw ParseError(source, "sample_index " + std::to_string(idx),
                             "indices must be a permutation of 0..n-1");
        seen[static_cast<std::size_t>(idx)] = true;
        ids[static_cast<std::size_t>(idx)] = id;
    }

    std::map<long long, int> dense;
    for (long long id : ids) dense.emplace(id, 0);
    int next = 0;
    for (auto& [id, slot] : dense) slot = next++;

    ClusterLabels out;
    out.k = next;
    out.labels.reserve(n);
    for (long long id : ids) out.labels.push_back(dense[id]);
    return out;
}

void write_labels_csv(std::ostream& out, const ClusterLabels& labels) {
    out << "sample_index,cluster\n";
    for (std::size_t i = 0; i < labels.labels.size(); ++i)
        out << i << ',' << labels.labels[i] << '\n';
}

ClusterLabels load_labels(const fs::path& path) {
    auto in = open_in(path);
    return read_labels_csv(in, path.string());
}

void save_labels(const fs::path& path, const ClusterLabels& labels) {
    std::ostringstream out;
    write_labels_csv(out, labels);
    write_file_atomic(path, out.str());
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::out | std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot replace " + path.string());
    }
}

std::string read_file(const fs::path& path) {
    auto in = open_in(path, std::ios::in | std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

KeyValues parse_key_values(std::istream& in, const std::string& source) {
    KeyValues kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError(source, line_at(lineno), "expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw ParseError(source, line_at(lineno), "empty key");
        for (const auto& [k, v] : kv)
            if (k == key) throw ParseError(source, line_at(lineno), "duplicate key '" + key + "'");
        kv.emplace_back(std::move(key), trim(t.substr(eq + 1)));
    }
    return kv;
}

void SynthSpec::validate() const {
    auto fail = [](const std::string& m) { throw ValidationError("synthetic spec: " + m); };
    if (ambient_dim < 1 || n_subspaces < 1 || subspace_dim < 1 || points_per_subspace < 1)
        fail("all counts must be >= 1");
    if (subspace_dim >= ambient_dim) fail("subspace_dim must be < ambient_dim");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) fail("noise_sigma must be >= 0");
    if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0))
        fail("outlier_fraction must lie in [0, 1)");
}

std::string SynthSpec::name() const {
    return "synth-m" + std::to_string(ambient_dim) + "-k" + std::to_string(n_subspaces) +
           "-d" + std::to_string(subspace_dim) + "-s" + std::to_string(seed);
}

std::string SynthSpec::serialize() const {
    std::ostringstream os;
    os << "ambient_dim = " << ambient_dim << '\n'
       << "n_subspaces = " << n_subspaces << '\n'
       << "subspace_dim = " << subspace_dim << '\n'
       << "points_per_subspace = " << points_per_subspace << '\n'
       << "noise_sigma = " << format_real(noise_sigma) << '\n'
       << "outlier_fraction = " << format_real(outlier_fraction) << '\n'
       << "seed = " << seed << '\n';
    return os.str();
}

SynthSpec SynthSpec::parse(const KeyValues& kv, const std::string& source) {
    SynthSpec s;
    for (const auto& [key, value] : kv) {
        try {
            if (key == "ambient_dim") s.ambient_dim = static_cast<int>(parse_integer(value));
            else if (key == "n_subspaces") s.n_subspaces = static_cast<int>(parse_integer(value));
            else if (key == "subspace_dim") s.subspace_dim = static_cast<int>(parse_integer(value));
            else if (key == "points_per_subspace")
                s.points_per_subspace = static_cast<int>(parse_integer(value));
            else if (key == "noise_sigma") s.noise_sigma = parse_real(value);
            else if (key == "outlier_fraction") s.outlier_fraction = parse_real(value);
            else if (key == "seed") s.seed = static_cast<std::uint64_t>(parse_integer(value));
            else throw ValidationError("unknown key '" + key + "'");
        } catch (const ValidationError& e) {
            throw ValidationError(source + ": " + e.what());
        }
    }
    s.validate();
    return s;
}

SynthSpec load_synth_spec(const fs::path& path) {
    auto in = open_in(path);
    return SynthSpec::parse(parse_key_values(in, path.string()), path.string());
}

SyntheticData sample_union(const std::vector<Matrix>& bases, int points_per_subspace,
                           double noise_sigma, double outlier_fraction, Rng& rng) {
    if (bases.empty()) throw ValidationError("sample_union: no bases");
    const Eigen::Index m = bases.front().rows();
    const Eigen::Index per = points_per_subspace;
    const Eigen::Index n = per * static_cast<Eigen::Index>(bases.size());

    SyntheticData out;
    Dataset& ds = out.dataset;
    ds.X.resize(m, n);
    ClusterLabels truth{std::vector<int>(static_cast<std::size_t>(n)),
                        static_cast<int>(bases.size())};

    for (std::size_t s = 0; s < bases.size(); ++s) {
        const Matrix& b = bases[s];
        if (b.rows() != m) throw ValidationError("sample_union: bases differ in ambient dimension");
        const Matrix coeffs = rng.matrix(b.cols(), per, Distribution::standard_normal);
        for (Eigen::Index p = 0; p < per; ++p) {
            const Eigen::Index col = static_cast<Eigen::Index>(s) * per + p;
            ds.X.col(col) = (b * coeffs.col(p)).normalized();
            truth.labels[static_cast<std::size_t>(col)] = static_cast<int>(s);
        }
    }
    if (noise_sigma > 0.0) ds.X += noise_sigma * rng.matrix(m, n, Distribution::standard_normal);

    const auto n_out = static_cast<Eigen::Index>(std::llround(outlier_fraction * static_cast<double>(n)));
    if (n_out > 0) {
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < static_cast<int>(n); ++i) order[static_cast<std::size_t>(i)] = i;
        for (Eigen::Index i = 0; i < n_out; ++i) {
            const auto j = static_cast<std::size_t>(i) +
                           static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - i)));
            std::swap(order[static_cast<std::size_t>(i)], order[j]);
        }
        out.outliers.assign(order.begin(), order.begin() + n_out);
        std::sort(out.outliers.begin(), out.outliers.end());
        for (int idx : out.outliers)
            ds.X.col(idx) = rng.matrix(m, 1, Distribution::standard_normal).normalized();
    }

    ds.truth = std::move(truth);
    ds.k = static_cast<int>(bases.size());
    out.bases = bases;
    return out;
}

SyntheticData generate_synthetic_with_bases(const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    std::vector<Matrix> bases;
    for (int s = 0; s < spec.n_subspaces; ++s) {
        const Matrix g = rng.matrix(spec.ambient_dim, spec.subspace_dim,
                                    Distribution::standard_normal);
        Eigen::HouseholderQR<Matrix> qr(g);
        bases.push_back(qr.householderQ() * Matrix::Identity(spec.ambient_dim, spec.subspace_dim));
    }
    SyntheticData out = sample_union(bases, spec.points_per_subspace, spec.noise_sigma,
                                     spec.outlier_fraction, rng);
    out.dataset.name = spec.name();
    return out;
}

Dataset generate_synthetic(const SynthSpec& spec) {
    return std::move(generate_synthetic_with_bases(spec).dataset);
}

Dataset load_dataset_dir(const fs::path& dir) {
    Dataset ds;
    ds.name = dir.filename().string();
    if (fs::exists(dir / "X.bin"))
        ds.X = load_matrix(dir / "X.bin", MatrixFormat::binary);
    else if (fs::exists(dir / "X.csv"))
        ds.X = load_matrix(dir / "X.csv", MatrixFormat::csv);
    else
        throw IoError(dir.string() + ": no X.csv or X.bin");

    if (fs::exists(dir / "labels.csv")) {
        ClusterLabels truth = load_labels(dir / "labels.csv");
        if (truth.size() != static_cast<std::size_t>(ds.X.cols()))
            throw IoError(dir.string() + ": labels.csv has " + std::to_string(truth.size()) +
                          " entries for " + std::to_string(ds.X.cols()) + " samples");
        ds.k = truth.k;
        ds.truth = std::move(truth);
    } else {
        ds.warnings.push_back(ds.name + ": no labels.csv, ground truth unavailable");
    }
    return ds;
}

std::vector<Dataset> load_benchmark_dir(const fs::path& root) {
    if (!fs::is_directory(root)) throw IoError(root.string() + " is not a directory");
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) dirs.push_back(entry.path());
    std::sort(dirs.begin(), dirs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    std::vector<Dataset> out;
    out.reserve(dirs.size());
    for (const auto& d : dirs) out.push_back(load_dataset_dir(d));
    return out;
}

void save_dataset_dir(const fs::path& dir, const Dataset& data) {
    fs::create_directories(dir);
    save_matrix(dir / "X.bin", data.X, MatrixFormat::binary);
    if (data.truth) save_labels(dir / "labels.csv", *data.truth);
}

}  // namespace clar
