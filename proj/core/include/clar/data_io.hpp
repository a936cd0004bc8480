#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clar/error.hpp"
#include "clar/numeric.hpp"
#include "clar/spectral.hpp"

namespace clar {

// Matrices on disk keep the in-memory orientation: X is m x n with one
// sample per COLUMN. Tools that expect one sample per row must transpose.

enum class MatrixFormat {
    csv,     // one matrix row per line, comma separated, no header
    binary,  // "CLARMAT1", u64 rows, u64 cols, row-major f64; all little-endian
};

/// Header counts disagree with the payload or overflow.
struct SizeError : IoError {
    using IoError::IoError;
};

/// csv for ".csv", binary for ".bin"; throws ValidationError otherwise.
MatrixFormat matrix_format_for(const std::filesystem::path& path);

Matrix read_matrix_csv(std::istream& in, const std::string& source = "<stream>");
void write_matrix_csv(std::ostream& out, const Matrix& m);
Matrix read_matrix_binary(std::istream& in, const std::string& source = "<stream>");
void write_matrix_binary(std::ostream& out, const Matrix& m);

Matrix load_matrix(const std::filesystem::path& path, MatrixFormat format);
Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& m, MatrixFormat format);
void save_matrix(const std::filesystem::path& path, const Matrix& m);

/// Labels file with header `sample_index,cluster`. Cluster ids may be any
/// integers; they are renumbered 0..k-1 in increasing order of the id.
ClusterLabels read_labels_csv(std::istream& in, const std::string& source = "<stream>");
void write_labels_csv(std::ostream& out, const ClusterLabels& labels);
ClusterLabels load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const ClusterLabels& labels);

/// Replaces `path` in one step: content goes to a sibling temporary file that
/// is then renamed over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Ordered `key = value` lines; `#` starts a comment line.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
KeyValues parse_key_values(std::istream& in, const std::string& source = "<stream>");

struct Dataset {
    std::string name;
    Matrix X;                           // m x n, columns are samples
    std::optional<ClusterLabels> truth;
    int k = 0;                          // number of clusters; 0 = unknown (no truth)
    std::vector<std::string> warnings;
};

/// Union-of-subspaces generator parameters.
struct SynthSpec {
    int ambient_dim = 30;
    int n_subspaces = 3;
    int subspace_dim = 4;
    int points_per_subspace = 50;
    double noise_sigma = 0.0;
    double outlier_fraction = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
    std::string name() const;
    std::string serialize() const;
    static SynthSpec parse(const KeyValues& kv, const std::string& source = "<spec>");
};

SynthSpec load_synth_spec(const std::filesystem::path& path);

struct SyntheticData {
    Dataset dataset;
    std::vector<Matrix> bases;  // orthonormal m x d basis per subspace
    std::vector<int> outliers;  // sample indices replaced by outliers
};

/// Samples `points_per_subspace` unit-norm points from each basis (grouped by
/// subspace, in basis order), adds Gaussian noise of sd `noise_sigma`, then
/// replaces round(outlier_fraction * n) random samples with unit-norm
/// Gaussian vectors. Truth labels keep the original subspace index.
SyntheticData sample_union(const std::vector<Matrix>& bases, int points_per_subspace,
                           double noise_sigma, double outlier_fraction, Rng& rng);

/// Draws random orthonormal bases (QR of Gaussian matrices), then calls
/// sample_union with the same generator. Deterministic per seed.
SyntheticData generate_synthetic_with_bases(const SynthSpec& spec);
Dataset generate_synthetic(const SynthSpec& spec);

/// Loads a directory with X.csv or X.bin and an optional labels.csv. A missing
/// labels file leaves truth empty and records a warning.
Dataset load_dataset_dir(const std::filesystem::path& dir);

/// One Dataset per subdirectory, in lexicographic order of the names.
std::vector<Dataset> load_benchmark_dir(const std::filesystem::path& root);

/// Writes X.bin and, when truth is present, labels.csv into `dir`.
void save_dataset_dir(const std::filesystem::path& dir, const Dataset& data);

}  // namespace clar
