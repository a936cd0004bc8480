#pragma once

#include <cstdint>
#include <vector>

#include "clar/affinity.hpp"
#include "clar/numeric.hpp"

namespace clar {

/// Cluster index per sample, each in [0, k).
struct ClusterLabels {
    std::vector<int> labels;
    int k = 0;

    std::size_t size() const { return labels.size(); }
    /// Throws ValidationError if an index is out of range.
    void validate() const;
};

struct SpectralOptions {
    int restarts = 50;
    int max_iters = 300;
    double tol = 1e-9;  // relative inertia change that ends a Lloyd run
};

struct KMeansResult {
    std::vector<int> labels;
    double inertia = 0.0;
};

/// Lloyd's algorithm with k-means++ seeding over the rows of `points`.
/// Runs `restarts` independent starts and keeps the lowest inertia, the
/// earliest restart winning ties.
KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed,
                    const SpectralOptions& opts = {});

/// Row-normalized eigenvectors of the k smallest eigenvalues of
/// I - D^{-1/2} W D^{-1/2}. Zero-degree vertices get a zero D^{-1/2} entry.
/// `eigenvalues`, if given, receives the k retained eigenvalues.
Matrix spectral_embedding(const Matrix& w, int k, Vector* eigenvalues = nullptr);

/// Normalized spectral clustering (symmetric Laplacian embedding followed
/// by k-means). Deterministic for fixed inputs.
ClusterLabels spectral_cluster(const AffinityGraph& graph, int k,
                               std::uint64_t seed, const SpectralOptions& opts = {});

}  // namespace clar
