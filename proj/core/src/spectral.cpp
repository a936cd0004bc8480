#include "clar/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "clar/error.hpp"

namespace clar {

namespace {

// k-means++ centers, chosen with probability proportional to squared
// distance from the nearest center so far.
Matrix seed_centers(const Matrix& pts, int k, Rng& rng) {
    const Eigen::Index n = pts.rows();
    Matrix centers(k, pts.cols());
    std::vector<bool> chosen(static_cast<std::size_t>(n), false);

    Eigen::Index first = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    centers.row(0) = pts.row(first);
    chosen[static_cast<std::size_t>(first)] = true;
    Vector dist2 = (pts.rowwise() - centers.row(0)).rowwise().squaredNorm();

    for (int c = 1; c < k; ++c) {
        const double total = dist2.sum();
        Eigen::Index pick = -1;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (dist2(i) <= 0.0) continue;
                pick = i;
                target -= dist2(i);
                if (target < 0.0) break;
            }
        } else {
            // Every point coincides with a center; take the first unused one.
            for (Eigen::Index i = 0; i < n && pick < 0; ++i)
                if (!chosen[static_cast<std::size_t>(i)]) pick = i;
        }
        centers.row(c) = pts.row(pick);
        chosen[static_cast<std::size_t>(pick)] = true;
        dist2 = dist2.cwiseMin((pts.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }
    return centers;
}

KMeansResult lloyd(const Matrix& pts, Matrix centers, const SpectralOptions& opts) {
    const Eigen::Index n = pts.rows();
    const int k = static_cast<int>(centers.rows());
    KMeansResult res;
    res.labels.assign(static_cast<std::size_t>(n), 0);
    Vector best_d2(n);
    double prev = std::numeric_limits<double>::infinity();

    for (int it = 0; it < opts.max_iters; ++it) {
        double inertia = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            int arg = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double d2 = (pts.row(i) - centers.row(c)).squaredNorm();
                if (d2 < best) {
                    best = d2;
                    arg = c;
                }
            }
            res.labels[static_cast<std::size_t>(i)] = arg;
            best_d2(i) = best;
            inertia += best;
        }
        res.inertia = inertia;
        if (std::isfinite(prev) && prev - inertia <= opts.tol * prev) break;
        prev = inertia;

        Matrix sums = Matrix::Zero(k, pts.cols());
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const int c = res.labels[static_cast<std::size_t>(i)];
            sums.row(c) += pts.row(i);
            ++counts[static_cast<std::size_t>(c)];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
            } else {
                // Empty cluster: move it onto the worst-served point.
                Eigen::Index far = 0;
                best_d2.maxCoeff(&far);
                centers.row(c) = pts.row(far);
                best_d2(far) = 0.0;
            }
        }
    }
    return res;
}

}  // namespace

void ClusterLabels::validate() const {
    if (k < 1) throw ValidationError("cluster labels: k must be >= 1");
    for (int l : labels)
        if (l < 0 || l >= k)
            throw ValidationError("cluster labels: index " + std::to_string(l) +
                                  " outside [0, " + std::to_string(k) + ")");
}

KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed,
                    const SpectralOptions& opts) {
    if (k < 1) throw ValidationError("kmeans: k must be >= 1");
    if (points.rows() < k)
        throw ValidationError("kmeans: k = " + std::to_string(k) + " exceeds " +
                              std::to_string(points.rows()) + " points");
    if (opts.restarts < 1) throw ValidationError("kmeans: restarts must be >= 1");

    Rng master(seed);
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng(master.next_u64());
        KMeansResult run = lloyd(points, seed_centers(points, k, rng), opts);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return best;
}

Matrix spectral_embedding(const Matrix& w, int k, Vector* eigenvalues) {
    const Eigen::Index n = w.rows();
    if (w.cols() != n) throw ValidationError("spectral_embedding: W must be square");
    if (k < 1 || k > n)
        throw ValidationError("spectral_embedding: k = " + std::to_string(k) +
                              " must lie in [1, " + std::to_string(n) + "]");

    Vector inv_sqrt_deg = w.rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i)
        inv_sqrt_deg(i) = inv_sqrt_deg(i) > 0.0 ? 1.0 / std::sqrt(inv_sqrt_deg(i)) : 0.0;

    Matrix lap = -(inv_sqrt_deg.asDiagonal() * w * inv_sqrt_deg.asDiagonal());
    lap.diagonal().array() += 1.0;
    lap = (0.5 * (lap + lap.transpose())).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> eig(lap);
    if (eig.info() != Eigen::Success)
        throw NumericalError("spectral_embedding: eigendecomposition failed for " +
                             std::to_string(n) + "x" + std::to_string(n) + " Laplacian");
    if (eigenvalues) *eigenvalues = eig.eigenvalues().head(k);

    Matrix emb = eig.eigenvectors().leftCols(k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double len = emb.row(i).norm();
        if (len > 0.0) emb.row(i) /= len;
    }
    return emb;
}

ClusterLabels spectral_cluster(const AffinityGraph& graph, int k,
                               std::uint64_t seed, const SpectralOptions& opts) {
    const Matrix emb = spectral_embedding(graph.W, k);
    KMeansResult km = kmeans(emb, k, seed, opts);
    return ClusterLabels{std::move(km.labels), k};
}

}  // namespace clar
