#pragma once

#include "clar/numeric.hpp"

namespace clar {

/// Symmetric similarity matrix over samples, entries in [0, 1].
struct AffinityGraph {
    Matrix W;
    int phi = 2;
    /// Rank of the skinny SVD the graph was built from; 0 means the
    /// coefficient matrix was numerically zero and W is the identity.
    Eigen::Index rank = 0;

    bool degenerate() const { return rank == 0; }
};

/// Angular affinity of the coefficient matrix. With Z* = U S V^T the skinny
/// SVD and u_i the rows of U S^{1/2},
///     W_ij = (cos angle(u_i, u_j))^(2 phi).
/// Samples whose row is zero get W_ii = 1 and no other edges.
AffinityGraph build_affinity(const Matrix& zstar, int phi = 2,
                             double skinny_tol = kSkinnyTolerance);

}  // namespace clar
