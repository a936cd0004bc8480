#include "clar/affinity.hpp"

#include <algorithm>
#include <cmath>

#include "clar/error.hpp"

namespace clar {

AffinityGraph build_affinity(const Matrix& zstar, int phi, double skinny_tol) {
    if (zstar.rows() != zstar.cols())
        throw ValidationError("build_affinity: coefficient matrix must be square");
    if (phi < 1) throw ValidationError("build_affinity: phi must be a positive integer");

    const Eigen::Index n = zstar.rows();
    const SingularSystem s = svd(zstar, SvdMode::skinny, skinny_tol);

    Matrix rows = s.U * s.sigma.cwiseSqrt().asDiagonal();  // n x r
    Vector norms = rows.rowwise().norm();
    for (Eigen::Index i = 0; i < n; ++i)
        if (norms(i) > 0.0) rows.row(i) /= norms(i);

    const Matrix cosines = rows * rows.transpose();
    AffinityGraph g{Matrix::Zero(n, n), phi, s.rank()};
    for (Eigen::Index j = 0; j < n; ++j) {
        g.W(j, j) = 1.0;
        if (norms(j) == 0.0) continue;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            if (norms(i) == 0.0) continue;
            const double c = std::clamp(cosines(i, j), -1.0, 1.0);
            const double w = std::pow(c * c, phi);
            g.W(i, j) = w;
            g.W(j, i) = w;
        }
    }
    return g;
}

}  // namespace clar
