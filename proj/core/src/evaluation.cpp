#include "clar/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "clar/error.hpp"
#include "clar/format.hpp"

namespace clar {

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    // Shortest augmenting paths with row/column potentials; 1-based
    // internally, index 0 is the virtual source column.
    const std::size_t n = cost.size();
    for (const auto& row : cost)
        if (row.size() != n) throw ValidationError("assignment: cost matrix must be square");

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match_col(n + 1, 0), way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        match_col[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = match_col[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match_col[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match_col[j0] = match_col[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> assignment(n, -1);
    for (std::size_t j = 1; j <= n; ++j)
        assignment[match_col[j] - 1] = static_cast<int>(j - 1);
    return assignment;
}

EvalReport clustering_error(const ClusterLabels& predicted, const ClusterLabels& truth) {
    if (predicted.size() != truth.size())
        throw ValidationError("clustering_error: " + std::to_string(predicted.size()) +
                              " predicted labels vs " + std::to_string(truth.size()) +
                              " true labels");
    if (truth.size() == 0) throw ValidationError("clustering_error: no samples");
    predicted.validate();
    truth.validate();

    const std::size_t dim = static_cast<std::size_t>(std::max(predicted.k, truth.k));
    std::vector<std::vector<double>> agree(dim, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < truth.size(); ++i)
        agree[static_cast<std::size_t>(predicted.labels[i])]
             [static_cast<std::size_t>(truth.labels[i])] += 1.0;

    std::vector<std::vector<double>> cost(dim, std::vector<double>(dim));
    for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t t = 0; t < dim; ++t) cost[p][t] = -agree[p][t];

    EvalReport rep;
    rep.matching = min_cost_assignment(cost);
    std::size_t hits = 0;
    for (std::size_t p = 0; p < dim; ++p)
        hits += static_cast<std::size_t>(agree[p][static_cast<std::size_t>(rep.matching[p])]);
    rep.n_samples = truth.size();
    rep.n_clusters = truth.k;
    rep.error_rate = static_cast<double>(truth.size() - hits) / static_cast<double>(truth.size());
    return rep;
}

ErrorSummary aggregate(const std::vector<EvalReport>& reports) {
    if (reports.empty()) throw ValidationError("aggregate: no reports");
    std::vector<double> errors;
    errors.reserve(reports.size());
    ErrorSummary s;
    s.count = reports.size();
    for (const EvalReport& r : reports) {
        errors.push_back(r.error_rate);
        s.mean_error += r.error_rate;
        s.mean_seconds += r.seconds;
    }
    const double count = static_cast<double>(reports.size());
    s.mean_error /= count;
    s.mean_seconds /= count;

    std::sort(errors.begin(), errors.end());
    const std::size_t mid = errors.size() / 2;
    s.median_error = errors.size() % 2 == 1 ? errors[mid]
                                            : 0.5 * (errors[mid - 1] + errors[mid]);
    return s;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows, bool timing) {
    out << "dataset,n,k,error_rate,seconds\n";
    for (const ReportRow& r : rows) {
        out << r.dataset << ',' << r.n << ',' << r.k << ',';
        if (r.error_rate) out << format_real(*r.error_rate);
        out << ',' << format_real(timing ? r.seconds : 0.0) << '\n';
    }
}

}  // namespace clar
