#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clar/spectral.hpp"

namespace clar {

/// Segmentation error under the best one-to-one match of predicted to true
/// cluster indices.
struct EvalReport {
    double error_rate = 0.0;  // misassigned / n_samples
    std::size_t n_samples = 0;
    int n_clusters = 0;       // true cluster count
    /// matching[p] = true cluster paired with predicted cluster p, over
    /// max(k_pred, k_true) indices; indices past a side's k are padding.
    std::vector<int> matching;
    double seconds = 0.0;     // wall clock of the evaluated run, set by caller
};

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method,
/// O(n^3)). Returns assignment[row] = column.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

/// Throws ValidationError on length mismatch or empty input.
EvalReport clustering_error(const ClusterLabels& predicted, const ClusterLabels& truth);

struct ErrorSummary {
    std::size_t count = 0;
    double mean_error = 0.0;
    double median_error = 0.0;  // midpoint of the two central values for even counts
    double mean_seconds = 0.0;
};

/// Throws ValidationError on an empty list.
ErrorSummary aggregate(const std::vector<EvalReport>& reports);

/// One line of a results table. error_rate is absent when the dataset has
/// no ground truth.
struct ReportRow {
    std::string dataset;
    std::size_t n = 0;
    int k = 0;
    std::optional<double> error_rate;
    double seconds = 0.0;
};

/// `dataset,n,k,error_rate,seconds`; a missing error rate is an empty field.
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows,
                      bool timing = true);

}  // namespace clar
