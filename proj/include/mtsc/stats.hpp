#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mtsc/errors.hpp"

namespace mtsc {

/// One scored prediction.
struct PredictionRecord {
    int truth = -1;
    int predicted = -1;
};

/// Fraction of correct predictions. Throws StatsError on an empty set.
double accuracy(std::span<const PredictionRecord> predictions);

/// Macro-averaged recall: the unweighted mean over classes (present in the
/// truth) of within-class accuracy. Classes absent from the truth are
/// excluded from the mean.
double balanced_accuracy(std::span<const PredictionRecord> predictions, std::size_t num_classes);

/// classifiers x datasets accuracy matrix. A complete matrix has a finite
/// value in every cell; NaN marks a missing run before validation.
struct ResultsTable {
    std::vector<std::string> classifiers;     // row names
    std::vector<std::string> datasets;        // column names
    std::vector<std::vector<double>> values;  // values[row][col]

    std::size_t rows() const { return classifiers.size(); }
    std::size_t cols() const { return datasets.size(); }
    /// Throws StatsError (IncompleteTable) if shapes are ragged or cells missing.
    void validate_complete() const;
};

/// CSV: header "classifier,<dataset codes...>", one row per classifier.
/// Empty cells read back as NaN.
ResultsTable read_results_csv(std::istream& in);
void write_results_csv(const ResultsTable& table, std::ostream& out);

/// Per-classifier mean rank across datasets; rank 1 is the highest accuracy
/// in a column, ties share the mean of the covered ranks.
std::vector<double> average_ranks(const ResultsTable& table);

/// Two-sided Wilcoxon signed-rank p-value over paired samples. Zero
/// differences are discarded; fewer than 5 nonzero pairs is a StatsError
/// (TooFewPairs). Exact distribution for n <= 20 (mid-ranks, subset-sum
/// convolution), normal approximation with continuity and tie corrections
/// otherwise.
double wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

/// p-value matrix of all classifier pairs of a complete table (diagonal 1).
std::vector<std::vector<double>> pairwise_wilcoxon(const ResultsTable& table);

/// Hypothesis family for the Holm correction: one global family of
/// k(k-1)/2 pairs, or one family of k-1 pairs per classifier (a pair is
/// rejected when either endpoint's family rejects it).
enum class HolmFamily { global, per_classifier };

struct CliqueReport {
    std::vector<std::string> classifiers;          // table order
    std::vector<double> avg_ranks;                 // table order
    std::vector<std::vector<double>> p_values;     // symmetric, diagonal 1
    std::vector<std::vector<char>> rejected;       // Holm decisions at alpha
    std::vector<std::size_t> rank_order;           // indices sorted by rank
    std::vector<std::vector<std::size_t>> cliques; // maximal groups, table-order indices
    double alpha = 0.05;
    HolmFamily family = HolmFamily::global;
};

/// Holm step-down over the pairwise p-values followed by the rank-ordered
/// bar sweep: cliques are maximal contiguous groups (in average-rank order)
/// whose internal pairs are all non-rejected.
CliqueReport holm_cliques(const std::vector<std::vector<double>>& p_values,
                          std::span<const double> avg_ranks,
                          std::span<const std::string> names, double alpha = 0.05,
                          HolmFamily family = HolmFamily::global);

/// Convenience: ranks + pairwise tests + cliques for a complete table.
CliqueReport analyse_table(const ResultsTable& table, double alpha = 0.05,
                           HolmFamily family = HolmFamily::global);

/// Win/tie/loss split between two paired accuracy vectors.
struct WinTieLoss {
    std::size_t wins_a = 0;
    std::size_t ties = 0;
    std::size_t wins_b = 0;
};
WinTieLoss count_wins(std::span<const double> a, std::span<const double> b);

}  // namespace mtsc
