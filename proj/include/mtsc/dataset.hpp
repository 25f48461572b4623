#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtsc/errors.hpp"

namespace mtsc {

/// One labelled instance: `dims` series of `length` observations each,
/// stored dimension-major (all observations of dimension k are contiguous).
struct Case {
    std::size_t dims = 0;
    std::size_t length = 0;
    std::vector<double> values;  // size dims * length
    int label = -1;              // index into Dataset::class_labels

    Case() = default;
    Case(std::size_t d, std::size_t m, int lab = -1)
        : dims(d), length(m), values(d * m, 0.0), label(lab) {}

    std::span<const double> dim(std::size_t k) const {
        return {values.data() + k * length, length};
    }
    std::span<double> dim(std::size_t k) {
        return {values.data() + k * length, length};
    }
};

/// A labelled collection of equal-length multivariate series.
/// Immutable by convention once built; all classifiers share it read-only.
struct Dataset {
    std::string name;
    std::size_t dims = 0;
    std::size_t length = 0;
    std::vector<std::string> class_labels;  // first-appearance order from the header
    std::vector<Case> cases;

    std::size_t size() const { return cases.size(); }
    std::size_t num_classes() const { return class_labels.size(); }

    /// Count of cases per class label index.
    std::vector<std::size_t> class_histogram() const;

    /// Checks the structural invariants (shapes, label range, finiteness).
    /// Throws std::logic_error naming the first violation.
    void validate() const;
};

/// One row of an archive summary table for a default train/test pair.
struct DatasetSummary {
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::size_t num_series = 0;     // d
    std::size_t series_length = 0;  // m
    std::size_t classes = 0;        // c

    bool operator==(const DatasetSummary&) const = default;
};

DatasetSummary summarise(const Dataset& train, const Dataset& test);

/// Parses a `.ts` stream (UEA archive text format). Header directives are
/// case-insensitive, `#` lines are comments, dimensions are `:`-separated and
/// observations comma-separated, with the class label as the final field.
/// Throws TsFormatError; never aborts on malformed bytes.
Dataset parse_ts(std::istream& in, const std::string& source_name = "");

/// Convenience wrapper: opens and parses `path`. Throws std::runtime_error if
/// the file cannot be opened.
Dataset parse_ts_file(const std::string& path);

/// Writes `ds` in `.ts` format with the given decimal precision.
void write_ts(const Dataset& ds, std::ostream& out, int precision = 6);

/// Returns a copy where every dimension of every case has sample mean 0 and
/// population standard deviation 1. A constant dimension maps to all zeros.
Dataset normalise_per_dimension(const Dataset& ds);

/// Stratified shuffle of the combined train+test pool preserving the original
/// per-class counts on each side. Seed 0 returns the inputs unchanged.
/// Throws ClassTooSmallError if a class cannot satisfy the constraints.
std::pair<Dataset, Dataset> stratified_resample(const Dataset& train, const Dataset& test,
                                                std::uint64_t seed);

}  // namespace mtsc
