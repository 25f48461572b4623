#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mtsc/dataset.hpp"
#include "mtsc/errors.hpp"

namespace mtsc {

/// Multivariate elastic-distance strategy.
enum class DtwStrategy { independent, dependent };

/// A fully parameterised elastic distance. window_fraction r in [0,1]:
/// r = 1 is unconstrained DTW, r = 0 degenerates to the aligned
/// (squared-Euclidean) distance. The pointwise metric is squared difference.
struct DistanceSpec {
    DtwStrategy strategy = DtwStrategy::independent;
    double window_fraction = 1.0;
};

/// Sakoe-Chiba band half-width in cells for series length m.
/// ceil(r*m): 0 at r = 0 (diagonal only), >= 1 for any r > 0.
std::size_t window_width(double r, std::size_t m);

/// Reusable rolling two-row accumulator, so pairwise scans don't reallocate.
/// Not thread-safe; give each worker its own.
class DtwWorkspace {
public:
    void resize(std::size_t m);
    std::vector<double>& prev() { return prev_; }
    std::vector<double>& curr() { return curr_; }

private:
    std::vector<double> prev_;
    std::vector<double> curr_;
};

/// Windowed univariate DTW with squared-difference point costs; returns the
/// cumulative cost DTW(m, m) (no square root). Symmetric in (a, b).
/// Throws ShapeError on length mismatch.
double dtw_univariate(std::span<const double> a, std::span<const double> b, double r,
                      DtwWorkspace* ws = nullptr);

/// Debug/oracle variant that materialises the full (m+1)x(m+1) accumulator
/// (row 0 / column 0 are the +inf boundary). Same result as dtw_univariate.
double dtw_univariate_full_matrix(std::span<const double> a, std::span<const double> b,
                                  double r, std::vector<double>* matrix = nullptr);

/// Independent strategy: sum of per-dimension univariate DTWs.
double dtw_independent(const Case& a, const Case& b, double r, DtwWorkspace* ws = nullptr);

/// Dependent strategy: one DTW recurrence over vector point costs
/// M(i,j) = sum_k (a[i,k] - b[j,k])^2.
double dtw_dependent(const Case& a, const Case& b, double r, DtwWorkspace* ws = nullptr);

/// Aligned squared-Euclidean distance over all dimensions; equals
/// dtw_dependent with r = 0.
double euclidean_dependent(const Case& a, const Case& b);

/// Dispatch on a DistanceSpec.
double case_distance(const Case& a, const Case& b, const DistanceSpec& spec,
                     DtwWorkspace* ws = nullptr);

}  // namespace mtsc
