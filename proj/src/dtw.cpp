#include "mtsc/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mtsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double sq(double x) { return x * x; }

void check_lengths(std::size_t la, std::size_t lb) {
    if (la == 0 || lb == 0) throw ShapeError("LengthMismatch: empty series");
    if (la != lb) {
        throw ShapeError("LengthMismatch: series lengths " + std::to_string(la) + " and " +
                         std::to_string(lb) + " differ");
    }
}

void check_window(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw ShapeError("window fraction must lie in [0, 1]");
    }
}

void check_cases(const Case& a, const Case& b) {
    if (a.dims != b.dims) {
        throw ShapeError("DimensionMismatch: cases have " + std::to_string(a.dims) + " and " +
                         std::to_string(b.dims) + " dimensions");
    }
    check_lengths(a.length, b.length);
}

// Shared banded recurrence over an opaque point-cost function.
// Rows/cols are 1-based over the (m+1)-wide rolling arrays; column 0 and all
// out-of-band cells hold +inf so the boundary constraints fall out of min().
template <typename CostFn>
double banded_dtw(std::size_t m, std::size_t w, std::vector<double>& prev,
                  std::vector<double>& curr, CostFn&& cost) {
    prev.assign(m + 1, kInf);
    curr.assign(m + 1, kInf);
    prev[0] = 0.0;  // DTW(0,0)

    for (std::size_t i = 1; i <= m; ++i) {
        std::size_t lo = (i > w) ? i - w : 1;
        std::size_t hi = std::min(m, i + w);
        // Reset exactly the cells this row writes plus the ones row i+1 reads.
        for (std::size_t j = (lo == 0 ? 0 : lo - 1); j <= std::min(m, hi + 1); ++j) {
            curr[j] = kInf;
        }
        for (std::size_t j = lo; j <= hi; ++j) {
            double best = std::min(prev[j], std::min(curr[j - 1], prev[j - 1]));
            curr[j] = cost(i - 1, j - 1) + best;
        }
        std::swap(prev, curr);
        if (i == 1) prev[0] = kInf;  // (0,0) is only reachable from the first row
    }
    return prev[m];
}

}  // namespace

std::size_t window_width(double r, std::size_t m) {
    check_window(r);
    // ceil with a nudge against products like 0.7*10 landing a ulp above 7.
    double raw = std::ceil(r * static_cast<double>(m) - 1e-9);
    if (raw <= 0.0) return 0;
    return static_cast<std::size_t>(raw);
}

void DtwWorkspace::resize(std::size_t m) {
    if (prev_.size() < m + 1) {
        prev_.resize(m + 1);
        curr_.resize(m + 1);
    }
}

double dtw_univariate(std::span<const double> a, std::span<const double> b, double r,
                      DtwWorkspace* ws) {
    check_lengths(a.size(), b.size());
    const std::size_t m = a.size();
    const std::size_t w = window_width(r, m);

    DtwWorkspace local;
    DtwWorkspace& work = ws ? *ws : local;
    work.resize(m);
    return banded_dtw(m, w, work.prev(), work.curr(),
                      [&](std::size_t i, std::size_t j) { return sq(a[i] - b[j]); });
}

double dtw_univariate_full_matrix(std::span<const double> a, std::span<const double> b,
                                  double r, std::vector<double>* matrix) {
    check_lengths(a.size(), b.size());
    const std::size_t m = a.size();
    const std::size_t w = window_width(r, m);
    const std::size_t stride = m + 1;

    std::vector<double> dp(stride * stride, kInf);
    dp[0] = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        std::size_t lo = (i > w) ? i - w : 1;
        std::size_t hi = std::min(m, i + w);
        for (std::size_t j = lo; j <= hi; ++j) {
            double best = std::min(dp[(i - 1) * stride + j],
                                   std::min(dp[i * stride + j - 1], dp[(i - 1) * stride + j - 1]));
            dp[i * stride + j] = sq(a[i - 1] - b[j - 1]) + best;
        }
    }
    double result = dp[m * stride + m];
    if (matrix) *matrix = std::move(dp);
    return result;
}

double dtw_independent(const Case& a, const Case& b, double r, DtwWorkspace* ws) {
    check_cases(a, b);
    double total = 0.0;
    for (std::size_t k = 0; k < a.dims; ++k) {
        total += dtw_univariate(a.dim(k), b.dim(k), r, ws);
    }
    return total;
}

double dtw_dependent(const Case& a, const Case& b, double r, DtwWorkspace* ws) {
    check_cases(a, b);
    const std::size_t m = a.length;
    const std::size_t d = a.dims;
    const std::size_t w = window_width(r, m);
    const double* pa = a.values.data();
    const double* pb = b.values.data();

    DtwWorkspace local;
    DtwWorkspace& work = ws ? *ws : local;
    work.resize(m);
    return banded_dtw(m, w, work.prev(), work.curr(), [&](std::size_t i, std::size_t j) {
        double cost = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            cost += sq(pa[k * m + i] - pb[k * m + j]);
        }
        return cost;
    });
}

double euclidean_dependent(const Case& a, const Case& b) {
    check_cases(a, b);
    const std::size_t m = a.length;
    const std::size_t d = a.dims;
    const double* pa = a.values.data();
    const double* pb = b.values.data();
    // Accumulated per time step so it matches dtw_dependent(r=0) bit for bit.
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double cell = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            cell += sq(pa[k * m + i] - pb[k * m + i]);
        }
        total += cell;
    }
    return total;
}

double case_distance(const Case& a, const Case& b, const DistanceSpec& spec, DtwWorkspace* ws) {
    check_window(spec.window_fraction);
    switch (spec.strategy) {
        case DtwStrategy::independent:
            return dtw_independent(a, b, spec.window_fraction, ws);
        case DtwStrategy::dependent:
            return dtw_dependent(a, b, spec.window_fraction, ws);
    }
    throw ModelError("unknown distance strategy");
}

}  // namespace mtsc
