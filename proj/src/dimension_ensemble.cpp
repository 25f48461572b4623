#include "mtsc/dimension_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "mtsc/parallel.hpp"
#include "mtsc/rng.hpp"

namespace mtsc {

namespace {

UnivariateView project_dimension(const Dataset& ds, std::size_t k) {
    UnivariateView view;
    view.series.reserve(ds.size());
    view.labels.reserve(ds.size());
    view.num_classes = ds.num_classes();
    for (const Case& c : ds.cases) {
        view.series.push_back(c.dim(k));
        view.labels.push_back(c.label);
    }
    return view;
}

void check_member_output(const std::vector<double>& dist, std::size_t classes, std::size_t k) {
    if (dist.size() != classes) {
        throw ModelError("dimension " + std::to_string(k) +
                         ": member returned a distribution of wrong arity");
    }
    double sum = 0.0;
    for (double p : dist) {
        if (p < 0.0) {
            throw ModelError("dimension " + std::to_string(k) +
                             ": member returned a negative probability");
        }
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
        throw ModelError("dimension " + std::to_string(k) +
                         ": member distribution does not sum to 1");
    }
}

}  // namespace

DimensionEnsemble::DimensionEnsemble(UnivariateFactory factory, Combination combination,
                                     std::uint64_t seed, std::string display_name)
    : factory_(std::move(factory)),
      combination_(combination),
      seed_(seed),
      display_name_(std::move(display_name)) {}

void DimensionEnsemble::fit(std::shared_ptr<const Dataset> train, const Deadline& deadline) {
    if (!train || train->size() == 0) throw ModelError("EmptyModel: no training cases");
    train_ = std::move(train);
    const std::size_t d = train_->dims;
    members_.clear();
    members_.resize(d);

    parallel_for(d, [&](std::size_t k) {
        deadline.check();
        auto member = factory_(k, derive_seed(seed_, k));
        try {
            member->fit(project_dimension(*train_, k), deadline);
        } catch (const TimeoutError&) {
            throw;
        } catch (const std::exception& e) {
            throw ModelError("dimension " + std::to_string(k) + ": " + e.what());
        }
        members_[k] = std::move(member);
    });

    weights_.assign(d, 1.0 / static_cast<double>(d));
    if (combination_ == Combination::quality_weighted) {
        std::vector<double> raw(d, 0.0);
        bool all_have_quality = true;
        for (std::size_t k = 0; k < d; ++k) {
            auto q = members_[k]->train_quality();
            if (!q) {
                all_have_quality = false;
                break;
            }
            raw[k] = std::pow(*q, 4.0);
        }
        double total = std::accumulate(raw.begin(), raw.end(), 0.0);
        if (all_have_quality && total > 0.0) {
            for (std::size_t k = 0; k < d; ++k) weights_[k] = raw[k] / total;
        }
        // otherwise fall back to uniform 1/d
    }
}

std::vector<double> DimensionEnsemble::predict_distribution(const Case& query) const {
    if (!train_ || members_.empty()) throw ModelError("EmptyModel: fit() has not been called");
    if (query.dims != train_->dims || query.length != train_->length) {
        throw ShapeError("ShapeMismatch: query does not match the training shape");
    }
    const std::size_t classes = train_->num_classes();
    std::vector<double> combined(classes, 0.0);
    for (std::size_t k = 0; k < members_.size(); ++k) {
        auto dist = members_[k]->predict_distribution(query.dim(k));
        check_member_output(dist, classes, k);
        for (std::size_t c = 0; c < classes; ++c) combined[c] += weights_[k] * dist[c];
    }
    return combined;
}

std::string DimensionEnsemble::name() const {
    return display_name_.empty() ? "IndepEnsemble" : display_name_;
}

Univariate1NnDtw::Univariate1NnDtw(double window_fraction, bool estimate_quality)
    : window_fraction_(window_fraction), estimate_quality_(estimate_quality) {}

namespace {

// Scan for the nearest series under univariate DTW; ties resolve to the
// lowest class index, then the lowest case index.
std::size_t nearest_univariate(const UnivariateView& train, std::span<const double> query,
                               double r, DtwWorkspace& ws,
                               std::optional<std::size_t> skip_lo = std::nullopt,
                               std::optional<std::size_t> skip_hi = std::nullopt) {
    double best_d = std::numeric_limits<double>::infinity();
    int best_class = std::numeric_limits<int>::max();
    std::size_t best = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < train.series.size(); ++i) {
        if (skip_lo && i >= *skip_lo && i < *skip_hi) continue;
        double d = dtw_univariate(query, train.series[i], r, &ws);
        if (best == static_cast<std::size_t>(-1) || d < best_d ||
            (d == best_d && train.labels[i] < best_class)) {
            best = i;
            best_d = d;
            best_class = train.labels[i];
        }
    }
    return best;
}

}  // namespace

void Univariate1NnDtw::fit(const UnivariateView& train, const Deadline& deadline) {
    if (train.series.empty()) throw ModelError("EmptyModel: no training series");
    train_ = train;
    quality_.reset();
    if (!estimate_quality_ || train.series.size() < 2) return;

    // Leave-one-out accuracy as the quality estimate (the n-fold limit of
    // cross-validation; deterministic, no fold assignment to seed).
    const std::size_t n = train.series.size();
    DtwWorkspace ws;
    std::size_t correct = 0;
    for (std::size_t q = 0; q < n; ++q) {
        deadline.check();
        std::size_t hit = nearest_univariate(train_, train_.series[q], window_fraction_, ws, q, q + 1);
        correct += train_.labels[hit] == train_.labels[q];
    }
    quality_ = static_cast<double>(correct) / static_cast<double>(n);
}

std::vector<double> Univariate1NnDtw::predict_distribution(std::span<const double> series) const {
    if (train_.series.empty()) throw ModelError("EmptyModel: fit() has not been called");
    DtwWorkspace ws;
    std::size_t hit = nearest_univariate(train_, series, window_fraction_, ws);
    std::vector<double> dist(train_.num_classes, 0.0);
    dist[train_.labels[hit]] = 1.0;
    return dist;
}

void MajorityClassBaseline::fit(std::shared_ptr<const Dataset> train, const Deadline&) {
    if (!train || train->size() == 0) throw ModelError("EmptyModel: no training cases");
    classes_ = train->num_classes();
    auto hist = train->class_histogram();
    std::size_t best = 0;
    for (std::size_t c = 1; c < hist.size(); ++c) {
        if (hist[c] > hist[best]) best = c;  // ties keep the lowest index
    }
    majority_ = static_cast<int>(best);
}

int MajorityClassBaseline::majority_class() const {
    if (majority_ < 0) throw ModelError("EmptyModel: fit() has not been called");
    return majority_;
}

std::vector<double> MajorityClassBaseline::predict_distribution(const Case&) const {
    std::vector<double> dist(classes_, 0.0);
    dist[majority_class()] = 1.0;
    return dist;
}

RandomBaseline::RandomBaseline(std::uint64_t seed) : seed_(seed) {}

void RandomBaseline::fit(std::shared_ptr<const Dataset> train, const Deadline&) {
    if (!train || train->num_classes() == 0) throw ModelError("EmptyModel: no class set");
    classes_ = train->num_classes();
}

std::vector<double> RandomBaseline::predict_distribution(const Case& query) const {
    if (classes_ == 0) throw ModelError("EmptyModel: fit() has not been called");
    // Hash the query's bytes so the draw is a pure function of (seed, query):
    // deterministic under any prediction order or parallel fan-out.
    std::uint64_t h = seed_ ^ 0x51'7c'c1'b7'27'22'0a'95ull;
    for (double v : query.values) {
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof v);
        std::memcpy(&bits, &v, sizeof bits);
        h = derive_seed(h, bits);
    }
    std::vector<double> dist(classes_, 0.0);
    dist[h % classes_] = 1.0;
    return dist;
}

std::unique_ptr<DimensionEnsemble> make_independent_1nn_dtw_ensemble(double window_fraction,
                                                                     Combination combination) {
    UnivariateFactory factory = [window_fraction](std::size_t, std::uint64_t) {
        return std::make_unique<Univariate1NnDtw>(window_fraction, true);
    };
    return std::make_unique<DimensionEnsemble>(std::move(factory), combination, 0,
                                               "IndepEnsemble(1NN-DTW)");
}

}  // namespace mtsc
