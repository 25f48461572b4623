#include "mtsc/nearest_neighbour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtsc/parallel.hpp"

namespace mtsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_query_shape(const Dataset& train, const Case& query) {
    if (query.dims != train.dims || query.length != train.length) {
        throw ShapeError("ShapeMismatch: query is " + std::to_string(query.dims) + "x" +
                         std::to_string(query.length) + ", training data is " +
                         std::to_string(train.dims) + "x" + std::to_string(train.length));
    }
}

std::vector<double> one_hot(std::size_t classes, int label) {
    std::vector<double> dist(classes, 0.0);
    dist[label] = 1.0;
    return dist;
}

}  // namespace

int argmax_class(std::span<const double> distribution) {
    if (distribution.empty()) throw ModelError("empty distribution");
    std::size_t best = 0;
    for (std::size_t i = 1; i < distribution.size(); ++i) {
        if (distribution[i] > distribution[best]) best = i;
    }
    return static_cast<int>(best);
}

NearestNeighbourClassifier::NearestNeighbourClassifier(DistanceSpec spec,
                                                       std::string display_name)
    : spec_(spec), display_name_(std::move(display_name)) {}

void NearestNeighbourClassifier::fit(std::shared_ptr<const Dataset> train, const Deadline&) {
    if (!train || train->size() == 0) throw ModelError("EmptyModel: no training cases");
    train_ = std::move(train);
}

const Dataset& NearestNeighbourClassifier::train_data() const {
    if (!train_) throw ModelError("EmptyModel: fit() has not been called");
    return *train_;
}

NeighbourHit NearestNeighbourClassifier::nearest(const Case& query,
                                                 std::optional<std::size_t> skip) const {
    const Dataset& train = train_data();
    check_query_shape(train, query);

    DtwWorkspace ws;
    NeighbourHit best{0, kInf};
    int best_class = std::numeric_limits<int>::max();
    bool found = false;
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (skip && *skip == i) continue;
        double d = case_distance(query, train.cases[i], spec_, &ws);
        int cls = train.cases[i].label;
        // ties: lowest class index, then lowest training-case index
        if (!found || d < best.distance || (d == best.distance && cls < best_class)) {
            best = NeighbourHit{i, d};
            best_class = cls;
            found = true;
        }
    }
    if (!found) throw ModelError("EmptyModel: no candidate neighbours");
    return best;
}

std::vector<double> NearestNeighbourClassifier::predict_distribution(const Case& query) const {
    const Dataset& train = train_data();
    NeighbourHit hit = nearest(query);
    return one_hot(train.num_classes(), train.cases[hit.index].label);
}

std::string NearestNeighbourClassifier::name() const {
    if (!display_name_.empty()) return display_name_;
    return spec_.strategy == DtwStrategy::independent ? "DTW_I" : "DTW_D";
}

AdaptiveDtwClassifier::AdaptiveDtwClassifier(double window_fraction)
    : window_fraction_(window_fraction),
      independent_(DistanceSpec{DtwStrategy::independent, window_fraction}),
      dependent_(DistanceSpec{DtwStrategy::dependent, window_fraction}) {}

double AdaptiveDtwClassifier::score(const Case& query, std::optional<std::size_t> skip) const {
    double dist_i = independent_.nearest(query, skip).distance;
    double dist_d = dependent_.nearest(query, skip).distance;
    if (dist_d == 0.0) return dist_i == 0.0 ? 1.0 : kInf;
    return dist_i / dist_d;
}

void AdaptiveDtwClassifier::fit(std::shared_ptr<const Dataset> train, const Deadline& deadline) {
    if (!train || train->size() < 2) {
        throw ModelError("EmptyModel: adaptive fit needs at least 2 training cases");
    }
    independent_.fit(train, deadline);
    dependent_.fit(train, deadline);

    const std::size_t n = train->size();
    std::vector<double> scores(n);
    std::vector<char> indep_correct(n), dep_correct(n);

    // Leave-one-out pass under both strategies; parallel across held-out cases.
    parallel_for(n, [&](std::size_t q) {
        deadline.check();
        const Case& held_out = train->cases[q];
        NeighbourHit hit_i = independent_.nearest(held_out, q);
        NeighbourHit hit_d = dependent_.nearest(held_out, q);
        double di = hit_i.distance;
        double dd = hit_d.distance;
        scores[q] = (dd == 0.0) ? (di == 0.0 ? 1.0 : kInf) : di / dd;
        indep_correct[q] = train->cases[hit_i.index].label == held_out.label;
        dep_correct[q] = train->cases[hit_d.index].label == held_out.label;
    });

    // Candidate thresholds: the observed scores plus the two sentinels.
    std::vector<double> candidates(scores);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    candidates.insert(candidates.begin(), -kInf);
    candidates.push_back(kInf);

    std::size_t best_correct = 0;
    double best_theta = -kInf;
    for (double theta : candidates) {
        std::size_t correct = 0;
        for (std::size_t q = 0; q < n; ++q) {
            correct += (scores[q] < theta) ? indep_correct[q] : dep_correct[q];
        }
        if (correct >= best_correct) {  // ties resolve toward the largest theta
            best_correct = correct;
            best_theta = theta;
        }
    }
    threshold_ = best_theta;
    loo_accuracy_ = static_cast<double>(best_correct) / static_cast<double>(n);
}

std::vector<double> AdaptiveDtwClassifier::predict_distribution(const Case& query) const {
    double s = score(query);
    return prefers_independent(s) ? independent_.predict_distribution(query)
                                  : dependent_.predict_distribution(query);
}

std::string AdaptiveDtwClassifier::name() const { return "DTW_A"; }

}  // namespace mtsc
