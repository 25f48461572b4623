#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mtsc/classifier.hpp"
#include "mtsc/dtw.hpp"

namespace mtsc {

/// Result of a nearest-neighbour scan.
struct NeighbourHit {
    std::size_t index = 0;  // training-case index
    double distance = 0.0;
};

/// 1-nearest-neighbour over any DistanceSpec. Deterministic: among
/// equal-distance neighbours the lowest class index wins, then the lowest
/// training-case index.
class NearestNeighbourClassifier : public Classifier {
public:
    explicit NearestNeighbourClassifier(DistanceSpec spec, std::string display_name = "");

    void fit(std::shared_ptr<const Dataset> train, const Deadline& deadline) override;
    std::vector<double> predict_distribution(const Case& query) const override;
    std::string name() const override;

    /// Nearest training case under the model's distance; `skip` excludes one
    /// index (used for leave-one-out). Throws ModelError before fit().
    NeighbourHit nearest(const Case& query, std::optional<std::size_t> skip = std::nullopt) const;

    const DistanceSpec& spec() const { return spec_; }
    const Dataset& train_data() const;

private:
    DistanceSpec spec_;
    std::string display_name_;
    std::shared_ptr<const Dataset> train_;
};

/// Per-query choice between the independent and dependent strategies.
/// The score S(q) = distI(q) / distD(q) of nearest-neighbour distances is
/// compared against a threshold trained by leave-one-out on the training set:
/// predict with the independent model when S(q) < theta, dependent otherwise.
class AdaptiveDtwClassifier : public Classifier {
public:
    explicit AdaptiveDtwClassifier(double window_fraction = 1.0);

    void fit(std::shared_ptr<const Dataset> train, const Deadline& deadline) override;
    std::vector<double> predict_distribution(const Case& query) const override;
    std::string name() const override;

    double threshold() const { return threshold_; }
    /// Overrides the trained threshold (the decision behaviour is pluggable;
    /// +inf forces the independent side for every finite score, 0 forces the
    /// dependent side).
    void set_threshold(double theta) { threshold_ = theta; }
    double loo_accuracy() const { return loo_accuracy_; }

    /// The trained decision rule on a raw score value.
    bool prefers_independent(double score) const { return score < threshold_; }

    /// Score for a query under the fitted models (leave-one-out aware when
    /// `skip` is set). Conventions: distD = 0 with distI > 0 gives +inf;
    /// both zero gives 1.
    double score(const Case& query, std::optional<std::size_t> skip = std::nullopt) const;

private:
    double window_fraction_;
    double threshold_ = std::numeric_limits<double>::infinity();
    double loo_accuracy_ = 0.0;
    NearestNeighbourClassifier independent_;
    NearestNeighbourClassifier dependent_;
};

}  // namespace mtsc
