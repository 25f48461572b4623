#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtsc/classifier.hpp"
#include "mtsc/dtw.hpp"

namespace mtsc {

/// Univariate projection of one dimension of a dataset. Spans alias the
/// parent dataset, which the ensemble keeps alive.
struct UnivariateView {
    std::vector<std::span<const double>> series;
    std::vector<int> labels;
    std::size_t num_classes = 0;
};

/// Contract for a univariate base classifier wrapped by the ensemble.
/// predict_distribution returns num_classes non-negative reals summing to 1.
class UnivariateClassifier {
public:
    virtual ~UnivariateClassifier() = default;
    virtual void fit(const UnivariateView& train, const Deadline& deadline) = 0;
    virtual std::vector<double> predict_distribution(std::span<const double> series) const = 0;
    /// Optional training-quality estimate in [0,1] used by quality weighting.
    virtual std::optional<double> train_quality() const { return std::nullopt; }
};

/// Builds one member for dimension `dim`; must be deterministic given `seed`.
using UnivariateFactory =
    std::function<std::unique_ptr<UnivariateClassifier>(std::size_t dim, std::uint64_t seed)>;

enum class Combination { mean, quality_weighted };

/// Trains one univariate member per dimension and combines their probability
/// outputs into a single distribution: sum_k w_k * member_k(query dim k).
class DimensionEnsemble : public Classifier {
public:
    DimensionEnsemble(UnivariateFactory factory, Combination combination,
                      std::uint64_t seed = 0, std::string display_name = "");

    void fit(std::shared_ptr<const Dataset> train, const Deadline& deadline) override;
    std::vector<double> predict_distribution(const Case& query) const override;
    std::string name() const override;

    std::span<const double> weights() const { return weights_; }
    std::size_t members() const { return members_.size(); }

private:
    UnivariateFactory factory_;
    Combination combination_;
    std::uint64_t seed_;
    std::string display_name_;
    std::shared_ptr<const Dataset> train_;
    std::vector<std::unique_ptr<UnivariateClassifier>> members_;
    std::vector<double> weights_;
};

/// 1-NN DTW on a single dimension; the stock base member. train_quality is
/// its leave-one-out accuracy (deterministic, the n-fold limit of CV).
class Univariate1NnDtw : public UnivariateClassifier {
public:
    explicit Univariate1NnDtw(double window_fraction = 1.0, bool estimate_quality = true);
    void fit(const UnivariateView& train, const Deadline& deadline) override;
    std::vector<double> predict_distribution(std::span<const double> series) const override;
    std::optional<double> train_quality() const override { return quality_; }

private:
    double window_fraction_;
    bool estimate_quality_;
    UnivariateView train_;
    std::optional<double> quality_;
};

/// Predicts the modal training class (lowest index on ties), always.
class MajorityClassBaseline : public Classifier {
public:
    void fit(std::shared_ptr<const Dataset> train, const Deadline& deadline) override;
    std::vector<double> predict_distribution(const Case& query) const override;
    std::string name() const override { return "Majority"; }
    int majority_class() const;

private:
    int majority_ = -1;
    std::size_t classes_ = 0;
};

/// Draws a class uniformly at random per query, from a fixed seed. The draw
/// sequence is deterministic over the sequence of predict calls.
class RandomBaseline : public Classifier {
public:
    explicit RandomBaseline(std::uint64_t seed = 0);
    void fit(std::shared_ptr<const Dataset> train, const Deadline& deadline) override;
    std::vector<double> predict_distribution(const Case& query) const override;
    std::string name() const override { return "Random"; }

private:
    std::uint64_t seed_;
    std::size_t classes_ = 0;
};

/// Convenience: the §-style independent ensemble of univariate full-window
/// 1-NN DTW members, named "IndepEnsemble(1NN-DTW)" in result tables.
std::unique_ptr<DimensionEnsemble> make_independent_1nn_dtw_ensemble(
    double window_fraction = 1.0, Combination combination = Combination::mean);

}  // namespace mtsc
