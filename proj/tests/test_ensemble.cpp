#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "mtsc/dimension_ensemble.hpp"
#include "test_util.hpp"

using namespace mtsc;

namespace {

std::shared_ptr<Dataset> shared(Dataset ds) { return std::make_shared<Dataset>(std::move(ds)); }

/// Test member that emits a fixed distribution regardless of input.
class FixedMember : public UnivariateClassifier {
public:
    FixedMember(std::vector<double> dist, std::optional<double> quality = std::nullopt)
        : dist_(std::move(dist)), quality_(quality) {}
    void fit(const UnivariateView&, const Deadline&) override {}
    std::vector<double> predict_distribution(std::span<const double>) const override {
        return dist_;
    }
    std::optional<double> train_quality() const override { return quality_; }

private:
    std::vector<double> dist_;
    std::optional<double> quality_;
};

UnivariateFactory fixed_factory(std::vector<std::vector<double>> dists) {
    return [dists](std::size_t dim, std::uint64_t) -> std::unique_ptr<UnivariateClassifier> {
        return std::make_unique<FixedMember>(dists.at(dim));
    };
}

}  // namespace

TEST_CASE("mean combination averages member distributions") {
    std::mt19937_64 rng(1);
    Dataset train = testutil::random_dataset(rng, 6, 2, 4, 2);
    DimensionEnsemble ens(fixed_factory({{0.6, 0.4}, {0.2, 0.8}}), Combination::mean);
    ens.fit(shared(train), Deadline::never());
    Case q(2, 4, 0);
    auto dist = ens.predict_distribution(q);
    CHECK(dist[0] == doctest::Approx(0.4));
    CHECK(dist[1] == doctest::Approx(0.6));
}

TEST_CASE("d=1 ensemble equals its lone member under any combination") {
    std::mt19937_64 rng(2);
    Dataset train = testutil::separable_dataset(rng, 12, 1, 8, 3);
    Dataset test = testutil::random_dataset(rng, 6, 1, 8, 3);
    for (auto comb : {Combination::mean, Combination::quality_weighted}) {
        DimensionEnsemble ens(
            [](std::size_t, std::uint64_t) { return std::make_unique<Univariate1NnDtw>(1.0); },
            comb);
        ens.fit(shared(train), Deadline::never());

        Univariate1NnDtw lone(1.0);
        UnivariateView view;
        view.num_classes = train.num_classes();
        for (const Case& c : train.cases) {
            view.series.push_back(c.dim(0));
            view.labels.push_back(c.label);
        }
        lone.fit(view, Deadline::never());
        for (const Case& q : test.cases) {
            CHECK(ens.predict_distribution(q) == lone.predict_distribution(q.dim(0)));
        }
    }
}

TEST_CASE("one-hot agreement and degenerate weights") {
    std::mt19937_64 rng(3);
    Dataset train = testutil::random_dataset(rng, 6, 2, 4, 3);

    // all members agree on a one-hot: the ensemble returns it
    DimensionEnsemble agree(fixed_factory({{0, 1, 0}, {0, 1, 0}}), Combination::mean);
    agree.fit(shared(train), Deadline::never());
    Case q(2, 4, 0);
    auto dist = agree.predict_distribution(q);
    CHECK(dist == std::vector<double>{0, 1, 0});

    // quality weights (1, 0): member 1 alone decides
    auto weighted_factory = [](std::size_t dim,
                               std::uint64_t) -> std::unique_ptr<UnivariateClassifier> {
        if (dim == 0) return std::make_unique<FixedMember>(std::vector<double>{1, 0, 0}, 1.0);
        return std::make_unique<FixedMember>(std::vector<double>{0, 0, 1}, 0.0);
    };
    DimensionEnsemble ens(weighted_factory, Combination::quality_weighted);
    ens.fit(shared(train), Deadline::never());
    CHECK(ens.weights()[0] == doctest::Approx(1.0));
    CHECK(ens.weights()[1] == doctest::Approx(0.0));
    CHECK(ens.predict_distribution(q) == std::vector<double>{1, 0, 0});
}

TEST_CASE("ensemble output is a valid convex combination") {
    std::mt19937_64 rng(4);
    Dataset train = testutil::separable_dataset(rng, 12, 3, 10, 3);
    auto ens = make_independent_1nn_dtw_ensemble();
    ens->fit(shared(train), Deadline::never());

    for (int trial = 0; trial < 1000; ++trial) {
        Case q(3, 10, 0);
        for (double& v : q.values) v = 4.0 * rng_unit(rng) - 2.0;
        auto dist = ens->predict_distribution(q);
        double sum = 0.0;
        for (double p : dist) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0 + 1e-12);
            sum += p;
        }
        CHECK(std::fabs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("permuting dimensions together with members leaves predictions unchanged") {
    std::mt19937_64 rng(5);
    Dataset train = testutil::separable_dataset(rng, 10, 3, 8, 2);
    Dataset test = testutil::random_dataset(rng, 8, 3, 8, 2);

    // permutation (2,0,1) applied to both the data and (implicitly) the members
    auto permute = [](const Dataset& ds, const std::vector<std::size_t>& perm) {
        Dataset out = ds;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            for (std::size_t k = 0; k < perm.size(); ++k) {
                auto src = ds.cases[i].dim(perm[k]);
                std::copy(src.begin(), src.end(), out.cases[i].dim(k).begin());
            }
        }
        return out;
    };
    std::vector<std::size_t> perm{2, 0, 1};
    Dataset train_p = permute(train, perm);
    Dataset test_p = permute(test, perm);

    auto a = make_independent_1nn_dtw_ensemble();
    auto b = make_independent_1nn_dtw_ensemble();
    a->fit(shared(train), Deadline::never());
    b->fit(shared(train_p), Deadline::never());
    for (std::size_t i = 0; i < test.size(); ++i) {
        CHECK(a->predict_distribution(test.cases[i]) == b->predict_distribution(test_p.cases[i]));
    }
}

TEST_CASE("member failures are annotated with the dimension index") {
    class Broken : public UnivariateClassifier {
        void fit(const UnivariateView&, const Deadline&) override {
            throw std::runtime_error("boom");
        }
        std::vector<double> predict_distribution(std::span<const double>) const override {
            return {};
        }
    };
    std::mt19937_64 rng(6);
    Dataset train = testutil::random_dataset(rng, 4, 2, 4, 2);
    DimensionEnsemble ens(
        [](std::size_t dim, std::uint64_t) -> std::unique_ptr<UnivariateClassifier> {
            if (dim == 1) return std::make_unique<Broken>();
            return std::make_unique<FixedMember>(std::vector<double>{1, 0});
        },
        Combination::mean);
    try {
        ens.fit(shared(train), Deadline::never());
        FAIL("expected ModelError");
    } catch (const ModelError& e) {
        CHECK(std::string(e.what()).find("dimension 1") != std::string::npos);
    }
}

TEST_CASE("majority baseline predicts the modal class, lowest index on ties") {
    std::mt19937_64 rng(7);
    Dataset train = testutil::random_dataset(rng, 8, 1, 4, 2);
    for (std::size_t i = 0; i < train.size(); ++i) train.cases[i].label = (i < 5) ? 1 : 0;
    MajorityClassBaseline maj;
    maj.fit(shared(train), Deadline::never());
    CHECK(maj.majority_class() == 1);
    Case q(1, 4, 0);
    CHECK(maj.predict(q) == 1);

    // tie 4-4: lowest class index wins
    for (std::size_t i = 0; i < train.size(); ++i) train.cases[i].label = (i < 4) ? 1 : 0;
    MajorityClassBaseline maj2;
    maj2.fit(shared(train), Deadline::never());
    CHECK(maj2.majority_class() == 0);

    // 100% one class: that class always
    for (Case& c : train.cases) c.label = 1;
    MajorityClassBaseline maj3;
    maj3.fit(shared(train), Deadline::never());
    CHECK(maj3.majority_class() == 1);
    CHECK(maj3.predict(q) == 1);
}

TEST_CASE("random baseline: deterministic per query, near-uniform over many queries") {
    std::mt19937_64 rng(8);
    Dataset train = testutil::random_dataset(rng, 9, 1, 4, 3);
    RandomBaseline rb(1234);
    rb.fit(shared(train), Deadline::never());

    std::vector<std::size_t> counts(3, 0);
    const int trials = 9000;
    for (int i = 0; i < trials; ++i) {
        Case q(1, 4, 0);
        for (double& v : q.values) v = rng_unit(rng);
        int first = rb.predict(q);
        CHECK(rb.predict(q) == first);  // same query, same draw
        ++counts[first];
    }
    for (std::size_t c = 0; c < 3; ++c) {
        // expected 1/3 each; allow 5 sigma of binomial noise
        double expect = trials / 3.0;
        double sigma = std::sqrt(trials * (1.0 / 3.0) * (2.0 / 3.0));
        CHECK(std::fabs(static_cast<double>(counts[c]) - expect) < 5.0 * sigma);
    }

    // a different seed gives a different draw sequence
    RandomBaseline rb2(99);
    rb2.fit(shared(train), Deadline::never());
    int diffs = 0;
    for (int i = 0; i < 50; ++i) {
        Case q(1, 4, 0);
        for (double& v : q.values) v = rng_unit(rng);
        diffs += rb.predict(q) != rb2.predict(q);
    }
    CHECK(diffs > 0);
}
