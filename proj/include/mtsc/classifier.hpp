#pragma once

#include <chrono>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mtsc/dataset.hpp"
#include "mtsc/errors.hpp"

namespace mtsc {

/// Cooperative time budget. Long-running fits poll check() at natural
/// checkpoints (per tree, per transform pair, per query) and unwind with
/// TimeoutError when expired.
class Deadline {
public:
    Deadline() = default;
    static Deadline never() { return Deadline(); }
    static Deadline after(std::chrono::nanoseconds budget) {
        Deadline d;
        d.unlimited_ = false;
        d.at_ = std::chrono::steady_clock::now() + budget;
        return d;
    }

    bool expired() const {
        return !unlimited_ && std::chrono::steady_clock::now() >= at_;
    }
    void check() const {
        if (expired()) throw TimeoutError("time budget exceeded");
    }

private:
    bool unlimited_ = true;
    std::chrono::steady_clock::time_point at_{};
};

/// Index of the largest value; equal values resolve to the lowest index.
/// This is the global prediction tie-break.
int argmax_class(std::span<const double> distribution);

/// Common contract for every multivariate classifier in the library.
/// fit() may be called once; models are immutable afterwards and
/// predict_distribution is const and safe to fan out across threads.
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual void fit(std::shared_ptr<const Dataset> train,
                     const Deadline& deadline = Deadline::never()) = 0;

    /// Probability distribution over the training class set
    /// (non-negative, sums to 1 within 1e-9).
    virtual std::vector<double> predict_distribution(const Case& query) const = 0;

    /// Display name used by run records and result tables.
    virtual std::string name() const = 0;

    int predict(const Case& query) const {
        auto dist = predict_distribution(query);
        return argmax_class(dist);
    }
};

}  // namespace mtsc
