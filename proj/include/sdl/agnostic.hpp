#pragma once

#include "sdl/concept_class.hpp"
#include "sdl/dimensions.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sdl::agnostic {

/// Points in the order the learner labels them; repetition allowed.
struct SampleMultiset {
    std::vector<PointId> points;
    std::size_t size() const noexcept { return points.size(); }
};

/// Distinct projections of a binary class onto a sample, in first-appearance order.
struct ExpertPool {
    std::vector<std::vector<std::uint8_t>> advice;  // [expert][round]
    int vc = 0;                                     // VC dimension of the origin class
    std::size_t size() const noexcept { return advice.size(); }
    std::size_t rounds() const noexcept { return advice.empty() ? 0 : advice.front().size(); }
};

/// Sum_{i <= d} C(T, i), saturating.
std::uint64_t sauer_bound(std::uint64_t T, int d);

/// Throws UnsupportedError for non-binary classes, ArgumentError for an empty or
/// out-of-range sample, InvariantViolation if the pool breaks the Sauer bound.
ExpertPool project(const ConceptClass& cls, const SampleMultiset& sample, const SearchBudget& budget = {});

/// Weighted fraction of experts advising 1. NumericError unless the weights sum to a positive finite value.
double mw_predict(const std::vector<double>& weights, const std::vector<std::uint8_t>& advice);
/// w_i * exp(-eta * |advice_i - label|). ArgumentError for eta < 0.
std::vector<double> mw_update(const std::vector<double>& weights, const std::vector<std::uint8_t>& advice, int label,
                              double eta);

/// Counter-based stream: the same (seed, trial, round, stream) always gives the same value.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t trial, std::uint64_t round, std::uint64_t stream);
double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t round, std::uint64_t stream);

/// What the environment sees when fixing the label of round t (0-based): the
/// learner's probability for this round and everything from earlier rounds.
struct History {
    std::size_t round = 0;
    std::size_t trial = 0;
    double p_hat = 0;
    std::vector<std::uint8_t> predictions;  // sampled predictions, rounds < t
    std::vector<std::uint8_t> labels;       // rounds < t
};

/// Label environments.
///   fixed          - the given sequence (length T)
///   oblivious      - one seeded random sequence, shared by every trial
///   bernoulli_half - fresh fair coins per trial and round
///   adaptive       - callback on the history (default: the complement of the previous prediction)
///   adversarial    - 1 iff p_hat < 1/2 (p_hat is fixed by past labels, so this is a legal adaptive rule)
///   realizable     - the advice of one expert of the pool
struct LabelSource {
    enum class Kind { fixed, oblivious, bernoulli_half, adaptive, adversarial, realizable };
    Kind kind = Kind::bernoulli_half;
    std::vector<std::uint8_t> labels;
    std::uint64_t seed = 0;
    std::function<int(const History&)> rule;
    std::size_t expert = 0;

    static LabelSource fixed(std::vector<std::uint8_t> labels);
    static LabelSource oblivious(std::uint64_t seed);
    static LabelSource bernoulli_half();
    static LabelSource adaptive(std::function<int(const History&)> rule = {});
    static LabelSource adversarial();
    static LabelSource realizable(std::size_t expert);

    std::string name() const;
};

struct TrialResult {
    std::size_t sampled_loss = 0;   // sum of |y_hat - y|
    double expected_loss = 0;       // sum of |p_hat - y|
    std::size_t best_loss = 0;      // best expert in hindsight
    double regret() const { return double(sampled_loss) - double(best_loss); }
    double expected_regret() const { return expected_loss - double(best_loss); }
};

struct RegretReport {
    std::string class_id;
    std::string label_source;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t T = 0;
    std::size_t N = 0;
    int vc = 0;
    double eta = 0;
    bool eta_default = true;
    std::vector<TrialResult> per_trial;

    double mean_regret = 0;
    double std_regret = 0;  // sample standard deviation
    double mean_expected_regret = 0;
    double max_expected_regret = 0;
    double upper_bound = 0;  // sqrt(ln(N) T / 2)
    double lower_bound = 0;  // sqrt(vc T / 8)

    double std_error() const;
    /// Every trial's analytic regret is within the upper bound (exact, no tolerance).
    bool upper_bound_holds() const { return max_expected_regret <= upper_bound; }
    /// mean sampled regret >= lower bound - 3 standard errors.
    bool lower_bound_holds() const { return mean_regret >= lower_bound - 3 * std_error(); }

    std::string to_json() const;
    std::string to_csv() const;
};

/// Runs multiplicative weights over the projection experts, `trials` times.
/// eta defaults to sqrt(8 ln N / T). Trials may run on `workers` threads; the
/// report does not depend on it. ArgumentError for trials == 0, T == 0 or N == 0.
RegretReport run_agnostic(const ConceptClass& cls, const SampleMultiset& sample, const LabelSource& source,
                          std::size_t trials, std::uint64_t seed, std::optional<double> eta = std::nullopt,
                          unsigned workers = 1, std::string class_id = {});

/// A shattered set of size vc, each point repeated k times in contiguous blocks.
SampleMultiset lower_bound_instance(const ConceptClass& cls, std::size_t k, const SearchBudget& budget = {});

struct Deviation {
    double mean = 0;       // Monte-Carlo E|r - k/2|, r ~ Binomial(k, 1/2)
    double std_error = 0;
    double bound = 0;      // sqrt(k / 8)
    bool holds() const { return mean >= bound - 3 * std_error; }
};
Deviation khinchine_deviation(std::size_t k, std::size_t trials, std::uint64_t seed);

}  // namespace sdl::agnostic
