#pragma once

/*
 * Seeded Monte Carlo estimation of expected synchronization times: run
 * the random subset process until it collapses to a singleton, many times
 * over, with per-trial substreams derived from (seed, trial index) so the
 * aggregate is reproducible and independent of execution order.
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "syncwalk/automaton.hpp"
#include "syncwalk/errors.hpp"

namespace syncwalk {

inline constexpr std::uint64_t kDefaultMaxSteps = 100'000'000;
inline constexpr const char* kRngName = "mt19937_64+splitmix64";

/// Mixes (seed, stream_id) into an independent 64-bit substream seed
/// (splitmix64 finalizer over a Weyl sequence).
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t z = seed + (stream_id + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Bernoulli letter stream: emits letter 0 ("a") with probability p and
/// letter 1 ("b") otherwise. Identical (p, seed, stream_id) give an
/// identical sequence; the uniform draw is built explicitly from the
/// engine output so results do not depend on library distribution
/// internals.
class BernoulliSource {
public:
    BernoulliSource(double p, std::uint64_t seed, std::uint64_t stream_id)
        : p_(p), seed_(seed), stream_id_(stream_id), engine_(derive_stream_seed(seed, stream_id)) {
        if (!(p > 0.0 && p < 1.0)) throw domain_error("letter probability must satisfy 0 < p < 1");
    }

    Letter next() {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return u < p_ ? 0 : 1;
    }

    double p() const { return p_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    double p_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// One run of the random process: draw letters from `source` and apply
/// them to `start` until the image is a singleton. Returns the number of
/// letters drawn, or nullopt if `max_steps` letters did not suffice.
template <typename Source>
std::optional<std::uint64_t> run_trial(const Automaton& a, Source& source, const StateSet& start,
                                       std::uint64_t max_steps) {
    if (start.universe() != a.num_states) throw domain_error("state set universe mismatch");
    if (start.empty()) throw domain_error("trial must start from a non-empty set");
    if (max_steps < 1) throw domain_error("max_steps must be at least 1");
    if (a.alphabet_size() != 2) throw domain_error("Bernoulli trials need a 2-letter alphabet");

    StateSet current = start;
    std::uint64_t steps = 0;
    while (!current.singleton()) {
        if (steps == max_steps) return std::nullopt;
        current = apply_letter(a, current, source.next());
        ++steps;
    }
    return steps;
}

struct Estimate {
    double mean = 0.0;
    double stderr_value = 0.0;
    bool stderr_defined = true;  // false when trials == 1
    std::uint64_t trials = 0;
    std::uint64_t truncated = 0;  // always 0 in a returned estimate
    std::uint64_t seed = 0;
    double p = 0.0;
    std::string rng_name = kRngName;
};

struct EstimateOptions {
    std::uint64_t max_steps = kDefaultMaxSteps;
    /// When a caller knows the exact expectation (e.g. from the chain
    /// solver), the estimator refuses to run if it exceeds max_steps/10;
    /// otherwise truncation would silently bias the mean.
    std::optional<double> expected_hint;
};

/// Sample mean and standard error of the synchronization time over
/// independent substreams. Deterministic for fixed (seed, trials, p,
/// start); any truncated trial aborts with estimate_truncated_error.
inline Estimate estimate(const Automaton& a, double p, const StateSet& start, std::uint64_t trials,
                         std::uint64_t seed, const EstimateOptions& options = {}) {
    if (trials < 1) throw domain_error("trials must be at least 1");
    if (options.expected_hint &&
        *options.expected_hint > static_cast<double>(options.max_steps) / 10.0)
        throw estimate_truncated_error(
            "refusing to simulate: expected value " + std::to_string(*options.expected_hint) +
            " exceeds max_steps/10 = " + std::to_string(options.max_steps / 10));

    std::vector<std::uint64_t> counts;
    counts.reserve(trials);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        BernoulliSource source(p, seed, trial);
        const auto steps = run_trial(a, source, start, options.max_steps);
        if (!steps)
            throw estimate_truncated_error("trial " + std::to_string(trial) + " hit the step cap of " +
                                           std::to_string(options.max_steps));
        counts.push_back(*steps);
    }

    long double sum = 0.0L;
    for (std::uint64_t c : counts) sum += static_cast<long double>(c);
    const long double mean = sum / static_cast<long double>(trials);

    Estimate result;
    result.mean = static_cast<double>(mean);
    result.trials = trials;
    result.seed = seed;
    result.p = p;
    if (trials == 1) {
        result.stderr_defined = false;
        result.stderr_value = 0.0;
    } else {
        long double ss = 0.0L;
        for (std::uint64_t c : counts) {
            const long double d = static_cast<long double>(c) - mean;
            ss += d * d;
        }
        const long double variance = ss / static_cast<long double>(trials - 1);
        result.stderr_value =
            static_cast<double>(std::sqrt(variance / static_cast<long double>(trials)));
    }
    return result;
}

}  // namespace syncwalk
