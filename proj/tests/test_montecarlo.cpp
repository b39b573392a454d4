#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include <syncwalk/generators.hpp>
#include <syncwalk/markov.hpp>
#include <syncwalk/montecarlo.hpp>

#include "support/oracles.hpp"

using namespace syncwalk;

namespace {

struct ScriptedSource {
    std::vector<Letter> letters;
    std::size_t at = 0;
    Letter next() {
        REQUIRE(at < letters.size());
        return letters[at++];
    }
};

struct PoisonedSource {
    Letter next() {
        FAIL("a singleton start must draw no letters");
        return 0;
    }
};

}  // namespace

TEST_CASE("run_trial counts exactly the letters drawn") {
    // a a b collapses the full state set of U_3: {0..3} -> {1,2,3} -> {2,3} -> {3}.
    const Automaton u3 = gen_un(3);
    ScriptedSource source{{0, 0, 1}};
    const auto steps = run_trial(u3, source, StateSet::full(4), 100);
    REQUIRE(steps.has_value());
    CHECK(*steps == 3);
    CHECK(source.at == 3);
}

TEST_CASE("singleton starts finish in zero steps without drawing") {
    const Automaton u3 = gen_un(3);
    PoisonedSource source;
    const auto steps = run_trial(u3, source, StateSet::single(4, 2), 100);
    REQUIRE(steps.has_value());
    CHECK(*steps == 0);
}

TEST_CASE("permutation automata only ever truncate") {
    const Automaton perm = oracles::permutation_automaton(4);
    BernoulliSource source(0.5, 1, 0);
    CHECK_FALSE(run_trial(perm, source, StateSet::full(4), 1000).has_value());
    EstimateOptions capped;
    capped.max_steps = 500;
    CHECK_THROWS_AS(estimate(perm, 0.5, StateSet::full(4), 3, 7, capped),
                    estimate_truncated_error);
}

TEST_CASE("run_trial input checks") {
    const Automaton u3 = gen_un(3);
    BernoulliSource source(0.5, 1, 0);
    CHECK_THROWS_AS(run_trial(u3, source, StateSet(4), 10), domain_error);
    CHECK_THROWS_AS(run_trial(u3, source, StateSet::full(4), 0), domain_error);
    CHECK_THROWS_AS(run_trial(u3, source, StateSet::full(3), 10), domain_error);
}

TEST_CASE("substream derivation is deterministic and seed-sensitive") {
    CHECK(derive_stream_seed(42, 0) == derive_stream_seed(42, 0));
    CHECK(derive_stream_seed(42, 0) != derive_stream_seed(42, 1));
    CHECK(derive_stream_seed(42, 0) != derive_stream_seed(43, 0));

    BernoulliSource a(0.3, 99, 5);
    BernoulliSource b(0.3, 99, 5);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
}

TEST_CASE("estimates are bit-identical across reruns") {
    const Automaton u3 = gen_un(3);
    const auto first = estimate(u3, 0.5, StateSet::full(4), 2000, 424242);
    const auto second = estimate(u3, 0.5, StateSet::full(4), 2000, 424242);
    CHECK(std::memcmp(&first.mean, &second.mean, sizeof(double)) == 0);
    CHECK(std::memcmp(&first.stderr_value, &second.stderr_value, sizeof(double)) == 0);
    CHECK(first.trials == second.trials);

    const auto other_seed = estimate(u3, 0.5, StateSet::full(4), 2000, 424243);
    CHECK(other_seed.mean != first.mean);
}

TEST_CASE("estimate converges to the known expectations") {
    const Automaton u3 = gen_un(3);
    const auto est = estimate(u3, 0.5, StateSet::full(4), 10000, 20240811);
    CHECK(est.stderr_defined);
    CHECK(est.stderr_value > 0);
    CHECK(std::abs(est.mean - 8.0) <= 4 * est.stderr_value);

    const Automaton c3 = gen_cerny(3);
    const auto pair_est = estimate(c3, 0.5, StateSet::of(3, {1, 2}), 10000, 20240811);
    CHECK(std::abs(pair_est.mean - 14.0) <= 4 * pair_est.stderr_value);
}

TEST_CASE("estimates agree with the exact solver on random synchronizing automata") {
    // End-to-end: generator-independent automata, exact chain solve, and
    // simulation must all tell the same story.
    std::mt19937 rng(1618);
    int tested = 0;
    while (tested < 4) {
        const Automaton a = oracles::random_automaton(rng, 3 + rng() % 5);
        Rational exact;
        try {
            exact = expected_sync_time(a, make_distribution(Rational(2, 5)));
        } catch (const not_absorbing_error&) {
            continue;  // not synchronizing; draw another
        }
        const auto est = estimate(a, 0.4, StateSet::full(a.num_states), 20000, 90210);
        REQUIRE(std::abs(est.mean - to_double(exact)) <= 4 * est.stderr_value);
        ++tested;
    }
}

TEST_CASE("single-trial estimates flag the undefined standard error") {
    const Automaton u3 = gen_un(3);
    const auto est = estimate(u3, 0.5, StateSet::full(4), 1, 7);
    CHECK_FALSE(est.stderr_defined);
    CHECK(est.stderr_value == 0.0);
    CHECK(est.trials == 1);
    CHECK(est.mean >= 0);
}

TEST_CASE("estimator refuses expectations close to the step cap") {
    const Automaton u3 = gen_un(3);
    EstimateOptions options;
    options.max_steps = 1000;
    options.expected_hint = 200.0;  // > max_steps / 10
    CHECK_THROWS_AS(estimate(u3, 0.5, StateSet::full(4), 10, 7, options),
                    estimate_truncated_error);
    options.expected_hint = 8.0;
    CHECK_NOTHROW(estimate(u3, 0.5, StateSet::full(4), 10, 7, options));
}

TEST_CASE("source and estimate domain checks") {
    CHECK_THROWS_AS(BernoulliSource(0.0, 1, 0), domain_error);
    CHECK_THROWS_AS(BernoulliSource(1.0, 1, 0), domain_error);
    CHECK_THROWS_AS(estimate(gen_un(3), 0.5, StateSet::full(4), 0, 7), domain_error);
}
