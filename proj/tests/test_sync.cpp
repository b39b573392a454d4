#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <syncwalk/generators.hpp>
#include <syncwalk/sync.hpp>

#include "support/oracles.hpp"

using namespace syncwalk;

namespace {
Word word(const std::string& text) { return Word::parse(text, {"a", "b"}); }
}  // namespace

TEST_CASE("is_sync_word on U_7") {
    const Automaton u7 = gen_un(7);
    CHECK(is_sync_word(u7, word("aaaabbb")));
    // Synchronizing words form a two-sided ideal.
    CHECK(is_sync_word(u7, word("baaaabbba")));
    CHECK_FALSE(is_sync_word(u7, word("aaabbb")));
    CHECK_FALSE(oracles::contains_factor("aaabbb", 4, 3));
}

TEST_CASE("is_synchronizing") {
    CHECK(is_synchronizing(gen_cerny(7)));
    CHECK(is_synchronizing(gen_un(7)));
    CHECK_FALSE(is_synchronizing(oracles::permutation_automaton(5)));
}

TEST_CASE("reset thresholds of the families") {
    const ResetReport c7 = reset_threshold(gen_cerny(7));
    CHECK(c7.threshold == 36);
    // Lexicographically smallest shortest reset word: a (b^6 a)^5.
    std::string expected = "a";
    for (int rep = 0; rep < 5; ++rep) expected += "bbbbbba";
    CHECK(c7.witness.render({"a", "b"}) == expected);
    CHECK(is_sync_word(gen_cerny(7), c7.witness));
    CHECK(c7.explored > 0);

    CHECK(reset_threshold(gen_cerny(3)).threshold == 4);

    const ResetReport u7 = reset_threshold(gen_un(7));
    CHECK(u7.threshold == 7);
    CHECK(u7.witness.render({"a", "b"}) == "aaaabbb");
}

TEST_CASE("reset threshold cross-validated by exhaustive word enumeration") {
    for (int n = 2; n <= 8; ++n) {
        INFO("U_" << n);
        const auto brute = oracles::brute_shortest_sync(gen_un(n), static_cast<std::size_t>(n) + 2);
        REQUIRE(brute.has_value());
        CHECK(reset_threshold(gen_un(n)).threshold == *brute);
    }
    for (int n : {3, 4, 5}) {
        INFO("C_" << n);
        const std::size_t expected = static_cast<std::size_t>((n - 1) * (n - 1));
        const auto brute = oracles::brute_shortest_sync(gen_cerny(n), expected + 1);
        REQUIRE(brute.has_value());
        CHECK(*brute == expected);
        CHECK(reset_threshold(gen_cerny(n)).threshold == expected);
    }
}

TEST_CASE("every found reset word stays synchronizing inside any context") {
    std::mt19937 rng(4242);
    for (const Automaton& a : {gen_cerny(5), gen_un(6)}) {
        const Word w = reset_threshold(a).witness;
        for (int iter = 0; iter < 40; ++iter) {
            const Word u = oracles::random_word(rng, 10);
            const Word v = oracles::random_word(rng, 10);
            Word uwv;
            uwv.letters = u.letters;
            uwv.letters.insert(uwv.letters.end(), w.letters.begin(), w.letters.end());
            uwv.letters.insert(uwv.letters.end(), v.letters.begin(), v.letters.end());
            REQUIRE(is_sync_word(a, uwv));
        }
    }
}

TEST_CASE("thresholds respect the cubic upper bound") {
    for (int n = 2; n <= 10; ++n) {
        const std::size_t bound = static_cast<std::size_t>((n * n * n - n) / 6);
        CHECK(reset_threshold(gen_cerny(n)).threshold <= bound);
    }
    for (int n = 2; n <= 12; ++n) {
        const std::size_t bound =
            static_cast<std::size_t>(((n + 1) * (n + 1) * (n + 1) - (n + 1)) / 6);
        CHECK(reset_threshold(gen_un(n)).threshold <= bound);
    }
}

TEST_CASE("reset_threshold error paths") {
    CHECK_THROWS_AS(reset_threshold(oracles::permutation_automaton(4)), not_synchronizing_error);
    CHECK_THROWS_AS(reset_threshold(gen_cerny(7), 3), resource_exceeded_error);
    CHECK(is_synchronizing(gen_cerny(7)));  // the cap, not the automaton, was the problem
}

TEST_CASE("pair_reset_length") {
    const Automaton c3 = gen_cerny(3);
    CHECK(pair_reset_length(c3, 0, 1) == 1);
    CHECK(pair_reset_length(c3, 1, 2) == 3);
    CHECK(*oracles::brute_shortest_pair_merge(c3, 1, 2, 4) == 3);

    // C_7 pair {1,4}: only {0,1} merges (under a), and the distance
    // coordinate drops once per full b-cycle, so the shortest merge takes
    // 3 * 7 = 21 letters. Brute force agrees.
    const Automaton c7 = gen_cerny(7);
    CHECK(pair_reset_length(c7, 1, 4) == 21);
    CHECK(*oracles::brute_shortest_pair_merge(c7, 1, 4, 21) == 21);

    // The pair {1, 1+ell} of odd C_n sits at distance ell * n.
    for (int n : {3, 5, 7, 9}) {
        const Automaton cn = gen_cerny(n);
        for (int ell = 1; ell <= (n - 1) / 2; ++ell)
            CHECK(pair_reset_length(cn, 1, static_cast<State>(1 + ell)) ==
                  static_cast<std::size_t>(ell * n));
    }

    CHECK_THROWS_AS(pair_reset_length(c3, 1, 1), domain_error);
    CHECK_THROWS_AS(pair_reset_length(oracles::permutation_automaton(4), 0, 1),
                    pair_not_synchronizable_error);
}

TEST_CASE("is_synchronizing agrees with reset_threshold outcome") {
    std::mt19937 rng(314159);
    for (int iter = 0; iter < 60; ++iter) {
        const Automaton a = oracles::random_automaton(rng, 2 + rng() % 6);
        bool via_threshold = true;
        try {
            (void)reset_threshold(a);
        } catch (const not_synchronizing_error&) {
            via_threshold = false;
        }
        REQUIRE(is_synchronizing(a) == via_threshold);
    }
}
