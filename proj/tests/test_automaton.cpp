#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <syncwalk/automaton.hpp>
#include <syncwalk/generators.hpp>

#include "support/oracles.hpp"

using namespace syncwalk;

namespace {
Word word(const std::string& text) { return Word::parse(text, {"a", "b"}); }
}  // namespace

TEST_CASE("apply_letter on family automata") {
    const Automaton c7 = gen_cerny(7);
    CHECK(apply_letter(c7, State(0), Letter(1)) == 1);
    CHECK(apply_letter(c7, State(3), Letter(0)) == 3);

    // U_7 state 5 in 1-based numbering (internal 4) fixes itself under a.
    const Automaton u7 = gen_un(7);
    CHECK(apply_letter(u7, State(4), Letter(0)) == 4);

    CHECK_THROWS_AS(apply_letter(c7, State(7), Letter(0)), domain_error);
    CHECK_THROWS_AS(apply_letter(c7, State(0), Letter(2)), domain_error);
}

TEST_CASE("apply_word examples") {
    const Automaton c3 = gen_cerny(3);
    CHECK(apply_word(c3, StateSet::full(3), Word{}) == StateSet::full(3));
    CHECK(apply_word(c3, StateSet::of(3, {0, 2}), word("b")) == StateSet::of(3, {0, 1}));

    // In U_7 the word a^4 b^3 carries 1-based state 1 (internal 0) to the
    // sink, 1-based n+1 = 8 (internal 7).
    const Automaton u7 = gen_un(7);
    CHECK(apply_word(u7, StateSet::single(8, 0), word("aaaabbb")) == StateSet::single(8, 7));
    CHECK(apply_word(u7, State(0), word("aaaabbb")) == 7);
}

TEST_CASE("apply_word is a monoid action and never grows images") {
    std::mt19937 rng(20240811);
    for (int iter = 0; iter < 200; ++iter) {
        const Automaton a = oracles::random_automaton(rng, 1 + rng() % 9);
        const StateSet s = oracles::random_subset(rng, a.num_states);
        const Word u = oracles::random_word(rng, 10);
        const Word v = oracles::random_word(rng, 10);
        Word uv;
        uv.letters = u.letters;
        uv.letters.insert(uv.letters.end(), v.letters.begin(), v.letters.end());

        const StateSet via_split = apply_word(a, apply_word(a, s, u), v);
        const StateSet direct = apply_word(a, s, uv);
        REQUIRE(direct == via_split);
        REQUIRE(direct.size() <= s.size());
    }
}

TEST_CASE("apply_word on a singleton equals iterated apply_letter") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        const Automaton a = oracles::random_automaton(rng, 2 + rng() % 8);
        const Word w = oracles::random_word(rng, 20);
        const State start = static_cast<State>(rng() % a.num_states);
        State by_letter = start;
        for (Letter x : w.letters) by_letter = apply_letter(a, by_letter, x);
        const StateSet image = apply_word(a, StateSet::single(a.num_states, start), w);
        REQUIRE(image == StateSet::single(a.num_states, by_letter));
    }
}

TEST_CASE("validate reports every violation") {
    CHECK(validate(gen_cerny(7)).ok());

    Automaton bad;
    bad.num_states = 2;
    bad.alphabet = {"a", "b"};
    bad.delta = {{2, 0}};  // target out of range and row for b missing
    const auto report = validate(bad);
    REQUIRE_FALSE(report.ok());
    bool saw_range = false;
    bool saw_missing = false;
    for (const auto& problem : report.problems) {
        if (problem.find("target out of range") != std::string::npos) saw_range = true;
        if (problem.find("incomplete transition table") != std::string::npos) saw_missing = true;
    }
    CHECK(saw_range);
    CHECK(saw_missing);

    Automaton dup;
    dup.num_states = 1;
    dup.alphabet = {"a", "a"};
    dup.delta = {{0}, {0}};
    CHECK_FALSE(validate(dup).ok());
}

TEST_CASE("state sets are canonical, hashable, and ordered by membership") {
    StateSet s = StateSet::of(70, {0, 64, 69});
    CHECK(s.size() == 3);
    CHECK(s.contains(64));
    CHECK_FALSE(s.contains(1));
    CHECK(s.front() == 0);
    CHECK(s.members() == std::vector<State>{0, 64, 69});
    CHECK_FALSE(s.singleton());
    CHECK(StateSet::single(70, 69).singleton());
    CHECK(StateSet(3).empty());
    CHECK_THROWS_AS(StateSet(3).insert(3), domain_error);

    const StateSet t = StateSet::of(70, {69, 64, 0});
    CHECK(s == t);
    CHECK(StateSetHash{}(s) == StateSetHash{}(t));
}

TEST_CASE("word parsing and rendering") {
    const Word w = word("abba");
    CHECK(w.letters == std::vector<Letter>{0, 1, 1, 0});
    CHECK(w.render({"a", "b"}) == "abba");
    CHECK(word("").empty());
    CHECK_THROWS_AS(word("abc"), domain_error);
}
