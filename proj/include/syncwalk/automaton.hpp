#pragma once

/*
 * Core representation of complete deterministic finite automata over a
 * small ordered alphabet, plus words and bit-mask state sets with the
 * action of words on sets. States are 0-based; letter index 0 is "a" and
 * index 1 is "b" for every generated family.
 */

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncwalk/errors.hpp"

namespace syncwalk {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// Finite word over the alphabet, stored as letter indices. Empty = ε.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }
    bool operator==(const Word&) const = default;

    /// Parses one character per letter; requires single-character symbols.
    static Word parse(std::string_view text, const std::vector<std::string>& alphabet) {
        Word w;
        w.letters.reserve(text.size());
        for (char c : text) {
            Letter found = static_cast<Letter>(alphabet.size());
            for (std::size_t i = 0; i < alphabet.size(); ++i) {
                if (alphabet[i].size() == 1 && alphabet[i][0] == c) {
                    found = static_cast<Letter>(i);
                    break;
                }
            }
            if (found == alphabet.size())
                throw domain_error(std::string("unknown letter '") + c + "' in word");
            w.letters.push_back(found);
        }
        return w;
    }

    std::string render(const std::vector<std::string>& alphabet) const {
        std::string out;
        for (Letter x : letters) {
            if (x >= alphabet.size()) throw domain_error("letter index out of range in word");
            out += alphabet[x];
        }
        return out;
    }
};

/// Subset of [0, universe) as a canonical fixed-width bit mask.
/// Canonical form (no bits at or above the universe) makes equality and
/// hashing a plain word comparison.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t universe)
        : universe_(universe), bits_((universe + 63) / 64, 0) {}

    static StateSet full(std::size_t universe) {
        StateSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.bits_[i >> 6] |= std::uint64_t(1) << (i & 63);
        return s;
    }

    static StateSet single(std::size_t universe, State member) {
        StateSet s(universe);
        s.insert(member);
        return s;
    }

    static StateSet of(std::size_t universe, std::initializer_list<State> members) {
        StateSet s(universe);
        for (State m : members) s.insert(m);
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(State s) const {
        if (s >= universe_) return false;
        return (bits_[s >> 6] >> (s & 63)) & 1;
    }

    void insert(State s) {
        if (s >= universe_) throw domain_error("state " + std::to_string(s) + " outside universe");
        bits_[s >> 6] |= std::uint64_t(1) << (s & 63);
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (std::uint64_t w : bits_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool empty() const {
        for (std::uint64_t w : bits_)
            if (w) return false;
        return true;
    }

    bool singleton() const {
        std::size_t n = 0;
        for (std::uint64_t w : bits_) {
            n += static_cast<std::size_t>(std::popcount(w));
            if (n > 1) return false;
        }
        return n == 1;
    }

    /// Smallest member; the set must be non-empty.
    State front() const {
        for (std::size_t wi = 0; wi < bits_.size(); ++wi)
            if (bits_[wi]) return static_cast<State>(wi * 64 + std::countr_zero(bits_[wi]));
        throw domain_error("front() of empty state set");
    }

    std::vector<State> members() const {
        std::vector<State> out;
        out.reserve(size());
        for (std::size_t wi = 0; wi < bits_.size(); ++wi) {
            std::uint64_t w = bits_[wi];
            while (w) {
                out.push_back(static_cast<State>(wi * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    const std::vector<std::uint64_t>& words() const { return bits_; }

    bool operator==(const StateSet&) const = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct StateSetHash {
    std::size_t operator()(const StateSet& s) const {
        std::uint64_t h = 1469598103934665603ull ^ s.universe();
        for (std::uint64_t w : s.words()) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Provenance of a generated automaton, carried through serialization.
struct AutomatonMeta {
    std::string family;                     // "cerny", "un", "pair", "pn", ...
    int n = 0;                              // family parameter
    std::vector<std::string> state_labels;  // optional display names
};

/// Complete DFA: delta[letter][state] -> state, total by construction of
/// valid instances; validate() reports violations of the shape invariants.
struct Automaton {
    std::size_t num_states = 0;
    std::vector<std::string> alphabet{"a", "b"};
    std::vector<std::vector<State>> delta;
    std::optional<AutomatonMeta> meta;

    std::size_t alphabet_size() const { return alphabet.size(); }

    /// Unchecked transition; callers validate indices.
    State step(State s, Letter x) const { return delta[x][s]; }

    std::string state_label(State s) const {
        if (meta && meta->state_labels.size() == num_states) return meta->state_labels[s];
        return std::to_string(s);
    }

    std::optional<Letter> letter_index(std::string_view symbol) const {
        for (std::size_t i = 0; i < alphabet.size(); ++i)
            if (alphabet[i] == symbol) return static_cast<Letter>(i);
        return std::nullopt;
    }
};

inline State apply_letter(const Automaton& a, State s, Letter x) {
    if (s >= a.num_states) throw domain_error("state " + std::to_string(s) + " out of range");
    if (x >= a.alphabet_size()) throw domain_error("letter " + std::to_string(x) + " out of range");
    return a.delta[x][s];
}

inline StateSet apply_letter(const Automaton& a, const StateSet& s, Letter x) {
    if (s.universe() != a.num_states) throw domain_error("state set universe mismatch");
    if (x >= a.alphabet_size()) throw domain_error("letter " + std::to_string(x) + " out of range");
    StateSet out(a.num_states);
    const auto& row = a.delta[x];
    const auto& ws = s.words();
    for (std::size_t wi = 0; wi < ws.size(); ++wi) {
        std::uint64_t w = ws[wi];
        while (w) {
            const State member = static_cast<State>(wi * 64 + std::countr_zero(w));
            out.insert(row[member]);
            w &= w - 1;
        }
    }
    return out;
}

/// Image of S under w, left to right. |result| <= |S| always.
inline StateSet apply_word(const Automaton& a, const StateSet& s, const Word& w) {
    StateSet cur = s;
    if (cur.universe() != a.num_states) throw domain_error("state set universe mismatch");
    for (Letter x : w.letters) cur = apply_letter(a, cur, x);
    return cur;
}

inline State apply_word(const Automaton& a, State s, const Word& w) {
    State cur = s;
    if (cur >= a.num_states) throw domain_error("state out of range");
    for (Letter x : w.letters) cur = apply_letter(a, cur, x);
    return cur;
}

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

/// Checks every structural invariant and lists every violation found.
inline ValidationReport validate(const Automaton& a) {
    ValidationReport report;
    auto note = [&](std::string msg) { report.problems.push_back(std::move(msg)); };

    if (a.num_states == 0) note("num_states must be positive");
    if (a.alphabet.empty()) note("alphabet must be non-empty");
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
        if (a.alphabet[i].empty()) note("alphabet symbol " + std::to_string(i) + " is empty");
        for (std::size_t j = i + 1; j < a.alphabet.size(); ++j)
            if (a.alphabet[i] == a.alphabet[j])
                note("duplicate alphabet symbol '" + a.alphabet[i] + "'");
    }
    if (a.delta.size() != a.alphabet.size()) {
        note("incomplete transition table: " + std::to_string(a.delta.size()) + " letter rows for " +
             std::to_string(a.alphabet.size()) + " letters");
    }
    for (std::size_t x = 0; x < a.delta.size(); ++x) {
        const std::string sym = x < a.alphabet.size() ? a.alphabet[x] : std::to_string(x);
        if (a.delta[x].size() != a.num_states) {
            note("incomplete transition table: letter '" + sym + "' has " +
                 std::to_string(a.delta[x].size()) + " entries for " + std::to_string(a.num_states) +
                 " states");
            continue;
        }
        for (std::size_t s = 0; s < a.delta[x].size(); ++s)
            if (a.delta[x][s] >= a.num_states)
                note("target out of range: delta(" + std::to_string(s) + ", '" + sym + "') = " +
                     std::to_string(a.delta[x][s]));
    }
    if (a.meta && !a.meta->state_labels.empty() && a.meta->state_labels.size() != a.num_states)
        note("state label count does not match num_states");
    return report;
}

}  // namespace syncwalk
