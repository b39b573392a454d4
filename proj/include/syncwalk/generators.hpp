#pragma once

/*
 * Constructors for the automata families under study: the Cerny automata
 * C_n, the factor-language automata U_n, the pair automaton of an
 * arbitrary DFA, the cyclic-coordinate presentation P_n of the pair
 * automaton of C_n, and the isomorphism between the two.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "syncwalk/automaton.hpp"
#include "syncwalk/errors.hpp"

namespace syncwalk {

/// C_n: states 0..n-1; a maps 0 to 1 and fixes the rest; b is the cycle.
/// Reset threshold is (n-1)^2, the conjectured worst case over all DFAs.
inline Automaton gen_cerny(int n) {
    if (n < 2) throw domain_error("gen_cerny requires n >= 2, got " + std::to_string(n));
    Automaton a;
    a.num_states = static_cast<std::size_t>(n);
    a.delta.assign(2, std::vector<State>(a.num_states));
    for (State i = 0; i < a.num_states; ++i) {
        a.delta[0][i] = (i == 0) ? 1 : i;
        a.delta[1][i] = static_cast<State>((i + 1) % a.num_states);
    }
    a.meta = AutomatonMeta{"cerny", n, {}};
    return a;
}

/// Factor-matching DFA of the pattern a^j b^k: state = length of the
/// longest suffix of the input that is a prefix of the pattern, with an
/// absorbing state once the pattern has occurred. Built with the standard
/// failure-function construction, so it is the minimal DFA of
/// Sigma* a^j b^k Sigma* with j+k+1 states.
inline Automaton gen_un(int n) {
    if (n < 1) throw domain_error("gen_un requires n >= 1, got " + std::to_string(n));
    const int j = (n % 2 == 1) ? (n + 1) / 2 : n / 2;
    const int k = n - j;

    std::vector<Letter> pattern;
    pattern.insert(pattern.end(), static_cast<std::size_t>(j), 0);
    pattern.insert(pattern.end(), static_cast<std::size_t>(k), 1);
    const std::size_t m = pattern.size();  // == n

    Automaton a;
    a.num_states = m + 1;
    a.delta.assign(2, std::vector<State>(a.num_states));
    for (Letter x = 0; x < 2; ++x) {
        a.delta[x][0] = (pattern[0] == x) ? 1 : 0;
        a.delta[x][m] = static_cast<State>(m);
    }
    // delta[x][s] for s >= 1 reuses rows already filled for shorter prefixes.
    std::vector<std::size_t> prefix(m, 0);
    for (std::size_t i = 1; i < m; ++i) {
        std::size_t len = prefix[i - 1];
        while (len > 0 && pattern[i] != pattern[len]) len = prefix[len - 1];
        if (pattern[i] == pattern[len]) ++len;
        prefix[i] = len;
    }
    for (std::size_t s = 1; s < m; ++s) {
        for (Letter x = 0; x < 2; ++x) {
            if (pattern[s] == x)
                a.delta[x][s] = static_cast<State>(s + 1);
            else
                a.delta[x][s] = a.delta[x][prefix[s - 1]];
        }
    }
    a.meta = AutomatonMeta{"un", n, {}};
    return a;
}

/// Number of unordered pairs of distinct states.
inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Canonical index of the pair {s,t}: pairs ordered lexicographically with
/// s < t, giving a deterministic chain/state numbering everywhere.
inline std::size_t pair_index(std::size_t n, State s, State t) {
    if (s == t) throw domain_error("degenerate pair {" + std::to_string(s) + "," + std::to_string(t) + "}");
    if (s >= n || t >= n) throw domain_error("pair member out of range");
    if (s > t) std::swap(s, t);
    return static_cast<std::size_t>(s) * (2 * n - s - 1) / 2 + (t - s - 1);
}

/// Index of the merged-pair sink z (last state of the pair automaton).
inline std::size_t pair_sink_index(std::size_t n) { return pair_count(n); }

inline std::pair<State, State> pair_from_index(std::size_t n, std::size_t idx) {
    if (idx >= pair_count(n)) throw domain_error("pair index out of range");
    for (State s = 0; s < n; ++s) {
        const std::size_t row = n - 1 - s;
        if (idx < row) return {s, static_cast<State>(s + 1 + idx)};
        idx -= row;
    }
    throw domain_error("pair index out of range");
}

/// Pair automaton: states are all unordered pairs of distinct states plus
/// the sink z; a letter moves a pair member-wise and sends it to z exactly
/// when the images coincide. A word synchronizes the base automaton iff it
/// synchronizes the pair automaton.
inline Automaton pair_automaton(const Automaton& base) {
    const std::size_t n = base.num_states;
    const std::size_t z = pair_sink_index(n);
    Automaton p;
    p.num_states = z + 1;
    p.alphabet = base.alphabet;
    p.delta.assign(base.alphabet_size(), std::vector<State>(p.num_states));

    std::vector<std::string> labels(p.num_states);
    for (std::size_t idx = 0; idx < z; ++idx) {
        const auto [s, t] = pair_from_index(n, idx);
        labels[idx] = "{" + std::to_string(s) + "," + std::to_string(t) + "}";
        for (Letter x = 0; x < base.alphabet_size(); ++x) {
            const State si = base.step(s, x);
            const State ti = base.step(t, x);
            p.delta[x][idx] = (si == ti) ? static_cast<State>(z)
                                         : static_cast<State>(pair_index(n, si, ti));
        }
    }
    labels[z] = "z";
    for (Letter x = 0; x < base.alphabet_size(); ++x) p.delta[x][z] = static_cast<State>(z);
    p.meta = AutomatonMeta{"pair", static_cast<int>(n), std::move(labels)};
    return p;
}

/// Coordinates of a P_n state: i is the reference endpoint, ell the cyclic
/// distance between the pair's members (1 <= ell <= (n-1)/2).
struct PairCoord {
    State i = 0;
    State ell = 0;
    bool operator==(const PairCoord&) const = default;
};

/// Canonical index of (i, ell) in P_n; columns of equal ell are contiguous.
inline std::size_t pn_index(int n, PairCoord c) {
    const std::size_t un = static_cast<std::size_t>(n);
    if (c.i >= un || c.ell < 1 || c.ell > static_cast<State>((n - 1) / 2))
        throw domain_error("P_n coordinate out of range");
    return static_cast<std::size_t>(c.ell - 1) * un + c.i;
}

inline std::size_t pn_sink_index(int n) { return pair_count(static_cast<std::size_t>(n)); }

/// P_n, the ordered-coordinate presentation of the pair automaton of C_n
/// (odd n): b advances i around the cycle, a fixes (i, ell) except at the
/// four boundary cases where the distance coordinate changes or the pair
/// merges.
inline Automaton gen_pn(int n) {
    if (n < 3 || n % 2 == 0)
        throw domain_error("gen_pn requires odd n >= 3, got " + std::to_string(n));
    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t z = pn_sink_index(n);
    const State ell_max = static_cast<State>((n - 1) / 2);

    Automaton p;
    p.num_states = z + 1;
    p.delta.assign(2, std::vector<State>(p.num_states));
    std::vector<std::string> labels(p.num_states);

    auto at = [&](State i, State ell) { return pn_index(n, {i, ell}); };
    for (State ell = 1; ell <= ell_max; ++ell) {
        for (State i = 0; i < un; ++i) {
            const std::size_t idx = at(i, ell);
            labels[idx] = std::to_string(i) + "," + std::to_string(ell);
            p.delta[1][idx] = static_cast<State>(at((i + 1) % un, ell));
            p.delta[0][idx] = static_cast<State>(idx);  // default: a fixes (i, ell)
        }
    }
    p.delta[0][at(0, 1)] = static_cast<State>(z);
    for (State ell = 2; ell <= ell_max; ++ell)
        p.delta[0][at(0, ell)] = static_cast<State>(at(1, ell - 1));
    for (State ell = 1; ell + 1 <= ell_max; ++ell)
        p.delta[0][at(static_cast<State>(un - ell), ell)] =
            static_cast<State>(at(static_cast<State>(un - ell), ell + 1));
    p.delta[0][at(static_cast<State>((n + 1) / 2), ell_max)] = static_cast<State>(at(1, ell_max));

    labels[z] = "z";
    p.delta[0][z] = p.delta[1][z] = static_cast<State>(z);
    p.meta = AutomatonMeta{"pn", n, std::move(labels)};
    return p;
}

/// Maps a pair {s,t} of C_n (odd n) to its P_n coordinates: ell is the
/// cyclic distance min(m, n-m) where b^m takes s to t, and i is the
/// endpoint from which b^ell reaches the other.
inline PairCoord pair_iso_map(int n, State s, State t) {
    if (n < 3 || n % 2 == 0)
        throw domain_error("pair_iso_map requires odd n >= 3, got " + std::to_string(n));
    const std::size_t un = static_cast<std::size_t>(n);
    if (s >= un || t >= un) throw domain_error("pair member out of range");
    if (s == t) throw domain_error("degenerate pair {" + std::to_string(s) + "," + std::to_string(t) + "}");
    const State m = static_cast<State>((t + un - s) % un);
    const State ell = std::min<State>(m, static_cast<State>(un - m));
    const State i = (m <= un - m) ? s : t;
    return {i, ell};
}

/// The full state bijection from pair_automaton(gen_cerny(n)) to gen_pn(n)
/// induced by pair_iso_map, with z mapped to z.
inline std::vector<State> pair_to_pn_map(int n) {
    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<State> map(pair_count(un) + 1);
    for (std::size_t idx = 0; idx < pair_count(un); ++idx) {
        const auto [s, t] = pair_from_index(un, idx);
        map[idx] = static_cast<State>(pn_index(n, pair_iso_map(n, s, t)));
    }
    map[pair_sink_index(un)] = static_cast<State>(pn_sink_index(n));
    return map;
}

struct IsoCheckResult {
    bool ok = false;
    std::string diagnostic;
    explicit operator bool() const { return ok; }
};

/// True iff map is a bijection from A's states to B's states that
/// commutes with every letter action.
inline IsoCheckResult check_isomorphism(const Automaton& a, const Automaton& b,
                                        const std::vector<State>& map) {
    if (a.num_states != b.num_states)
        return {false, "state counts differ: " + std::to_string(a.num_states) + " vs " +
                           std::to_string(b.num_states)};
    if (a.alphabet != b.alphabet) return {false, "alphabets differ"};
    if (map.size() != a.num_states)
        return {false, "map covers " + std::to_string(map.size()) + " of " +
                           std::to_string(a.num_states) + " states"};
    std::vector<char> hit(b.num_states, 0);
    for (std::size_t s = 0; s < map.size(); ++s) {
        if (map[s] >= b.num_states)
            return {false, "map[" + std::to_string(s) + "] = " + std::to_string(map[s]) +
                               " out of range"};
        if (hit[map[s]])
            return {false, "map not injective at image " + std::to_string(map[s])};
        hit[map[s]] = 1;
    }
    for (State s = 0; s < a.num_states; ++s) {
        for (Letter x = 0; x < a.alphabet_size(); ++x) {
            if (map[a.step(s, x)] != b.step(map[s], x))
                return {false, "transition mismatch at state " + a.state_label(s) + " under '" +
                                   a.alphabet[x] + "'"};
        }
    }
    return {true, ""};
}

}  // namespace syncwalk
