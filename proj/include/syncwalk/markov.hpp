#pragma once

/*
 * Absorbing Markov chains induced by random letters acting on subsets,
 * pairs, or single states of a DFA, and their expected absorption times.
 * The expected number of steps mu_s from each transient state satisfies
 *
 *     mu_s = 1 + sum_t P(s,t) mu_t,     mu = 0 on absorbing states,
 *
 * solved here by fraction-preserving Gaussian elimination when the letter
 * probabilities are rational, or by partial-pivot elimination in double.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "syncwalk/automaton.hpp"
#include "syncwalk/errors.hpp"
#include "syncwalk/generators.hpp"
#include "syncwalk/rational.hpp"
#include "syncwalk/sync.hpp"

namespace syncwalk {

/// Bernoulli letter source: p for letter a, q = 1 - p for letter b.
template <typename Scalar>
struct LetterDistribution {
    Scalar p{};
    Scalar q{};
};

template <typename Scalar>
LetterDistribution<Scalar> make_distribution(const Scalar& p) {
    if (!(p > Scalar(0) && p < Scalar(1)))
        throw domain_error("letter probability must satisfy 0 < p < 1");
    return {p, Scalar(1) - p};
}

template <typename Scalar>
struct AbsorbingChain {
    std::vector<std::string> state_labels;
    std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> transitions;
    std::vector<bool> absorbing;
    std::uint32_t start = 0;

    std::size_t size() const { return transitions.size(); }

    std::vector<std::uint32_t> absorbing_indices() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 0; i < absorbing.size(); ++i)
            if (absorbing[i]) out.push_back(i);
        return out;
    }
};

template <typename Scalar>
struct HittingTimeVector {
    std::vector<Scalar> mu;  // 0 on absorbing states
};

namespace detail {

template <typename Scalar>
void append_letter_edges(std::vector<std::pair<std::uint32_t, Scalar>>& edges,
                         std::uint32_t target_a, std::uint32_t target_b,
                         const LetterDistribution<Scalar>& d) {
    if (target_a == target_b) {
        edges.emplace_back(target_a, d.p + d.q);  // merged edge carries p + q = 1
    } else {
        edges.emplace_back(target_a, d.p);
        edges.emplace_back(target_b, d.q);
    }
}

inline std::string subset_label(const StateSet& s) {
    std::string out = "{";
    bool first = true;
    for (State m : s.members()) {
        if (!first) out += ",";
        out += std::to_string(m);
        first = false;
    }
    return out + "}";
}

template <typename Scalar>
void check_chain(const AbsorbingChain<Scalar>& chain) {
    const std::size_t n = chain.size();
    if (n == 0) throw domain_error("empty chain");
    if (chain.start >= n) throw domain_error("chain start out of range");
    if (chain.absorbing.size() != n || chain.state_labels.size() != n)
        throw domain_error("chain field sizes disagree");
    for (std::size_t s = 0; s < n; ++s) {
        Scalar sum(0);
        for (const auto& [target, prob] : chain.transitions[s]) {
            if (target >= n) throw domain_error("chain transition target out of range");
            sum += prob;
        }
        if constexpr (std::is_floating_point_v<Scalar>) {
            if (std::abs(sum - Scalar(1)) > 1e-12)
                throw domain_error("outgoing probabilities of chain state " + std::to_string(s) +
                                   " do not sum to 1");
        } else {
            if (sum != Scalar(1))
                throw domain_error("outgoing probabilities of chain state " + std::to_string(s) +
                                   " do not sum to 1");
        }
        if (chain.absorbing[s] &&
            !(chain.transitions[s].size() == 1 && chain.transitions[s][0].first == s))
            throw domain_error("absorbing chain state " + std::to_string(s) +
                               " must self-loop with probability 1");
    }
}

/// In-place Gaussian elimination on the augmented matrix m (t rows,
/// t + 1 columns); returns the solution. Partial pivoting in floating
/// point, first nonzero pivot in exact arithmetic.
template <typename Scalar>
std::vector<Scalar> gauss_solve(std::vector<std::vector<Scalar>>& m) {
    const std::size_t t = m.size();
    for (std::size_t col = 0; col < t; ++col) {
        std::size_t pivot = col;
        if constexpr (std::is_floating_point_v<Scalar>) {
            for (std::size_t r = col + 1; r < t; ++r)
                if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
            if (std::abs(m[pivot][col]) < 1e-12)
                throw singular_system_error("pivot below 1e-12 at column " + std::to_string(col));
        } else {
            while (pivot < t && m[pivot][col] == 0) ++pivot;
            if (pivot == t) throw singular_system_error("zero pivot column " + std::to_string(col));
        }
        if (pivot != col) std::swap(m[pivot], m[col]);
        for (std::size_t r = col + 1; r < t; ++r) {
            if (m[r][col] == Scalar(0)) continue;
            const Scalar factor = m[r][col] / m[col][col];
            m[r][col] = Scalar(0);
            for (std::size_t c = col + 1; c <= t; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    std::vector<Scalar> x(t, Scalar(0));
    for (std::size_t r = t; r-- > 0;) {
        Scalar acc = m[r][t];
        for (std::size_t c = r + 1; c < t; ++c) acc -= m[r][c] * x[c];
        x[r] = acc / m[r][r];
    }
    return x;
}

}  // namespace detail

/// Chain of a single token walking on A's states until it hits one of
/// `absorbing_states`; only states reachable from `start` are included.
template <typename Scalar>
AbsorbingChain<Scalar> build_walk_chain(const Automaton& a, const LetterDistribution<Scalar>& d,
                                        State start, const std::vector<State>& absorbing_states,
                                        std::size_t cap = kDefaultSubsetCap) {
    if (a.alphabet_size() != 2)
        throw domain_error("letter distribution is binary; automaton must have a 2-letter alphabet");
    if (start >= a.num_states) throw domain_error("walk start out of range");
    std::vector<char> absorb_mark(a.num_states, 0);
    for (State s : absorbing_states) {
        if (s >= a.num_states) throw domain_error("absorbing state out of range");
        absorb_mark[s] = 1;
    }

    std::unordered_map<State, std::uint32_t> index;
    std::vector<State> order;
    std::deque<State> queue{start};
    index.emplace(start, 0);
    order.push_back(start);
    while (!queue.empty()) {
        const State cur = queue.front();
        queue.pop_front();
        if (absorb_mark[cur]) continue;
        for (Letter x = 0; x < 2; ++x) {
            const State next = a.step(cur, x);
            if (index.contains(next)) continue;
            if (order.size() >= cap)
                throw resource_exceeded_error("state cap of " + std::to_string(cap) +
                                              " hit during walk-chain construction");
            index.emplace(next, static_cast<std::uint32_t>(order.size()));
            order.push_back(next);
            queue.push_back(next);
        }
    }

    AbsorbingChain<Scalar> chain;
    chain.start = 0;
    chain.state_labels.reserve(order.size());
    chain.transitions.resize(order.size());
    chain.absorbing.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const State s = order[i];
        chain.state_labels.push_back(a.state_label(s));
        chain.absorbing[i] = absorb_mark[s] != 0;
        if (chain.absorbing[i])
            chain.transitions[i].emplace_back(static_cast<std::uint32_t>(i), Scalar(1));
        else
            detail::append_letter_edges(chain.transitions[i], index.at(a.step(s, 0)),
                                        index.at(a.step(s, 1)), d);
    }
    return chain;
}

/// Chain of the random subset process S := delta(S, x) started at `start`;
/// the absorbing states are the singleton subsets.
template <typename Scalar>
AbsorbingChain<Scalar> build_subset_chain(const Automaton& a, const LetterDistribution<Scalar>& d,
                                          const StateSet& start,
                                          std::size_t cap = kDefaultSubsetCap) {
    if (a.alphabet_size() != 2)
        throw domain_error("letter distribution is binary; automaton must have a 2-letter alphabet");
    if (start.universe() != a.num_states) throw domain_error("state set universe mismatch");
    if (start.empty()) throw domain_error("subset process must start from a non-empty set");

    std::unordered_map<StateSet, std::uint32_t, StateSetHash> index;
    std::vector<StateSet> order;
    std::deque<std::uint32_t> queue;
    index.emplace(start, 0);
    order.push_back(start);
    if (!start.singleton()) queue.push_back(0);
    while (!queue.empty()) {
        const StateSet cur = order[queue.front()];
        queue.pop_front();
        for (Letter x = 0; x < 2; ++x) {
            StateSet image = apply_letter(a, cur, x);
            if (index.contains(image)) continue;
            if (order.size() >= cap)
                throw resource_exceeded_error("subset cap of " + std::to_string(cap) +
                                              " hit during chain construction");
            const auto id = static_cast<std::uint32_t>(order.size());
            index.emplace(image, id);
            order.push_back(image);
            if (!image.singleton()) queue.push_back(id);
        }
    }

    AbsorbingChain<Scalar> chain;
    chain.start = 0;
    chain.transitions.resize(order.size());
    chain.absorbing.resize(order.size());
    chain.state_labels.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateSet& s = order[i];
        chain.state_labels.push_back(detail::subset_label(s));
        chain.absorbing[i] = s.singleton();
        if (chain.absorbing[i])
            chain.transitions[i].emplace_back(static_cast<std::uint32_t>(i), Scalar(1));
        else
            detail::append_letter_edges(chain.transitions[i], index.at(apply_letter(a, s, 0)),
                                        index.at(apply_letter(a, s, 1)), d);
    }
    return chain;
}

/// Chain over the pair-automaton states reachable from {s,t}, absorbing at
/// the merge sink z.
template <typename Scalar>
AbsorbingChain<Scalar> build_pair_chain(const Automaton& a, const LetterDistribution<Scalar>& d,
                                        State s, State t, std::size_t cap = kDefaultSubsetCap) {
    if (s >= a.num_states || t >= a.num_states) throw domain_error("pair member out of range");
    if (s == t) throw domain_error("degenerate pair {" + std::to_string(s) + "," + std::to_string(t) + "}");
    const Automaton p = pair_automaton(a);
    const State start = static_cast<State>(pair_index(a.num_states, s, t));
    const State z = static_cast<State>(pair_sink_index(a.num_states));
    return build_walk_chain(p, d, start, {z}, cap);
}

/// Chain over the entire pair automaton (every pair plus z), so one solve
/// yields the expected merge time of every pair at once. Chain state i is
/// the pair with canonical index i; the sink has the last index.
template <typename Scalar>
AbsorbingChain<Scalar> build_full_pair_chain(const Automaton& a,
                                             const LetterDistribution<Scalar>& d) {
    if (a.alphabet_size() != 2)
        throw domain_error("letter distribution is binary; automaton must have a 2-letter alphabet");
    if (a.num_states < 2) throw domain_error("pair chain needs at least two states");
    const Automaton p = pair_automaton(a);
    const std::size_t z = pair_sink_index(a.num_states);

    AbsorbingChain<Scalar> chain;
    chain.start = 0;
    chain.state_labels.resize(p.num_states);
    chain.transitions.resize(p.num_states);
    chain.absorbing.assign(p.num_states, false);
    chain.absorbing[z] = true;
    for (std::size_t i = 0; i < p.num_states; ++i) {
        chain.state_labels[i] = p.state_label(static_cast<State>(i));
        if (chain.absorbing[i])
            chain.transitions[i].emplace_back(static_cast<std::uint32_t>(i), Scalar(1));
        else
            detail::append_letter_edges(chain.transitions[i], p.step(static_cast<State>(i), 0),
                                        p.step(static_cast<State>(i), 1), d);
    }
    return chain;
}

/// Solves mu_s = 1 + sum_t P(s,t) mu_t on the transient states. Transient
/// states that cannot reach an absorbing state make the expectation
/// infinite and raise not_absorbing_error. Elimination visits variables in
/// order of BFS distance from the absorbing set, which keeps the layered
/// chains produced here sparse; a residual verification runs at the end.
template <typename Scalar>
HittingTimeVector<Scalar> solve_expected(const AbsorbingChain<Scalar>& chain) {
    detail::check_chain(chain);
    const std::size_t n = chain.size();

    std::vector<std::vector<std::uint32_t>> reverse(n);
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& [target, prob] : chain.transitions[s])
            reverse[target].push_back(static_cast<std::uint32_t>(s));

    constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);
    std::vector<std::size_t> dist(n, kUnreached);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (chain.absorbing[s]) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    if (queue.empty()) throw not_absorbing_error("chain has no absorbing state");
    while (!queue.empty()) {
        const std::uint32_t cur = queue.front();
        queue.pop_front();
        for (std::uint32_t prev : reverse[cur]) {
            if (dist[prev] != kUnreached) continue;
            dist[prev] = dist[cur] + 1;
            queue.push_back(prev);
        }
    }

    std::vector<std::uint32_t> transient;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (chain.absorbing[s]) continue;
        if (dist[s] == kUnreached)
            throw not_absorbing_error("state '" + chain.state_labels[s] +
                                      "' cannot reach an absorbing state; expectation is infinite");
        transient.push_back(s);
    }
    std::stable_sort(transient.begin(), transient.end(),
                     [&](std::uint32_t lhs, std::uint32_t rhs) { return dist[lhs] < dist[rhs]; });

    const std::size_t t = transient.size();
    std::vector<std::uint32_t> column(n, 0);
    for (std::size_t c = 0; c < t; ++c) column[transient[c]] = static_cast<std::uint32_t>(c);

    // Dense (I - Q) x = 1 restricted to the transient block.
    auto assemble = [&](const std::vector<Scalar>& rhs) {
        std::vector<std::vector<Scalar>> m(t, std::vector<Scalar>(t + 1, Scalar(0)));
        for (std::size_t r = 0; r < t; ++r) {
            const std::uint32_t s = transient[r];
            m[r][column[s]] += Scalar(1);
            for (const auto& [target, prob] : chain.transitions[s])
                if (!chain.absorbing[target]) m[r][column[target]] -= prob;
            m[r][t] = rhs[r];
        }
        return m;
    };

    auto m = assemble(std::vector<Scalar>(t, Scalar(1)));
    std::vector<Scalar> x = detail::gauss_solve(m);

    HittingTimeVector<Scalar> result;
    result.mu.assign(n, Scalar(0));
    for (std::size_t r = 0; r < t; ++r) result.mu[transient[r]] = x[r];

    if constexpr (std::is_floating_point_v<Scalar>) {
        // One step of iterative refinement with long double residuals.
        std::vector<Scalar> residual(t, Scalar(0));
        bool any = false;
        for (std::size_t r = 0; r < t; ++r) {
            const std::uint32_t s = transient[r];
            long double acc = static_cast<long double>(result.mu[s]) - 1.0L;
            for (const auto& [target, prob] : chain.transitions[s])
                acc -= static_cast<long double>(prob) * static_cast<long double>(result.mu[target]);
            residual[r] = static_cast<Scalar>(acc);
            any = any || residual[r] != Scalar(0);
        }
        if (any) {
            auto m2 = assemble(residual);
            const std::vector<Scalar> dx = detail::gauss_solve(m2);
            for (std::size_t r = 0; r < t; ++r) result.mu[transient[r]] -= dx[r];
        }
    }

    // Verify the defining equations on the final values.
    for (std::size_t r = 0; r < t; ++r) {
        const std::uint32_t s = transient[r];
        Scalar res = result.mu[s] - Scalar(1);
        for (const auto& [target, prob] : chain.transitions[s]) res -= prob * result.mu[target];
        if constexpr (std::is_floating_point_v<Scalar>) {
            const Scalar scale = std::max(Scalar(1), std::abs(result.mu[s]));
            if (std::abs(res) > 1e-10 * scale)
                throw singular_system_error("residual check failed at state '" +
                                            chain.state_labels[s] + "'");
        } else {
            if (res != Scalar(0))
                throw singular_system_error("exact residual nonzero at state '" +
                                            chain.state_labels[s] + "'");
        }
    }
    return result;
}

/// Expected number of random letters until the subset process started at
/// the full state set reaches a singleton.
template <typename Scalar>
Scalar expected_sync_time(const Automaton& a, const LetterDistribution<Scalar>& d,
                          std::size_t cap = kDefaultSubsetCap) {
    const auto chain = build_subset_chain(a, d, StateSet::full(a.num_states), cap);
    return solve_expected(chain).mu[chain.start];
}

/// Expected number of random letters until the pair {s,t} merges.
template <typename Scalar>
Scalar expected_pair_time(const Automaton& a, const LetterDistribution<Scalar>& d, State s, State t,
                          std::size_t cap = kDefaultSubsetCap) {
    const auto chain = build_pair_chain(a, d, s, t, cap);
    return solve_expected(chain).mu[chain.start];
}

template <typename Scalar>
struct PairExpectation {
    State s = 0;
    State t = 0;
    Scalar value{};
};

/// Solves the full pair chain once and returns the pair with the largest
/// expected merge time; ties go to the lexicographically smallest pair.
template <typename Scalar>
PairExpectation<Scalar> argmax_pair(const Automaton& a, const LetterDistribution<Scalar>& d) {
    const auto chain = build_full_pair_chain(a, d);
    const auto times = solve_expected(chain);
    PairExpectation<Scalar> best;
    bool have = false;
    for (std::size_t idx = 0; idx < pair_count(a.num_states); ++idx) {
        if (!have || times.mu[idx] > best.value) {
            const auto [s, t] = pair_from_index(a.num_states, idx);
            best = {s, t, times.mu[idx]};
            have = true;
        }
    }
    if (!have) throw domain_error("automaton has no pairs");
    return best;
}

}  // namespace syncwalk
