#pragma once

/*
 * Synchronization analysis: reset-word membership, synchronizability via
 * the pair criterion, exact reset thresholds by breadth-first search over
 * subset images, and shortest pair-merging words.
 */

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "syncwalk/automaton.hpp"
#include "syncwalk/errors.hpp"
#include "syncwalk/generators.hpp"

namespace syncwalk {

inline constexpr std::size_t kDefaultSubsetCap = 2'000'000;

struct ResetReport {
    std::size_t threshold = 0;  // length of the shortest reset word
    Word witness;               // lexicographically smallest such word
    std::size_t explored = 0;   // distinct power-automaton states discovered
};

inline bool is_sync_word(const Automaton& a, const Word& w) {
    return apply_word(a, StateSet::full(a.num_states), w).singleton();
}

/// Pair criterion: synchronizing iff every pair of distinct states can be
/// merged, i.e. every pair state of the pair automaton reaches the sink.
inline bool is_synchronizing(const Automaton& a) {
    if (a.num_states <= 1) return true;
    const Automaton p = pair_automaton(a);
    std::vector<std::vector<State>> reverse(p.num_states);
    for (Letter x = 0; x < p.alphabet_size(); ++x)
        for (State s = 0; s < p.num_states; ++s) reverse[p.step(s, x)].push_back(s);

    const State z = static_cast<State>(pair_sink_index(a.num_states));
    std::vector<char> reached(p.num_states, 0);
    std::deque<State> queue{z};
    reached[z] = 1;
    while (!queue.empty()) {
        const State cur = queue.front();
        queue.pop_front();
        for (State prev : reverse[cur]) {
            if (!reached[prev]) {
                reached[prev] = 1;
                queue.push_back(prev);
            }
        }
    }
    for (State s = 0; s < p.num_states; ++s)
        if (!reached[s]) return false;
    return true;
}

/// BFS from the full state set over subset images. Level order guarantees
/// the threshold is minimal; expanding letters in index order makes the
/// reconstructed witness the lexicographically smallest shortest one.
inline ResetReport reset_threshold(const Automaton& a, std::size_t cap = kDefaultSubsetCap) {
    if (a.num_states == 0) throw domain_error("empty automaton");

    struct Node {
        std::uint32_t parent;
        Letter letter;
    };
    std::vector<Node> nodes;
    std::unordered_map<StateSet, std::uint32_t, StateSetHash> seen;
    std::deque<std::pair<StateSet, std::uint32_t>> queue;

    auto make_report = [&](std::uint32_t node_id) {
        ResetReport report;
        std::vector<Letter> letters;
        for (std::uint32_t cur = node_id; nodes[cur].parent != cur; cur = nodes[cur].parent)
            letters.push_back(nodes[cur].letter);
        report.witness = Word(std::vector<Letter>(letters.rbegin(), letters.rend()));
        report.threshold = report.witness.size();
        report.explored = seen.size();
        return report;
    };

    const StateSet start = StateSet::full(a.num_states);
    nodes.push_back({0, 0});
    seen.emplace(start, 0);
    if (start.singleton()) return make_report(0);
    queue.emplace_back(start, 0);

    while (!queue.empty()) {
        auto [set, id] = std::move(queue.front());
        queue.pop_front();
        for (Letter x = 0; x < a.alphabet_size(); ++x) {
            StateSet image = apply_letter(a, set, x);
            if (image.singleton()) {
                nodes.push_back({id, x});
                seen.emplace(std::move(image), static_cast<std::uint32_t>(nodes.size() - 1));
                return make_report(static_cast<std::uint32_t>(nodes.size() - 1));
            }
            if (seen.contains(image)) continue;
            if (nodes.size() >= cap)
                throw resource_exceeded_error("subset cap of " + std::to_string(cap) +
                                              " hit during reset-threshold search");
            nodes.push_back({id, x});
            const auto node_id = static_cast<std::uint32_t>(nodes.size() - 1);
            seen.emplace(image, node_id);
            queue.emplace_back(std::move(image), node_id);
        }
    }
    throw not_synchronizing_error("automaton is not synchronizing (no singleton image reachable)");
}

/// Length of the shortest word merging s and t: BFS distance to the sink
/// in the pair automaton.
inline std::size_t pair_reset_length(const Automaton& a, State s, State t) {
    if (s >= a.num_states || t >= a.num_states) throw domain_error("pair member out of range");
    if (s == t) throw domain_error("degenerate pair {" + std::to_string(s) + "," + std::to_string(t) + "}");
    const Automaton p = pair_automaton(a);
    const State z = static_cast<State>(pair_sink_index(a.num_states));
    const State start = static_cast<State>(pair_index(a.num_states, s, t));

    std::vector<std::size_t> dist(p.num_states, static_cast<std::size_t>(-1));
    std::deque<State> queue{start};
    dist[start] = 0;
    while (!queue.empty()) {
        const State cur = queue.front();
        queue.pop_front();
        for (Letter x = 0; x < p.alphabet_size(); ++x) {
            const State next = p.step(cur, x);
            if (dist[next] != static_cast<std::size_t>(-1)) continue;
            dist[next] = dist[cur] + 1;
            if (next == z) return dist[next];
            queue.push_back(next);
        }
    }
    throw pair_not_synchronizable_error("pair {" + std::to_string(s) + "," + std::to_string(t) +
                                        "} cannot be merged by any word");
}

}  // namespace syncwalk
