#pragma once

/*
 * Serialization: the automaton JSON format, DOT export, CSV rows for
 * hitting-time vectors, and the estimate/reset-report JSON documents.
 *
 * Automaton JSON:
 *   {"num_states": N, "alphabet": ["a","b"],
 *    "delta": {"a": [t0,...,tN-1], "b": [...]},
 *    "meta": {"family": "...", "n": 7, "state_labels": [...]}}   // optional
 */

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "syncwalk/automaton.hpp"
#include "syncwalk/errors.hpp"
#include "syncwalk/markov.hpp"
#include "syncwalk/montecarlo.hpp"
#include "syncwalk/rational.hpp"
#include "syncwalk/sync.hpp"

namespace syncwalk {

using json = nlohmann::ordered_json;

/// Shortest decimal form that round-trips; locale-independent.
inline std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

/// Quotes a CSV field when needed (labels like "{0,1}" contain commas).
inline std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline json automaton_to_json(const Automaton& a) {
    json j;
    j["num_states"] = a.num_states;
    j["alphabet"] = a.alphabet;
    json delta = json::object();
    for (std::size_t x = 0; x < a.delta.size(); ++x) delta[a.alphabet[x]] = a.delta[x];
    j["delta"] = std::move(delta);
    if (a.meta) {
        json meta;
        meta["family"] = a.meta->family;
        meta["n"] = a.meta->n;
        if (!a.meta->state_labels.empty()) meta["state_labels"] = a.meta->state_labels;
        j["meta"] = std::move(meta);
    }
    return j;
}

inline Automaton automaton_from_json(const json& j) {
    Automaton a;
    try {
        a.num_states = j.at("num_states").get<std::size_t>();
        a.alphabet = j.at("alphabet").get<std::vector<std::string>>();
        const auto& delta = j.at("delta");
        a.delta.clear();
        for (const auto& symbol : a.alphabet) {
            if (!delta.contains(symbol))
                throw domain_error("incomplete transition table: no row for letter '" + symbol + "'");
            a.delta.push_back(delta.at(symbol).get<std::vector<State>>());
        }
        if (j.contains("meta")) {
            AutomatonMeta meta;
            const auto& jm = j.at("meta");
            meta.family = jm.value("family", std::string{});
            meta.n = jm.value("n", 0);
            if (jm.contains("state_labels"))
                meta.state_labels = jm.at("state_labels").get<std::vector<std::string>>();
            a.meta = std::move(meta);
        }
    } catch (const domain_error&) {
        throw;
    } catch (const std::exception& e) {
        throw domain_error(std::string("malformed automaton JSON: ") + e.what());
    }
    const auto report = validate(a);
    if (!report.ok()) {
        std::string msg = "invalid automaton:";
        for (const auto& problem : report.problems) msg += "\n  - " + problem;
        throw domain_error(msg);
    }
    return a;
}

inline Automaton read_automaton_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open automaton file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw domain_error("cannot parse '" + path + "': " + e.what());
    }
    return automaton_from_json(j);
}

inline void write_automaton_file(const std::string& path, const Automaton& a) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open '" + path + "' for writing");
    out << automaton_to_json(a).dump(2) << "\n";
}

/// DOT export: one node per state, one edge per (state, letter) with
/// labels of parallel edges merged ("a,b").
inline std::string to_dot(const Automaton& a) {
    std::ostringstream os;
    os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (State s = 0; s < a.num_states; ++s)
        os << "  n" << s << " [label=\"" << a.state_label(s) << "\"];\n";
    for (State s = 0; s < a.num_states; ++s) {
        std::vector<std::pair<State, std::string>> merged;
        for (Letter x = 0; x < a.alphabet_size(); ++x) {
            const State target = a.step(s, x);
            bool found = false;
            for (auto& [t, label] : merged) {
                if (t == target) {
                    label += "," + a.alphabet[x];
                    found = true;
                    break;
                }
            }
            if (!found) merged.emplace_back(target, a.alphabet[x]);
        }
        for (const auto& [target, label] : merged)
            os << "  n" << s << " -> n" << target << " [label=\"" << label << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

/// Per-state expected absorption times as CSV. The exact column uses the
/// canonical rational form ("14", "57/4").
inline std::string hitting_times_csv(const AbsorbingChain<Rational>& chain,
                                     const HittingTimeVector<Rational>& times) {
    std::ostringstream os;
    os << "state_label,mu_exact,mu_float\n";
    for (std::size_t i = 0; i < chain.size(); ++i)
        os << csv_field(chain.state_labels[i]) << "," << to_string(times.mu[i]) << ","
           << format_double(to_double(times.mu[i])) << "\n";
    return os.str();
}

inline json reset_report_to_json(const ResetReport& report, const Automaton& a) {
    json j;
    j["threshold"] = report.threshold;
    j["witness"] = report.witness.render(a.alphabet);
    j["explored"] = report.explored;
    return j;
}

/// Estimate with full provenance; `start` and `family`/`n` describe what
/// was simulated.
inline json estimate_to_json(const Estimate& est, const std::string& family, int n,
                             const std::string& start) {
    json j;
    j["mean"] = est.mean;
    j["stderr"] = est.stderr_value;
    j["stderr_defined"] = est.stderr_defined;
    j["trials"] = est.trials;
    j["truncated"] = est.truncated;
    j["seed"] = est.seed;
    j["p"] = est.p;
    j["start"] = start;
    j["family"] = family;
    j["n"] = n;
    j["rng"] = est.rng_name;
    return j;
}

}  // namespace syncwalk
