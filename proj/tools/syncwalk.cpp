// Command-line front end: generate the automata families, validate and
// export automaton files, compute reset thresholds, solve expected
// synchronization times exactly or in floating point, verify the closed
// forms against the solver, run seeded Monte Carlo estimates, and sweep
// the letter probability.
//
// Exit codes: 0 success, 2 domain error, 3 not synchronizing (or pair not
// mergeable), 4 resource cap exceeded, 5 verification mismatch,
// 6 truncation refusal.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <syncwalk/syncwalk.hpp>

namespace {

using namespace syncwalk;

struct ProbabilityArg {
    bool exact = false;
    Rational rational;  // set when exact
    double value = 0.0; // always set
    std::string text;
};

ProbabilityArg parse_probability(const std::string& text, bool force_exact) {
    ProbabilityArg arg;
    arg.text = text;
    if (text.find('/') != std::string::npos || force_exact) {
        arg.exact = true;
        arg.rational = rational_from_string(text);
        arg.value = to_double(arg.rational);
    } else {
        try {
            std::size_t used = 0;
            arg.value = std::stod(text, &used);
            if (used != text.size()) throw domain_error("trailing characters in probability");
        } catch (const domain_error&) {
            throw;
        } catch (const std::exception&) {
            throw domain_error("cannot parse probability '" + text + "'");
        }
    }
    if (!(arg.value > 0.0 && arg.value < 1.0))
        throw domain_error("probability must satisfy 0 < p < 1, got '" + text + "'");
    return arg;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct SourceOptions {
    std::string family;
    int n = 0;
    std::string in_path;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--family", family, "automaton family: cerny, un, pn");
        cmd->add_option("--n", n, "family size parameter");
        cmd->add_option("--in", in_path, "automaton JSON file");
    }

    Automaton build() const {
        if (!in_path.empty()) {
            if (!family.empty()) throw domain_error("give either --family/--n or --in, not both");
            return read_automaton_file(in_path);
        }
        if (family.empty()) throw domain_error("one of --family/--n or --in is required");
        if (family == "cerny") return gen_cerny(n);
        if (family == "un") return gen_un(n);
        if (family == "pn") return gen_pn(n);
        throw domain_error("unknown family '" + family + "' (expected cerny, un, or pn)");
    }
};

std::string family_of(const Automaton& a) {
    return a.meta && !a.meta->family.empty() ? a.meta->family : "file";
}

int family_n_of(const Automaton& a) {
    return a.meta && a.meta->n > 0 ? a.meta->n : static_cast<int>(a.num_states);
}

struct StartSpec {
    bool all = true;
    State s = 0;
    State t = 0;
    std::string text = "all";
};

StartSpec parse_start(const std::string& text) {
    StartSpec spec;
    spec.text = text;
    if (text == "all") return spec;
    const std::string prefix = "pair:";
    if (text.rfind(prefix, 0) == 0) {
        const auto rest = text.substr(prefix.size());
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw domain_error("start pair must look like pair:s,t");
        try {
            spec.all = false;
            spec.s = static_cast<State>(std::stoul(rest.substr(0, comma)));
            spec.t = static_cast<State>(std::stoul(rest.substr(comma + 1)));
        } catch (const std::exception&) {
            throw domain_error("cannot parse start '" + text + "'");
        }
        if (spec.s == spec.t)
            throw domain_error("degenerate pair {" + std::to_string(spec.s) + "," +
                               std::to_string(spec.t) + "}");
        return spec;
    }
    throw domain_error("start must be 'all' or 'pair:s,t', got '" + text + "'");
}

StateSet start_set(const Automaton& a, const StartSpec& spec) {
    if (spec.all) return StateSet::full(a.num_states);
    if (spec.s >= a.num_states || spec.t >= a.num_states)
        throw domain_error("start pair member out of range");
    return StateSet::of(a.num_states, {spec.s, spec.t});
}

std::size_t cap_from_env(std::size_t fallback) {
    if (const char* env = std::getenv("SYNCWALK_CAP")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw domain_error("cannot parse SYNCWALK_CAP value '" + std::string(env) + "'");
        }
    }
    return fallback;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw domain_error("cannot open '" + path + "' for writing");
    out << content;
}

// ---------------------------------------------------------------- gen

struct GenCmd {
    SourceOptions source;
    std::string out;

    int run() const {
        const Automaton a = source.build();
        write_text(out, automaton_to_json(a).dump(2) + "\n");
        return 0;
    }
};

// ------------------------------------------------------------ validate

struct ValidateCmd {
    std::string in_path;

    int run() const {
        std::ifstream in(in_path);
        if (!in) throw domain_error("cannot open automaton file '" + in_path + "'");
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw domain_error("cannot parse '" + in_path + "': " + e.what());
        }
        Automaton a;
        try {
            a.num_states = j.at("num_states").get<std::size_t>();
            a.alphabet = j.at("alphabet").get<std::vector<std::string>>();
            a.delta.clear();
            for (const auto& symbol : a.alphabet) {
                if (j.at("delta").contains(symbol))
                    a.delta.push_back(j.at("delta").at(symbol).get<std::vector<State>>());
            }
        } catch (const std::exception& e) {
            throw domain_error("malformed automaton JSON: " + std::string(e.what()));
        }
        const auto report = validate(a);
        if (report.ok()) {
            std::cout << "ok\n";
            return 0;
        }
        for (const auto& problem : report.problems) std::cerr << "error: " << problem << "\n";
        return 2;
    }
};

// ------------------------------------------------------ reset-threshold

struct ResetCmd {
    SourceOptions source;
    std::size_t cap = 0;

    int run() const {
        const Automaton a = source.build();
        const std::size_t limit = cap ? cap : cap_from_env(kDefaultSubsetCap);
        const ResetReport report = reset_threshold(a, limit);
        std::cout << reset_report_to_json(report, a).dump(2) << "\n";
        return 0;
    }
};

// ------------------------------------------------------------- expected

struct ExpectedCmd {
    SourceOptions source;
    std::string p_text;
    std::string start_text = "all";
    bool force_exact = false;
    std::string out;
    std::string mu_out;
    std::size_t cap = 0;

    template <typename Scalar>
    std::pair<AbsorbingChain<Scalar>, HittingTimeVector<Scalar>> solve(
        const Automaton& a, const LetterDistribution<Scalar>& d, const StartSpec& start,
        std::size_t limit) const {
        AbsorbingChain<Scalar> chain =
            start.all ? build_subset_chain(a, d, StateSet::full(a.num_states), limit)
                      : build_pair_chain(a, d, start.s, start.t, limit);
        auto times = solve_expected(chain);
        return {std::move(chain), std::move(times)};
    }

    int run() const {
        const Automaton a = source.build();
        const StartSpec start = parse_start(start_text);
        if (!start.all && (start.s >= a.num_states || start.t >= a.num_states))
            throw domain_error("start pair member out of range");
        const ProbabilityArg p = parse_probability(p_text, force_exact);
        const std::size_t limit = cap ? cap : cap_from_env(kDefaultSubsetCap);

        std::string exact_text;
        double float_value = 0.0;
        if (p.exact) {
            const auto [chain, times] = solve(a, make_distribution(p.rational), start, limit);
            const Rational value = times.mu[chain.start];
            exact_text = to_string(value);
            float_value = to_double(value);
            if (!mu_out.empty()) write_text(mu_out, hitting_times_csv(chain, times));
        } else {
            const auto [chain, times] = solve(a, make_distribution(p.value), start, limit);
            float_value = times.mu[chain.start];
            if (!mu_out.empty()) {
                std::ostringstream os;
                os << "state_label,mu_float\n";
                for (std::size_t i = 0; i < chain.size(); ++i)
                    os << csv_field(chain.state_labels[i]) << ","
                       << format_double(times.mu[i]) << "\n";
                write_text(mu_out, os.str());
            }
        }

        std::cout << "path: " << (p.exact ? "exact" : "float") << "\n";
        std::cout << "p: " << p.text << "\n";
        std::cout << "start: " << start.text << "\n";
        if (p.exact) std::cout << "expected: " << exact_text << "\n";
        std::cout << "expected_float: " << format_double(float_value) << "\n";

        if (!out.empty()) {
            std::ostringstream os;
            os << "family,n,p,start,path,expected_exact,expected_float\n";
            os << family_of(a) << "," << family_n_of(a) << "," << csv_field(p.text) << ","
               << csv_field(start.text) << "," << (p.exact ? "exact" : "float") << ","
               << exact_text << "," << format_double(float_value) << "\n";
            write_text(out, os.str());
        }
        return 0;
    }
};

// ---------------------------------------------------------- argmax-pair

struct ArgmaxCmd {
    SourceOptions source;
    std::string p_text;

    int run() const {
        const Automaton a = source.build();
        const ProbabilityArg p = parse_probability(p_text, false);
        if (p.exact) {
            const auto best = argmax_pair(a, make_distribution(p.rational));
            std::cout << "path: exact\npair: {" << best.s << "," << best.t << "}\n"
                      << "expected: " << to_string(best.value) << "\n"
                      << "expected_float: " << format_double(to_double(best.value)) << "\n";
        } else {
            const auto best = argmax_pair(a, make_distribution(p.value));
            std::cout << "path: float\npair: {" << best.s << "," << best.t << "}\n"
                      << "expected_float: " << format_double(best.value) << "\n";
        }
        return 0;
    }
};

// --------------------------------------------------------------- verify

struct VerifyCmd {
    std::string families_text = "cerny,un";
    int n_min = 0;
    int n_max = 0;
    int n_step = 1;
    std::string p_text = "1/3,1/2";
    std::string out;
    long long inject_offset = 0;  // negative-control hook for tests

    int run() const {
        if (n_step < 1) throw domain_error("--n-step must be >= 1");
        if (n_min < 1 || n_max < n_min) throw domain_error("invalid n range");
        const auto families = split_list(families_text);
        if (families.empty()) throw domain_error("no families given");
        std::vector<Rational> ps;
        for (const auto& text : split_list(p_text)) {
            const auto p = parse_probability(text, true);
            ps.push_back(p.rational);
        }
        if (ps.empty()) throw domain_error("no probabilities given");

        std::ostringstream csv;
        csv << "family,n,p,closed_form,solver_value,equal,abs_diff_float\n";
        std::string first_mismatch;
        for (const auto& family : families) {
            if (family != "cerny" && family != "un")
                throw domain_error("verify supports families cerny and un, got '" + family + "'");
            for (int n = n_min; n <= n_max; n += n_step) {
                for (const auto& p : ps) {
                    const auto d = make_distribution(p);
                    Rational solver_value;
                    Rational closed_form;
                    if (family == "un") {
                        solver_value = expected_sync_time(gen_un(n), d);
                        closed_form = un_formula(n, p);
                    } else {
                        const auto [s, t] = cerny_extremal_pair(n);
                        solver_value = expected_pair_time(gen_cerny(n), d, s, t);
                        closed_form = cerny_pair_formula(n, p);
                    }
                    closed_form += inject_offset;
                    const bool equal = solver_value == closed_form;
                    const double diff =
                        std::abs(to_double(solver_value) - to_double(closed_form));
                    csv << family << "," << n << "," << csv_field(to_string(p)) << ","
                        << to_string(closed_form) << "," << to_string(solver_value) << ","
                        << (equal ? "true" : "false") << "," << format_double(diff) << "\n";
                    if (!equal && first_mismatch.empty())
                        first_mismatch = "family=" + family + " n=" + std::to_string(n) +
                                         " p=" + to_string(p) + ": closed form " +
                                         to_string(closed_form) + " != solver " +
                                         to_string(solver_value);
                }
            }
        }
        std::cout << csv.str();
        if (!out.empty()) write_text(out, csv.str());
        if (!first_mismatch.empty()) {
            std::cerr << "verification mismatch: " << first_mismatch << "\n";
            return 5;
        }
        return 0;
    }
};

// ------------------------------------------------------------- simulate

struct SimulateCmd {
    SourceOptions source;
    std::string p_text;
    std::string start_text = "all";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = kDefaultMaxSteps;
    std::size_t cap = 0;

    int run() const {
        const Automaton a = source.build();
        const StartSpec start = parse_start(start_text);
        const StateSet set = start_set(a, start);
        const ProbabilityArg p = parse_probability(p_text, false);
        const std::size_t limit = cap ? cap : cap_from_env(kDefaultSubsetCap);

        // Exact pre-solve (probabilities of a double are dyadic rationals,
        // so this is exact) to refuse runs whose expectation would swamp
        // the step cap.
        const Rational exact_p(p.exact ? p.rational : Rational(p.value));
        const auto chain = build_subset_chain(a, make_distribution(exact_p), set, limit);
        const double hint = to_double(solve_expected(chain).mu[chain.start]);

        EstimateOptions options;
        options.max_steps = max_steps;
        options.expected_hint = hint;
        const Estimate est = estimate(a, p.value, set, trials, seed, options);
        std::cout << estimate_to_json(est, family_of(a), family_n_of(a), start.text).dump(2)
                  << "\n";
        return 0;
    }
};

// ---------------------------------------------------------------- sweep

struct SweepCmd {
    SourceOptions source;
    std::string start_text = "all";
    double p_min = 0.001;
    double p_max = 0.999;
    double p_step = 0.001;
    std::string out;
    std::size_t cap = 0;

    int run() const {
        const Automaton a = source.build();
        const StartSpec start = parse_start(start_text);
        if (!(p_step > 0)) throw domain_error("--p-step must be positive");
        if (!(p_min > 0.0 && p_max < 1.0 && p_min <= p_max))
            throw domain_error("sweep grid must lie strictly inside (0,1)");
        const std::size_t limit = cap ? cap : cap_from_env(kDefaultSubsetCap);

        std::ostringstream csv;
        csv << "row,p,expectation\n";
        double best_p = 0.0;
        double best_value = 0.0;
        bool have = false;
        for (std::size_t k = 0;; ++k) {
            const double p = p_min + static_cast<double>(k) * p_step;
            if (p > p_max + p_step * 0.5 || p >= 1.0) break;
            const auto d = make_distribution(p);
            const AbsorbingChain<double> chain =
                start.all ? build_subset_chain(a, d, StateSet::full(a.num_states), limit)
                          : build_pair_chain(a, d, start.s, start.t, limit);
            const double value = solve_expected(chain).mu[chain.start];
            csv << "grid," << format_double(p) << "," << format_double(value) << "\n";
            if (!have || value < best_value) {
                best_p = p;
                best_value = value;
                have = true;
            }
        }
        csv << "argmin," << format_double(best_p) << "," << format_double(best_value) << "\n";
        std::cout << csv.str();
        if (!out.empty()) write_text(out, csv.str());
        return 0;
    }
};

// ----------------------------------------------------------- export-dot

struct ExportDotCmd {
    SourceOptions source;
    std::string out;

    int run() const {
        write_text(out, to_dot(source.build()));
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis of DFA synchronization under random letter streams"};
    app.require_subcommand(1);

    GenCmd gen;
    ValidateCmd validate_cmd;
    ResetCmd reset;
    ExpectedCmd expected;
    ArgmaxCmd argmax;
    VerifyCmd verify;
    SimulateCmd simulate;
    SweepCmd sweep;
    ExportDotCmd export_dot;
    std::function<int()> action;

    auto* gen_cmd = app.add_subcommand("gen", "generate a family automaton as JSON");
    gen.source.add_to(gen_cmd);
    gen_cmd->add_option("--out", gen.out, "output path (default stdout)");
    gen_cmd->callback([&] { action = [&] { return gen.run(); }; });

    auto* validate_sub = app.add_subcommand("validate", "check an automaton file");
    validate_sub->add_option("--in", validate_cmd.in_path, "automaton JSON file")->required();
    validate_sub->callback([&] { action = [&] { return validate_cmd.run(); }; });

    auto* reset_cmd = app.add_subcommand("reset-threshold", "shortest reset word by subset BFS");
    reset.source.add_to(reset_cmd);
    reset_cmd->add_option("--cap", reset.cap, "subset cap (default SYNCWALK_CAP or 2000000)");
    reset_cmd->callback([&] { action = [&] { return reset.run(); }; });

    auto* expected_cmd =
        app.add_subcommand("expected", "expected synchronization time (exact or float)");
    expected.source.add_to(expected_cmd);
    expected_cmd->add_option("--p", expected.p_text, "probability of letter a (m/k or decimal)")
        ->required();
    expected_cmd->add_option("--start", expected.start_text, "all or pair:s,t");
    expected_cmd->add_flag("--exact", expected.force_exact,
                           "treat a decimal --p as an exact rational");
    expected_cmd->add_option("--out", expected.out, "write a one-row CSV report");
    expected_cmd->add_option("--mu-out", expected.mu_out, "write per-state hitting times CSV");
    expected_cmd->add_option("--cap", expected.cap, "subset cap");
    expected_cmd->callback([&] { action = [&] { return expected.run(); }; });

    auto* argmax_cmd =
        app.add_subcommand("argmax-pair", "pair with the largest expected merge time");
    argmax.source.add_to(argmax_cmd);
    argmax_cmd->add_option("--p", argmax.p_text, "probability of letter a")->required();
    argmax_cmd->callback([&] { action = [&] { return argmax.run(); }; });

    auto* verify_cmd =
        app.add_subcommand("verify", "closed forms vs exact solver over a family sweep");
    verify_cmd->add_option("--families", verify.families_text, "comma list: cerny,un");
    verify_cmd->add_option("--n-min", verify.n_min, "smallest n")->required();
    verify_cmd->add_option("--n-max", verify.n_max, "largest n")->required();
    verify_cmd->add_option("--n-step", verify.n_step, "n stride (default 1)");
    verify_cmd->add_option("--p", verify.p_text, "comma list of probabilities (exact)");
    verify_cmd->add_option("--out", verify.out, "also write the CSV here");
    verify_cmd->add_option("--inject-offset", verify.inject_offset, "")->group("");
    verify_cmd->callback([&] { action = [&] { return verify.run(); }; });

    auto* simulate_cmd = app.add_subcommand("simulate", "seeded Monte Carlo estimate");
    simulate.source.add_to(simulate_cmd);
    simulate_cmd->add_option("--p", simulate.p_text, "probability of letter a")->required();
    simulate_cmd->add_option("--start", simulate.start_text, "all or pair:s,t");
    simulate_cmd->add_option("--trials", simulate.trials, "number of trials (default 100000)");
    simulate_cmd->add_option("--seed", simulate.seed, "RNG seed (default 0)");
    simulate_cmd->add_option("--max-steps", simulate.max_steps, "per-trial step cap");
    simulate_cmd->add_option("--cap", simulate.cap, "subset cap for the exact pre-solve");
    simulate_cmd->callback([&] { action = [&] { return simulate.run(); }; });

    auto* sweep_cmd = app.add_subcommand("sweep", "expectation across a p grid (float path)");
    sweep.source.add_to(sweep_cmd);
    sweep_cmd->add_option("--start", sweep.start_text, "all or pair:s,t");
    sweep_cmd->add_option("--p-min", sweep.p_min, "grid start (default 0.001)");
    sweep_cmd->add_option("--p-max", sweep.p_max, "grid end (default 0.999)");
    sweep_cmd->add_option("--p-step", sweep.p_step, "grid step (default 0.001)");
    sweep_cmd->add_option("--out", sweep.out, "also write the CSV here");
    sweep_cmd->add_option("--cap", sweep.cap, "subset cap");
    sweep_cmd->callback([&] { action = [&] { return sweep.run(); }; });

    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz DOT export");
    export_dot.source.add_to(dot_cmd);
    dot_cmd->add_option("--out", export_dot.out, "output path (default stdout)");
    dot_cmd->callback([&] { action = [&] { return export_dot.run(); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const not_synchronizing_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pair_not_synchronizable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const not_absorbing_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const resource_exceeded_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const estimate_truncated_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
