// Monte Carlo estimates side by side with the exact chain solution.

#include <iomanip>
#include <iostream>

#include <syncwalk/syncwalk.hpp>

using namespace syncwalk;

int main() {
    const std::uint64_t trials = 50000;
    const std::uint64_t seed = 2024;

    std::cout << std::fixed << std::setprecision(4);
    for (double p : {1.0 / 3.0, 0.5}) {
        std::cout << "p = " << p << "\n";
        for (int n : {3, 5, 7}) {
            const Automaton u = gen_un(n);
            const StateSet start = StateSet::full(u.num_states);
            const double exact =
                to_double(expected_sync_time(u, make_distribution(Rational(p))));
            const Estimate est = estimate(u, p, start, trials, seed);
            std::cout << "  U_" << n << ": exact " << std::setw(9) << exact << "  simulated "
                      << std::setw(9) << est.mean << " +- " << est.stderr_value << "\n";
        }
        for (int n : {3, 5}) {
            const Automaton c = gen_cerny(n);
            const auto [s, t] = cerny_extremal_pair(n);
            const StateSet start = StateSet::of(c.num_states, {s, t});
            const double exact =
                to_double(expected_pair_time(c, make_distribution(Rational(p)), s, t));
            const Estimate est = estimate(c, p, start, trials, seed);
            std::cout << "  C_" << n << " pair {" << s << "," << t << "}: exact " << std::setw(9)
                      << exact << "  simulated " << std::setw(9) << est.mean << " +- "
                      << est.stderr_value << "\n";
        }
    }
    return 0;
}
