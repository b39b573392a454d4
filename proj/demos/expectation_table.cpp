// Prints exact expected synchronization times next to their closed forms:
// the U_n family grows exponentially with n while the slowest C_n pair
// only grows cubically.

#include <iomanip>
#include <iostream>

#include <syncwalk/syncwalk.hpp>

using namespace syncwalk;

int main() {
    const Rational third(1, 3);
    const Rational half(1, 2);

    std::cout << "U_n, full state set:\n";
    std::cout << std::setw(4) << "n" << std::setw(22) << "E[p=1/2]" << std::setw(22)
              << "E[p=1/3]" << "  closed form agrees\n";
    for (int n = 1; n <= 12; ++n) {
        const Automaton u = gen_un(n);
        const Rational at_half = expected_sync_time(u, make_distribution(half));
        const Rational at_third = expected_sync_time(u, make_distribution(third));
        const bool agrees =
            at_half == un_formula(n, half) && at_third == un_formula(n, third);
        std::cout << std::setw(4) << n << std::setw(22) << to_string(at_half) << std::setw(22)
                  << to_string(at_third) << "  " << (agrees ? "yes" : "NO") << "\n";
    }

    std::cout << "\nC_n, slowest pair {1,.}:\n";
    std::cout << std::setw(4) << "n" << std::setw(10) << "pair" << std::setw(16) << "E[p=1/2]"
              << std::setw(16) << "E[p=1/3]" << "  closed form agrees\n";
    for (int n = 3; n <= 12; ++n) {
        const Automaton c = gen_cerny(n);
        const auto [s, t] = cerny_extremal_pair(n);
        const Rational at_half = expected_pair_time(c, make_distribution(half), s, t);
        const Rational at_third = expected_pair_time(c, make_distribution(third), s, t);
        const bool agrees = at_half == cerny_pair_formula(n, half) &&
                            at_third == cerny_pair_formula(n, third);
        std::cout << std::setw(4) << n << std::setw(10)
                  << ("{" + std::to_string(s) + "," + std::to_string(t) + "}") << std::setw(16)
                  << to_string(at_half) << std::setw(16) << to_string(at_third) << "  "
                  << (agrees ? "yes" : "NO") << "\n";
    }

    std::cout << "\nreset thresholds (deterministic worst case):\n";
    for (int n = 3; n <= 8; ++n)
        std::cout << "  C_" << n << ": " << reset_threshold(gen_cerny(n)).threshold << "   U_" << n
                  << ": " << reset_threshold(gen_un(n)).threshold << "\n";
    return 0;
}
