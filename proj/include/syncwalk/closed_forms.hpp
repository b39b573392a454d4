#pragma once

/*
 * Closed-form expected synchronization times for the generated families,
 * the oracle counterpart of the chain solver:
 *
 *   U_n, odd n :  1 / (p^((n+1)/2) q^((n-1)/2))
 *   U_n, even n:  1 / (pq)^(n/2)
 *   C_n, odd n :  (n-1)((n-1)^2 + q(3n-5) + 4q^2) / (8pq^2)   for the
 *                 pair {1, (n+1)/2}
 *   C_n, even n:  n((n-1)(n-2) + q(3n-6) + 4q^2) / (8pq^2)    for the
 *                 pair {1, (n+2)/2}
 *
 * plus the evaluation of those expressions at p = 1/3 as cubic
 * polynomials in n, and a grid search for the minimizing p.
 */

#include <string>
#include <utility>
#include <vector>

#include "syncwalk/automaton.hpp"
#include "syncwalk/errors.hpp"
#include "syncwalk/rational.hpp"

namespace syncwalk {

enum class FormulaId { thm1, thm2, thm3, thm4, opt_poly_odd, opt_poly_even, leading_term };

inline std::string formula_name(FormulaId id) {
    switch (id) {
        case FormulaId::thm1: return "thm1";
        case FormulaId::thm2: return "thm2";
        case FormulaId::thm3: return "thm3";
        case FormulaId::thm4: return "thm4";
        case FormulaId::opt_poly_odd: return "opt_poly_odd";
        case FormulaId::opt_poly_even: return "opt_poly_even";
        case FormulaId::leading_term: return "leading_term";
    }
    return "?";
}

template <typename Scalar>
struct FormulaResult {
    FormulaId id{};
    int n = 0;
    Scalar p{};
    Scalar value{};
};

namespace detail {

template <typename Scalar>
void check_prob(const Scalar& p) {
    if (!(p > Scalar(0) && p < Scalar(1)))
        throw domain_error("probability must satisfy 0 < p < 1");
}

}  // namespace detail

/// Expected sync time of U_n from the full state set, odd n.
template <typename Scalar>
Scalar thm1_un_odd(int n, const Scalar& p) {
    if (n < 1 || n % 2 == 0) throw domain_error("thm1_un_odd requires odd n >= 1");
    detail::check_prob(p);
    const Scalar q = Scalar(1) - p;
    return Scalar(1) / (pow_int(p, (n + 1) / 2) * pow_int(q, (n - 1) / 2));
}

/// Expected sync time of U_n from the full state set, even n.
template <typename Scalar>
Scalar thm2_un_even(int n, const Scalar& p) {
    if (n < 2 || n % 2 == 1) throw domain_error("thm2_un_even requires even n >= 2");
    detail::check_prob(p);
    const Scalar q = Scalar(1) - p;
    const Scalar pq = p * q;
    return Scalar(1) / pow_int(pq, n / 2);
}

/// Expected merge time of the pair {1, (n+1)/2} of C_n, odd n.
template <typename Scalar>
Scalar thm3_cerny_odd(int n, const Scalar& p) {
    if (n < 3 || n % 2 == 0) throw domain_error("thm3_cerny_odd requires odd n >= 3");
    detail::check_prob(p);
    const Scalar q = Scalar(1) - p;
    const Scalar nm1 = Scalar(n - 1);
    return nm1 * (nm1 * nm1 + q * Scalar(3 * n - 5) + Scalar(4) * q * q) /
           (Scalar(8) * p * q * q);
}

/// Expected merge time of the pair {1, (n+2)/2} of C_n, even n.
template <typename Scalar>
Scalar thm4_cerny_even(int n, const Scalar& p) {
    if (n < 2 || n % 2 == 1) throw domain_error("thm4_cerny_even requires even n >= 2");
    detail::check_prob(p);
    const Scalar q = Scalar(1) - p;
    return Scalar(n) * (Scalar(n - 1) * Scalar(n - 2) + q * Scalar(3 * n - 6) + Scalar(4) * q * q) /
           (Scalar(8) * p * q * q);
}

/// The slowest pair of C_n under random letters (parity-dependent).
/// For n = 2 the nominal second member (n+2)/2 wraps to state 0.
inline std::pair<State, State> cerny_extremal_pair(int n) {
    if (n < 2) throw domain_error("cerny_extremal_pair requires n >= 2");
    State other = (n % 2 == 1) ? static_cast<State>((n + 1) / 2)
                               : static_cast<State>(((n + 2) / 2) % n);
    State s = 1;
    if (other < s) std::swap(s, other);
    return {s, other};
}

/// Dispatch of the parity-matched C_n pair formula.
template <typename Scalar>
Scalar cerny_pair_formula(int n, const Scalar& p) {
    return (n % 2 == 1) ? thm3_cerny_odd(n, p) : thm4_cerny_even(n, p);
}

/// Dispatch of the parity-matched U_n formula.
template <typename Scalar>
Scalar un_formula(int n, const Scalar& p) {
    return (n % 2 == 1) ? thm1_un_odd(n, p) : thm2_un_even(n, p);
}

/// Leading term n^3/(8pq^2) of the C_n pair expectation; its minimum over
/// p sits at p = 1/3.
template <typename Scalar>
Scalar leading_term(int n, const Scalar& p) {
    detail::check_prob(p);
    const Scalar q = Scalar(1) - p;
    return Scalar(n) * Scalar(n) * Scalar(n) / (Scalar(8) * p * q * q);
}

/// C_n pair expectation at p = 1/3 as a polynomial in n, odd parity:
/// (27n^3 - 27n^2 - 15n + 15) / 32.
inline Rational opt_poly_odd(int n) {
    const BigInt bn(n);
    return Rational(27 * bn * bn * bn - 27 * bn * bn - 15 * bn + 15, 32);
}

/// Even parity: (27n^3 - 27n^2 - 6n) / 32.
inline Rational opt_poly_even(int n) {
    const BigInt bn(n);
    return Rational(27 * bn * bn * bn - 27 * bn * bn - 6 * bn, 32);
}

template <typename Scalar>
FormulaResult<Scalar> evaluate_formula(FormulaId id, int n, const Scalar& p) {
    switch (id) {
        case FormulaId::thm1: return {id, n, p, thm1_un_odd(n, p)};
        case FormulaId::thm2: return {id, n, p, thm2_un_even(n, p)};
        case FormulaId::thm3: return {id, n, p, thm3_cerny_odd(n, p)};
        case FormulaId::thm4: return {id, n, p, thm4_cerny_even(n, p)};
        case FormulaId::leading_term: return {id, n, p, leading_term(n, p)};
        default: throw domain_error("formula " + formula_name(id) + " takes no probability");
    }
}

struct OptimalPReport {
    Rational p_star;          // grid argmin of the parity-matched pair formula
    Rational value_at_p_star;
    Rational poly_at_third;   // the p = 1/3 polynomial value
};

/// Scans p over the grid {step, 2*step, ...} inside (0,1) and returns the
/// exact argmin of the C_n pair formula together with the p = 1/3
/// polynomial. Ties go to the smaller p. The true minimizer of the full
/// expression has no closed form here, so a grid scan is used.
inline OptimalPReport optimal_p_analysis(int n, const Rational& step = Rational(1, 1000)) {
    if (n < 3) throw domain_error("optimal_p_analysis requires n >= 3");
    if (!(step > 0 && step < Rational(1, 2))) throw domain_error("grid step must be in (0, 1/2)");

    OptimalPReport report;
    bool have = false;
    for (Rational p = step; p < 1; p += step) {
        const Rational value = cerny_pair_formula(n, p);
        if (!have || value < report.value_at_p_star) {
            report.p_star = p;
            report.value_at_p_star = value;
            have = true;
        }
    }
    report.poly_at_third = (n % 2 == 1) ? opt_poly_odd(n) : opt_poly_even(n);
    return report;
}

}  // namespace syncwalk
