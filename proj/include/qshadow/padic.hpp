#ifndef QSHADOW_PADIC_HPP
#define QSHADOW_PADIC_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qshadow/laurent_series.hpp"
#include "qshadow/newforms.hpp"

namespace qshadow {

// p-adic valuation with v_p(0) = +infinity, rendered as an empty optional.
using Valuation = std::optional<long>;

Valuation vp(const Rational& x, long p);
std::string valuation_string(const Valuation& v);

// x mod p^j for a p-adic integer x (denominator coprime to p), normalized
// to [0, p^j).
Integer mod_prime_power(const Rational& x, long p, long j);

// Everything below works with a fixed odd prime p, coprime to the level,
// and a fixed even weight k. For inert p the Frobenius roots satisfy
// X^2 + p^{k-1} = 0, so only their common square -p^{k-1} is ever needed
// and all arithmetic stays rational.
struct PadicContext {
    long p;
    long k;
    long level;
    bool inert;
    Rational beta_square;  // -p^{k-1}

    static PadicContext for_form(const CMNewform& g, long p);
};

// r_m = C_F(p^{2m+1}) / (-p^{k-1})^m for m = 0..m_max. The sequence
// converges p-adically; its limit is the distinguished constant attached to
// the form. NotInert unless ctx.inert; PrecisionExceeded when F's window
// does not reach p^{2m_max+1}.
std::vector<Rational> ratio_sequence(const LaurentSeries& F, const PadicContext& ctx,
                                     long m_max);

// Smallest series prec that each verification needs.
long required_order_power(long p, long m_max);               // p^{2m_max+1} + 1
long required_order_limit(long p, long m_max, long n_max);   // n_max p^{2m_max+1} + 1

struct ValuationEntry {
    long m;
    long exponent;  // p^{2m+1}
    Rational coefficient;
    Valuation observed_vp;
    long expected_vp;
    bool pass;
};

struct ValuationReport {
    long p, k;
    std::vector<ValuationEntry> entries;
    bool all_pass() const;
    nlohmann::ordered_json to_json() const;
    std::string table() const;
};

// Checks v_p(C_F(p^{2m+1})) = (k-1) m for m = 0..m_max.
ValuationReport verify_valuation_law(const LaurentSeries& F, const PadicContext& ctx,
                                     long m_max);

// Checks v_p(r_m) = 0 (each ratio is a p-adic unit) for m = 0..m_max.
ValuationReport verify_unit_ratios(const LaurentSeries& F, const PadicContext& ctx,
                                   long m_max);

struct NonDivisibilityEntry {
    long p;
    PrimeClass cls;
    Valuation vp_cp;  // only meaningful when cls == Inert
    bool checked;     // inert primes are checked, the rest are skipped
    bool pass;
};

struct NonDivisibilityReport {
    long disc, p_max;
    std::vector<NonDivisibilityEntry> entries;
    bool all_pass() const;
    long checked_count() const;
    nlohmann::ordered_json to_json() const;
    std::string table() const;
};

// p^3 does not divide C_F(p), for every odd inert prime p <= p_max.
NonDivisibilityReport non_divisibility_check(const LaurentSeries& F, long disc, long p_max);

// d_gamma(n) = C_F(n) - gamma * C_g(n/p)  (second term only when p | n and
// n/p >= 1). Undefined at n = 0.
Rational d_gamma(const LaurentSeries& F, const CMNewform& g, const PadicContext& ctx,
                 const Rational& gamma, long n);

struct LimitRow {
    long m, n;
    Rational lhs;     // d_gamma(n p^{2m+1}) / d_gamma(p^{2m+1})
    Rational target;  // C_g(n)
    Valuation vp_difference;
};

struct LimitReport {
    long p;
    Rational gamma;
    long m_max, n_max;
    std::vector<LimitRow> rows;
    const LimitRow& row(long m, long n) const;
    std::vector<Valuation> vp_column(long n) const;  // indexed by m
    nlohmann::ordered_json to_json() const;
    std::string table() const;
};

// Normalized U(p^{2m+1})-slices of F - gamma*(g|V(p)) against the form's own
// coefficients: row (m, n) records v_p(lhs - C_g(n)), which grows without
// bound in m. ZeroNormalizer when d_gamma(p^{2m+1}) = 0 (gamma hit r_m).
LimitReport verify_limit(const LaurentSeries& F, const CMNewform& g, const PadicContext& ctx,
                         const Rational& gamma, long m_max, long n_max);

struct AlphaReport {
    long p, m_max;
    std::vector<Rational> ratios;
    // (j, r_{m_max} mod p^j) for j = 1..certified_depth
    std::vector<std::pair<long, Integer>> residues;
    // Largest j with r_m = r_{m_max} mod p^j for the last three m. Absent
    // when the last three ratios coincide exactly. Heuristic either way:
    // the convergence rate carries an ineffective constant, so agreement
    // across three terms is evidence, not proof.
    std::optional<long> certified_depth;
    bool unit() const;  // residue mod p nonzero
    nlohmann::ordered_json to_json() const;
    std::string table() const;
};

// Stabilized p-adic digits of the limit of the ratio sequence. Needs
// m_max >= 2 (InsufficientDepth otherwise).
AlphaReport alpha_digits(const LaurentSeries& F, const PadicContext& ctx, long m_max);

}  // namespace qshadow

#endif
