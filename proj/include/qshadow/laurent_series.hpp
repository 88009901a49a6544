#ifndef QSHADOW_LAURENT_SERIES_HPP
#define QSHADOW_LAURENT_SERIES_HPP

#include <map>
#include <initializer_list>
#include <utility>

#include "qshadow/errors.hpp"
#include "qshadow/rational.hpp"

namespace qshadow {

// Truncated formal Laurent series in q with exact rational coefficients.
//
// A value represents a series that is
//   * exactly zero at every exponent n <  min_exp,
//   * exactly the stored coefficient at min_exp <= n < prec (absent key = 0),
//   * unknown at n >= prec.
//
// [min_exp, prec) is the "certain window". Every operation computes the
// largest window on which its result is certain from the windows of its
// inputs, so truncation bookkeeping never has to be done by callers; reading
// outside the window throws PrecisionExceeded. Values are immutable after
// construction and all operations are pure, so instances may be shared
// freely across threads.
class LaurentSeries {
public:
    using CoeffMap = std::map<long, Rational>;

    // Zero series on the given window.
    LaurentSeries(long min_exp, long prec);

    // General constructor; keys must lie in [min_exp, prec) and min_exp <
    // prec, else std::invalid_argument. Zero coefficients are stripped.
    LaurentSeries(long min_exp, long prec, CoeffMap coeffs);

    // c on window [0, prec).
    static LaurentSeries constant(const Rational& c, long prec);

    // c*q^exp on window [exp, prec).
    static LaurentSeries monomial(const Rational& c, long exp, long prec);

    // Convenience: series from (exponent, coefficient) terms with window
    // [lowest exponent, prec).
    static LaurentSeries from_terms(std::initializer_list<std::pair<long, Rational>> terms,
                                    long prec);

    long min_exp() const { return min_exp_; }
    long prec() const { return prec_; }
    const CoeffMap& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_integral() const;  // every stored denominator is 1

    // Exact coefficient at q^n; PrecisionExceeded outside [min_exp, prec).
    Rational coeff(long n) const;

    // Same series viewed on the window [lo, hi). hi may not exceed prec;
    // lo may sit anywhere below the lowest stored exponent (everything
    // below min_exp is exactly zero, so extending downward is sound, and
    // raising lo past a nonzero term would change the value and throws).
    LaurentSeries restricted(long lo, long hi) const;

    LaurentSeries shifted(long delta) const;        // multiply by q^delta
    LaurentSeries scaled(const Rational& c) const;  // multiply by constant

    // Multiplicative inverse on the widest certain window. Requires a
    // nonzero coefficient at min_exp, else InvalidLeadingTerm.
    LaurentSeries inverse() const;

    // True when both series agree coefficientwise on the (possibly empty)
    // intersection of their windows.
    bool agrees_with(const LaurentSeries& other) const;

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    // a * b.inverse(), computed by direct recursion (cheaper when b is sparse).
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);

    // Identical window and identical coefficient map.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

    // Coefficient with no window check: 0 when absent. Only meaningful for
    // n < prec; internal helpers and tests use it where the window has
    // already been established.
    const Rational& at(long n) const;

private:
    long min_exp_;
    long prec_;
    CoeffMap coeffs_;

    void strip_zeros();
    void validate() const;
};

// U(p): C(n) <- C(pn). Defined for any p >= 1 (p = 1 is the identity); the
// result window is the largest window implied by a's.
LaurentSeries u_op(const LaurentSeries& a, long p);

// V(p): C(pn) <- C(n), all exponents not divisible by p vanish.
LaurentSeries v_op(const LaurentSeries& a, long p);

// D^{k-1}: C(n) <- n^{k-1} C(n) for weight k >= 2. Kills the constant term.
LaurentSeries d_op(const LaurentSeries& a, long k);

// Eichler integral: C(n) <- n^{1-k} C(n), defined on series supported on
// positive exponents; NonCuspidalInput otherwise. Inverse of d_op there.
LaurentSeries eichler_integral(const LaurentSeries& a, long k);

}  // namespace qshadow

#endif
