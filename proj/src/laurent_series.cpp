#include "qshadow/laurent_series.hpp"

#include <algorithm>
#include <vector>

namespace qshadow {

namespace {

const Rational kZero(0);

long floor_div(long a, long b) {
    long q = a / b;
    long r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

long ceil_div(long a, long b) {
    return -floor_div(-a, b);
}

long checked_mul(long a, long b) {
    long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("series exponent overflow");
    return r;
}

long checked_add(long a, long b) {
    long r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("series exponent overflow");
    return r;
}

}  // namespace

LaurentSeries::LaurentSeries(long min_exp, long prec) : min_exp_(min_exp), prec_(prec) {
    validate();
}

LaurentSeries::LaurentSeries(long min_exp, long prec, CoeffMap coeffs)
    : min_exp_(min_exp), prec_(prec), coeffs_(std::move(coeffs)) {
    validate();
    strip_zeros();
}

void LaurentSeries::validate() const {
    if (min_exp_ >= prec_)
        throw std::invalid_argument("LaurentSeries: empty window (min_exp >= prec)");
    if (!coeffs_.empty()) {
        if (coeffs_.begin()->first < min_exp_ || coeffs_.rbegin()->first >= prec_)
            throw std::invalid_argument("LaurentSeries: stored exponent outside window");
    }
}

void LaurentSeries::strip_zeros() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second == 0)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

LaurentSeries LaurentSeries::constant(const Rational& c, long prec) {
    CoeffMap m;
    if (c != 0) m.emplace(0, c);
    return LaurentSeries(0, prec, std::move(m));
}

LaurentSeries LaurentSeries::monomial(const Rational& c, long exp, long prec) {
    CoeffMap m;
    if (c != 0) m.emplace(exp, c);
    return LaurentSeries(exp, prec, std::move(m));
}

LaurentSeries LaurentSeries::from_terms(std::initializer_list<std::pair<long, Rational>> terms,
                                        long prec) {
    if (terms.size() == 0)
        throw std::invalid_argument("from_terms: no terms; use the zero constructor");
    long lo = terms.begin()->first;
    CoeffMap m;
    for (const auto& [e, c] : terms) {
        lo = std::min(lo, e);
        m[e] += c;
    }
    return LaurentSeries(lo, prec, std::move(m));
}

bool LaurentSeries::is_integral() const {
    for (const auto& [e, c] : coeffs_)
        if (c.get_den() != 1) return false;
    return true;
}

Rational LaurentSeries::coeff(long n) const {
    if (n < min_exp_ || n >= prec_)
        throw PrecisionExceeded("coefficient at q^" + std::to_string(n) +
                                    " outside certain window [" + std::to_string(min_exp_) +
                                    ", " + std::to_string(prec_) + ")",
                                n >= prec_ ? n + 1 : 0);
    return at(n);
}

const Rational& LaurentSeries::at(long n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? kZero : it->second;
}

LaurentSeries LaurentSeries::restricted(long lo, long hi) const {
    if (hi > prec_)
        throw PrecisionExceeded("restricted window exceeds prec", hi);
    if (!coeffs_.empty() && coeffs_.begin()->first < lo)
        throw std::invalid_argument("restricted: would drop a nonzero leading term");
    return LaurentSeries(lo, hi, coeffs_);
}

LaurentSeries LaurentSeries::shifted(long delta) const {
    CoeffMap m;
    for (const auto& [e, c] : coeffs_) m.emplace(checked_add(e, delta), c);
    return LaurentSeries(checked_add(min_exp_, delta), checked_add(prec_, delta), std::move(m));
}

LaurentSeries LaurentSeries::scaled(const Rational& c) const {
    if (c == 0) return LaurentSeries(min_exp_, prec_);
    CoeffMap m;
    for (const auto& [e, v] : coeffs_) m.emplace(e, v * c);
    return LaurentSeries(min_exp_, prec_, std::move(m));
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    long lo = std::min(a.min_exp_, b.min_exp_);
    long hi = std::min(a.prec_, b.prec_);
    LaurentSeries::CoeffMap m = a.coeffs_;
    for (const auto& [e, c] : b.coeffs_) m[e] += c;
    // keys can exceed the common window when one series extends further
    for (auto it = m.begin(); it != m.end();) {
        if (it->first >= hi)
            it = m.erase(it);
        else
            ++it;
    }
    return LaurentSeries(lo, hi, std::move(m));
}

LaurentSeries operator-(const LaurentSeries& a) {
    return a.scaled(Rational(-1));
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return a + (-b);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    long lo = checked_add(a.min_exp_, b.min_exp_);
    long hi = std::min(checked_add(a.prec_, b.min_exp_), checked_add(b.prec_, a.min_exp_));
    if (a.coeffs_.empty() || b.coeffs_.empty()) return LaurentSeries(lo, hi);

    const std::size_t len = static_cast<std::size_t>(hi - lo);
    LaurentSeries::CoeffMap out;

    if (a.is_integral() && b.is_integral()) {
        // dense integer accumulation with fused add-multiply
        std::vector<Integer> buf(len);
        for (const auto& [i, ci] : a.coeffs_) {
            mpz_srcptr ci_z = mpq_numref(ci.get_mpq_t());
            for (const auto& [j, cj] : b.coeffs_) {
                long e = i + j;
                if (e >= hi) break;
                mpz_addmul(buf[static_cast<std::size_t>(e - lo)].get_mpz_t(), ci_z,
                           mpq_numref(cj.get_mpq_t()));
            }
        }
        for (std::size_t t = 0; t < len; ++t)
            if (buf[t] != 0) out.emplace_hint(out.end(), lo + static_cast<long>(t),
                                              Rational(std::move(buf[t])));
    } else {
        std::vector<Rational> buf(len);
        Rational tmp;
        for (const auto& [i, ci] : a.coeffs_) {
            for (const auto& [j, cj] : b.coeffs_) {
                long e = i + j;
                if (e >= hi) break;
                tmp = ci * cj;
                buf[static_cast<std::size_t>(e - lo)] += tmp;
            }
        }
        for (std::size_t t = 0; t < len; ++t)
            if (buf[t] != 0) out.emplace_hint(out.end(), lo + static_cast<long>(t),
                                              std::move(buf[t]));
    }
    return LaurentSeries(lo, hi, std::move(out));
}

LaurentSeries LaurentSeries::inverse() const {
    auto lead_it = coeffs_.find(min_exp_);
    if (lead_it == coeffs_.end())
        throw InvalidLeadingTerm("inverse: zero coefficient at min_exp " +
                                 std::to_string(min_exp_));
    const Rational& lead = lead_it->second;
    const long len = prec_ - min_exp_;

    // a = lead * q^min_exp * (1 + u); compute v = (1+u)^{-1} by the standard
    // recursion v_n = -sum_j u_j v_{n-j}, iterating only over the nonzero u_j.
    std::vector<std::pair<long, Rational>> u;
    for (auto it = std::next(lead_it); it != coeffs_.end(); ++it)
        u.emplace_back(it->first - min_exp_, it->second / lead);

    std::vector<Rational> v(static_cast<std::size_t>(len));
    v[0] = 1;
    Rational tmp;
    for (long n = 1; n < len; ++n) {
        Rational acc(0);
        for (const auto& [j, uj] : u) {
            if (j > n) break;
            tmp = uj * v[static_cast<std::size_t>(n - j)];
            acc += tmp;
        }
        v[static_cast<std::size_t>(n)] = -acc;
    }

    CoeffMap out;
    for (long n = 0; n < len; ++n) {
        if (v[static_cast<std::size_t>(n)] != 0)
            out.emplace_hint(out.end(), -min_exp_ + n, v[static_cast<std::size_t>(n)] / lead);
    }
    return LaurentSeries(-min_exp_, prec_ - 2 * min_exp_, std::move(out));
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
    auto lead_it = b.coeffs_.find(b.min_exp_);
    if (lead_it == b.coeffs_.end())
        throw InvalidLeadingTerm("division: zero coefficient at divisor min_exp " +
                                 std::to_string(b.min_exp_));
    const Rational& lead = lead_it->second;

    const long lo = a.min_exp_ - b.min_exp_;
    const long len = std::min(a.prec_ - a.min_exp_, b.prec_ - b.min_exp_);
    const long hi = lo + len;

    std::vector<std::pair<long, Rational>> d;  // divisor tail, sparse
    for (auto it = std::next(lead_it); it != b.coeffs_.end(); ++it)
        d.emplace_back(it->first - b.min_exp_, it->second);

    const bool int_path = a.is_integral() && b.is_integral() &&
                          (lead == 1 || lead == -1);
    LaurentSeries::CoeffMap out;

    if (int_path) {
        std::vector<Integer> c(static_cast<std::size_t>(len));
        const bool neg_lead = lead < 0;
        for (long m = 0; m < len; ++m) {
            Integer acc(mpq_numref(a.at(a.min_exp_ + m).get_mpq_t()));
            for (const auto& [j, dj] : d) {
                if (j > m) break;
                mpz_submul(acc.get_mpz_t(), mpq_numref(dj.get_mpq_t()),
                           c[static_cast<std::size_t>(m - j)].get_mpz_t());
            }
            if (neg_lead) acc = -acc;
            c[static_cast<std::size_t>(m)] = std::move(acc);
        }
        for (long m = 0; m < len; ++m)
            if (c[static_cast<std::size_t>(m)] != 0)
                out.emplace_hint(out.end(), lo + m,
                                 Rational(std::move(c[static_cast<std::size_t>(m)])));
    } else {
        std::vector<Rational> c(static_cast<std::size_t>(len));
        Rational tmp;
        for (long m = 0; m < len; ++m) {
            Rational acc = a.at(a.min_exp_ + m);
            for (const auto& [j, dj] : d) {
                if (j > m) break;
                tmp = dj * c[static_cast<std::size_t>(m - j)];
                acc -= tmp;
            }
            c[static_cast<std::size_t>(m)] = acc / lead;
        }
        for (long m = 0; m < len; ++m)
            if (c[static_cast<std::size_t>(m)] != 0)
                out.emplace_hint(out.end(), lo + m, std::move(c[static_cast<std::size_t>(m)]));
    }
    return LaurentSeries(lo, hi, std::move(out));
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.min_exp_ == b.min_exp_ && a.prec_ == b.prec_ && a.coeffs_ == b.coeffs_;
}

bool LaurentSeries::agrees_with(const LaurentSeries& other) const {
    long lo = std::max(min_exp_, other.min_exp_);
    long hi = std::min(prec_, other.prec_);
    if (lo >= hi) return true;
    auto ia = coeffs_.lower_bound(lo);
    const auto ea = coeffs_.lower_bound(hi);
    auto ib = other.coeffs_.lower_bound(lo);
    const auto eb = other.coeffs_.lower_bound(hi);
    for (; ia != ea && ib != eb; ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return ia == ea && ib == eb;
}

LaurentSeries u_op(const LaurentSeries& a, long p) {
    if (p < 1) throw std::invalid_argument("u_op: p must be >= 1");
    if (p == 1) return a;
    LaurentSeries::CoeffMap out;
    for (const auto& [e, c] : a.terms())
        if (e % p == 0) out.emplace_hint(out.end(), e / p, c);
    return LaurentSeries(ceil_div(a.min_exp(), p), ceil_div(a.prec(), p), std::move(out));
}

LaurentSeries v_op(const LaurentSeries& a, long p) {
    if (p < 1) throw std::invalid_argument("v_op: p must be >= 1");
    if (p == 1) return a;
    LaurentSeries::CoeffMap out;
    for (const auto& [e, c] : a.terms()) out.emplace_hint(out.end(), checked_mul(e, p), c);
    return LaurentSeries(checked_mul(a.min_exp(), p), checked_mul(a.prec(), p), std::move(out));
}

LaurentSeries d_op(const LaurentSeries& a, long k) {
    if (k < 2) throw std::invalid_argument("d_op: weight must be >= 2");
    LaurentSeries::CoeffMap out;
    for (const auto& [e, c] : a.terms()) {
        if (e == 0) continue;  // 0^{k-1} = 0
        Integer f = pow_integer(Integer(e), static_cast<unsigned long>(k - 1));
        out.emplace_hint(out.end(), e, c * Rational(f));
    }
    return LaurentSeries(a.min_exp(), a.prec(), std::move(out));
}

LaurentSeries eichler_integral(const LaurentSeries& a, long k) {
    if (k < 2) throw std::invalid_argument("eichler_integral: weight must be >= 2");
    LaurentSeries::CoeffMap out;
    for (const auto& [e, c] : a.terms()) {
        if (e <= 0)
            throw NonCuspidalInput("eichler integral of a series with a term at q^" +
                                   std::to_string(e));
        Integer f = pow_integer(Integer(e), static_cast<unsigned long>(k - 1));
        out.emplace_hint(out.end(), e, c / Rational(f));
    }
    return LaurentSeries(a.min_exp(), a.prec(), std::move(out));
}

}  // namespace qshadow
