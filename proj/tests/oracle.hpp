// Independent brute-force reference implementations used to freeze expected
// values. Everything here deliberately avoids the library's algorithms:
// products are expanded factor by factor, inverses are found by solving, and
// point counts enumerate the affine plane.
#ifndef QSHADOW_TESTS_ORACLE_HPP
#define QSHADOW_TESTS_ORACLE_HPP

#include <random>
#include <vector>

#include "qshadow/laurent_series.hpp"
#include "qshadow/newforms.hpp"

namespace oracle {

using qshadow::Integer;
using qshadow::LaurentSeries;
using qshadow::Rational;

// prod_{n>=1} (1 - q^{delta n}) below L, one factor at a time.
inline std::vector<Integer> naive_unit(long delta, long L) {
    std::vector<Integer> c(static_cast<std::size_t>(L));
    c[0] = 1;
    for (long n = delta; n < L; n += delta)
        for (long i = L - 1; i >= n; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - n)];
    return c;
}

inline std::vector<Integer> naive_mul(const std::vector<Integer>& a,
                                      const std::vector<Integer>& b, long L) {
    std::vector<Integer> c(static_cast<std::size_t>(L));
    for (long i = 0; i < static_cast<long>(a.size()) && i < L; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (long j = 0; j < static_cast<long>(b.size()) && i + j < L; ++j)
            c[static_cast<std::size_t>(i + j)] +=
                a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    return c;
}

inline std::vector<Integer> naive_pow(std::vector<Integer> base, long exponent, long L) {
    std::vector<Integer> acc(static_cast<std::size_t>(L));
    acc[0] = 1;
    for (long i = 0; i < exponent; ++i) acc = naive_mul(acc, base, L);
    return acc;
}

// Solves b * x = 1 term by term; b[0] must be a unit of Z (+-1).
inline std::vector<Integer> naive_inverse(const std::vector<Integer>& b, long L) {
    std::vector<Integer> x(static_cast<std::size_t>(L));
    x[0] = b[0];  // 1/b0 = b0 for b0 = +-1
    for (long n = 1; n < L; ++n) {
        Integer s(0);
        for (long j = 1; j <= n && j < static_cast<long>(b.size()); ++j)
            s += b[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(n - j)];
        x[static_cast<std::size_t>(n)] = -b[0] * s;
    }
    return x;
}

inline LaurentSeries to_series(const std::vector<Integer>& dense, long min_exp) {
    LaurentSeries::CoeffMap m;
    for (long i = 0; i < static_cast<long>(dense.size()); ++i)
        if (dense[static_cast<std::size_t>(i)] != 0)
            m.emplace(min_exp + i, Rational(dense[static_cast<std::size_t>(i)]));
    return LaurentSeries(min_exp, min_exp + static_cast<long>(dense.size()), std::move(m));
}

// Affine enumeration of the long Weierstrass equation, no character sums.
inline long naive_ap(const qshadow::EllipticCurve& E, long p) {
    long affine = 0;
    for (long x = 0; x < p; ++x)
        for (long y = 0; y < p; ++y) {
            long lhs = (y * y + E.a1 * x * y + E.a3 * y) % p;
            long rhs = (((x * x % p) * x) % p + E.a2 * x % p * x + E.a4 * x + E.a6) % p;
            if (((lhs - rhs) % p + p) % p == 0) ++affine;
        }
    return p + 1 - (affine + 1);
}

// Random sparse series over a window around zero; exact small rationals.
inline LaurentSeries random_series(std::mt19937_64& rng, bool integral = false) {
    std::uniform_int_distribution<long> lo_dist(-6, 2), len_dist(4, 14), num_dist(-9, 9),
        den_dist(1, 8);
    std::bernoulli_distribution keep(0.6);
    long lo = lo_dist(rng);
    long hi = lo + len_dist(rng);
    LaurentSeries::CoeffMap m;
    for (long e = lo; e < hi; ++e) {
        if (!keep(rng)) continue;
        long num = num_dist(rng);
        if (num == 0) continue;
        Rational c(num, integral ? 1 : den_dist(rng));
        c.canonicalize();
        m.emplace(e, c);
    }
    return LaurentSeries(lo, hi, std::move(m));
}

inline Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num_dist(-50, 50), den_dist(1, 40);
    Rational c(num_dist(rng), den_dist(rng));
    c.canonicalize();
    return c;
}

}  // namespace oracle

#endif
