#include <doctest.h>

#include "oracle.hpp"
#include "qshadow/laurent_series.hpp"

using namespace qshadow;
using oracle::random_series;

namespace {

LaurentSeries tightened(const LaurentSeries& s) {
    return s.restricted(s.terms().begin()->first, s.prec());
}

}  // namespace

TEST_CASE("construction and coefficient access") {
    LaurentSeries s = LaurentSeries::from_terms({{-1, Rational(1)}, {1, Rational(3)}}, 4);
    CHECK(s.min_exp() == -1);
    CHECK(s.prec() == 4);
    CHECK(s.coeff(-1) == 1);
    CHECK(s.coeff(0) == 0);  // absent key inside the window
    CHECK(s.coeff(1) == 3);
    CHECK_THROWS_AS(s.coeff(4), PrecisionExceeded);   // exclusive bound
    CHECK_THROWS_AS(s.coeff(-2), PrecisionExceeded);  // below the window
    CHECK_THROWS_AS(LaurentSeries(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(LaurentSeries(0, 2, {{5, Rational(1)}}), std::invalid_argument);
}

TEST_CASE("addition") {
    LaurentSeries qinv = LaurentSeries::monomial(Rational(1), -1, 3);
    CHECK((qinv + (-qinv)).is_zero());  // additive inverse leaves an empty map

    LaurentSeries a = LaurentSeries::from_terms({{0, Rational(1)}, {1, Rational(1)}}, 5);
    LaurentSeries b = LaurentSeries::monomial(Rational(1), 2, 3);
    LaurentSeries sum = a + b;
    CHECK(sum.prec() == 3);  // precision is the minimum
    CHECK(sum.min_exp() == 0);
    CHECK(sum.coeff(0) == 1);
    CHECK(sum.coeff(1) == 1);
    CHECK(sum.coeff(2) == 1);

    LaurentSeries t1 = LaurentSeries::monomial(Rational(3), 1, 4);
    LaurentSeries t2 = LaurentSeries::monomial(Rational(5), 1, 4);
    CHECK((t1 + t2).coeff(1) == 8);
}

TEST_CASE("multiplication") {
    LaurentSeries qinv = LaurentSeries::monomial(Rational(1), -1, 1);
    LaurentSeries q = LaurentSeries::monomial(Rational(1), 1, 3);
    LaurentSeries one = qinv * q;
    CHECK(one.coeff(0) == 1);

    // (1 - q) * (1 + q + q^2 + ...) = 1 on the certain window
    LaurentSeries one_minus_q = LaurentSeries::from_terms({{0, Rational(1)}, {1, Rational(-1)}}, 8);
    LaurentSeries geo = one_minus_q.inverse();
    LaurentSeries prod = one_minus_q * geo;
    CHECK(prod.coeff(0) == 1);
    for (long n = 1; n < prod.prec(); ++n) CHECK(prod.coeff(n) == 0);

    // (q^-1 + 2)(q + 3q^2) = 1 + 5q + 6q^2
    LaurentSeries f = LaurentSeries::from_terms({{-1, Rational(1)}, {0, Rational(2)}}, 5);
    LaurentSeries g = LaurentSeries::from_terms({{1, Rational(1)}, {2, Rational(3)}}, 5);
    LaurentSeries fg = f * g;
    CHECK(fg.coeff(0) == 1);
    CHECK(fg.coeff(1) == 5);
    CHECK(fg.coeff(2) == 6);
}

TEST_CASE("inverse") {
    LaurentSeries q = LaurentSeries::monomial(Rational(1), 1, 4);
    LaurentSeries qi = q.inverse();
    CHECK(qi.min_exp() == -1);
    CHECK(qi.coeff(-1) == 1);

    LaurentSeries one_minus_q =
        LaurentSeries::from_terms({{0, Rational(1)}, {1, Rational(-1)}}, 6);
    LaurentSeries geo = one_minus_q.inverse();
    for (long n = 0; n < geo.prec(); ++n) CHECK(geo.coeff(n) == 1);  // geometric series

    LaurentSeries two = LaurentSeries::constant(Rational(2), 3);
    CHECK(two.inverse().coeff(0) == Rational(1, 2));

    // zero leading coefficient: the stored lead sits above min_exp
    LaurentSeries bad(0, 4, {{1, Rational(1)}});
    CHECK_THROWS_AS(bad.inverse(), InvalidLeadingTerm);
    CHECK_THROWS_AS(LaurentSeries(0, 3).inverse(), InvalidLeadingTerm);
}

TEST_CASE("u_op and v_op") {
    LaurentSeries a = LaurentSeries::from_terms(
        {{-2, Rational(1)}, {1, Rational(3)}, {4, Rational(5)}}, 5);
    LaurentSeries u = u_op(a, 2);
    CHECK(u.coeff(-1) == 1);  // index selection
    CHECK(u.coeff(0) == 0);
    CHECK(u.coeff(2) == 5);
    CHECK(u_op(a, 1) == a);

    LaurentSeries b = LaurentSeries::from_terms({{1, Rational(1)}, {2, Rational(1)}}, 3);
    LaurentSeries v = v_op(b, 3);
    CHECK(v.min_exp() == 3);
    CHECK(v.prec() == 9);
    CHECK(v.coeff(3) == 1);
    CHECK(v.coeff(6) == 1);
    CHECK(v.coeff(4) == 0);
    CHECK(v_op(b, 1) == b);

    LaurentSeries qinv = LaurentSeries::monomial(Rational(1), -1, 1);
    CHECK(u_op(v_op(qinv, 5), 5) == qinv);  // round trip
}

TEST_CASE("d_op and the Eichler integral") {
    LaurentSeries a = LaurentSeries::from_terms({{-1, Rational(1)}, {2, Rational(2)}}, 4);
    LaurentSeries d = d_op(a, 4);
    CHECK(d.coeff(-1) == -1);  // (-1)^3
    CHECK(d.coeff(2) == 16);   // 2^3 * 2

    LaurentSeries c7 = LaurentSeries::constant(Rational(7), 4);
    CHECK(d_op(c7, 4).is_zero());  // constant killed

    CHECK(eichler_integral(LaurentSeries::monomial(Rational(1), 1, 3), 4).coeff(1) == 1);
    CHECK(eichler_integral(LaurentSeries::monomial(Rational(8), 2, 4), 4).coeff(2) == 1);
    LaurentSeries noncusp = LaurentSeries::from_terms({{0, Rational(1)}, {1, Rational(1)}}, 3);
    CHECK_THROWS_AS(eichler_integral(noncusp, 4), NonCuspidalInput);
}

TEST_CASE("ring axioms on random series") {
    std::mt19937_64 rng(20240901);
    for (int trial = 0; trial < 200; ++trial) {
        LaurentSeries a = random_series(rng);
        LaurentSeries b = random_series(rng);
        LaurentSeries c = random_series(rng);
        CHECK((a * (b + c)).agrees_with(a * b + a * c));
        CHECK((a * b) == (b * a));
        CHECK(((a * b) * c).agrees_with(a * (b * c)));
    }
}

TEST_CASE("inverse round trip and division agree with mul-by-inverse") {
    std::mt19937_64 rng(20240902);
    int done = 0;
    while (done < 120) {
        LaurentSeries a = random_series(rng);
        LaurentSeries b = random_series(rng);
        if (a.is_zero() || b.is_zero()) continue;
        LaurentSeries bt = tightened(b);
        LaurentSeries inv = bt.inverse();
        LaurentSeries round_trip = bt * inv;
        CHECK(round_trip.agrees_with(LaurentSeries::constant(Rational(1), round_trip.prec())));
        CHECK((a / bt) == (a * inv));
        ++done;
    }
}

TEST_CASE("operator identities") {
    std::mt19937_64 rng(20240903);
    const long primes[] = {2, 3, 5};
    for (int trial = 0; trial < 150; ++trial) {
        LaurentSeries a = random_series(rng);
        long p = primes[trial % 3];

        // U(p) . V(p) is the identity, window included
        CHECK(u_op(v_op(a, p), p) == a);

        // V(p) . U(p) projects onto exponents divisible by p
        LaurentSeries proj = v_op(u_op(a, p), p);
        for (const auto& [e, c] : proj.terms()) {
            CHECK(e % p == 0);
            CHECK(c == a.coeff(e));
        }
        for (const auto& [e, c] : a.terms())
            if (e % p == 0 && e >= proj.min_exp() && e < proj.prec())
                CHECK(proj.at(e) == c);

        // D^{k-1}(a|V(p)) = p^{k-1} (D^{k-1}a)|V(p)
        long k = 4;
        Rational pk1(prime_power(p, static_cast<unsigned long>(k - 1)));
        CHECK(d_op(v_op(a, p), k) == v_op(d_op(a, k), p).scaled(pk1));
    }
}

TEST_CASE("d_op and eichler_integral invert each other on cuspidal series") {
    std::mt19937_64 rng(20240904);
    for (int trial = 0; trial < 100; ++trial) {
        LaurentSeries raw = random_series(rng);
        // shift well into positive exponents
        LaurentSeries a = raw.shifted(8 - std::min(raw.min_exp(), 0L));
        for (long k : {2L, 4L}) {
            CHECK(d_op(eichler_integral(a, k), k) == a);
            CHECK(eichler_integral(d_op(a, k), k) == a);
        }
    }
}

TEST_CASE("operations are deterministic") {
    std::mt19937_64 rng(20240905);
    LaurentSeries a = random_series(rng);
    LaurentSeries b = random_series(rng);
    CHECK((a * b) == (a * b));
    CHECK((a + b) == (a + b));
    CHECK(u_op(a, 3) == u_op(a, 3));
}

TEST_CASE("restricted views") {
    LaurentSeries s = LaurentSeries::from_terms({{1, Rational(2)}, {3, Rational(4)}}, 6);
    LaurentSeries r = s.restricted(0, 5);  // extending down into known zeros is fine
    CHECK(r.min_exp() == 0);
    CHECK(r.coeff(0) == 0);
    CHECK_THROWS_AS(s.restricted(2, 6), std::invalid_argument);  // would drop q^1
    CHECK_THROWS_AS(s.restricted(1, 9), PrecisionExceeded);
}
