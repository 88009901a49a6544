#include <doctest.h>

#include "oracle.hpp"
#include "qshadow/eta.hpp"
#include "qshadow/newforms.hpp"
#include "qshadow/pairing.hpp"

using namespace qshadow;

TEST_CASE("the c = 1 normalization") {
    LaurentSeries F = build_generator_9_4(12);
    LaurentSeries g = form_by_label("9.4").q_expansion(12);
    PairingValue v = pair_series(F, g, 4);
    CHECK(v.value == 1);
    CHECK(v.weight == 4);
}

TEST_CASE("simple pairings") {
    LaurentSeries qinv = LaurentSeries::monomial(Rational(1), -1, 2);
    LaurentSeries cusp = LaurentSeries::from_terms({{1, Rational(1)}, {2, Rational(5)}}, 4);
    CHECK(pair_series(qinv, cusp, 2).value == -1);  // 1*1/(-1)^1

    LaurentSeries holomorphic = LaurentSeries::from_terms({{0, Rational(9)}}, 4);
    CHECK(pair_series(holomorphic, cusp, 2).value == 0);  // empty sum

    // sign identity: -q^{-1} + ... pairs to +1 against a normalized cusp form
    LaurentSeries principal =
        LaurentSeries::from_terms({{-1, Rational(-1)}, {3, Rational(11)}}, 5);
    CHECK(pair_series(principal, cusp, 2).value == 1);
    CHECK(pair_series(principal, cusp, 4).value == 1);
}

TEST_CASE("bilinearity") {
    std::mt19937_64 rng(20240930);
    for (int trial = 0; trial < 60; ++trial) {
        LaurentSeries a1 = oracle::random_series(rng);
        LaurentSeries a2 = oracle::random_series(rng);
        LaurentSeries b = oracle::random_series(rng).shifted(12);  // force cuspidal
        Rational s = oracle::random_rational(rng);

        long k = (trial % 2 == 0) ? 2 : 4;
        // left linearity needs both negative tails covered by b's window;
        // shift b's window out far enough
        LaurentSeries bw = b.restricted(1, b.prec());
        Rational lhs = pair_series(a1.scaled(s) + a2, bw, k).value;
        Rational rhs = s * pair_series(a1, bw, k).value + pair_series(a2, bw, k).value;
        CHECK(lhs == rhs);

        Rational lhs2 = pair_series(a1, bw.scaled(s), k).value;
        CHECK(lhs2 == s * pair_series(a1, bw, k).value);
    }
}

TEST_CASE("error paths") {
    LaurentSeries a = LaurentSeries::monomial(Rational(1), -3, 2);
    LaurentSeries noncusp = LaurentSeries::from_terms({{0, Rational(1)}, {1, Rational(1)}}, 6);
    CHECK_THROWS_AS(pair_series(a, noncusp, 4), NonCuspidalInput);

    LaurentSeries small_window = LaurentSeries::from_terms({{1, Rational(1)}}, 3);
    CHECK_THROWS_AS(pair_series(a, small_window, 4), PrecisionExceeded);  // needs q^3

    LaurentSeries cusp = LaurentSeries::from_terms({{1, Rational(1)}}, 8);
    CHECK_THROWS_AS(pair_series(a, cusp, 3), std::invalid_argument);  // odd weight
}
