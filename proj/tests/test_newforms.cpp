#include <doctest.h>

#include <numeric>
#include <thread>

#include "oracle.hpp"
#include "qshadow/newforms.hpp"

using namespace qshadow;

TEST_CASE("point counting at small primes") {
    EllipticCurve e32{0, 0, 0, -1, 0, "32a"};
    CHECK(ap_point_count(e32, 5) == -2);  // 8 projective points over F_5
    CHECK(ap_point_count(e32, 3) == 0);   // 3 inert in Q(i)

    EllipticCurve e36{0, 0, 0, 0, 1, "36a"};
    CHECK(ap_point_count(e36, 5) == 0);  // 5 = 2 mod 3 inert in Q(sqrt(-3))

    CHECK_THROWS_AS(ap_point_count(e32, 2), BadReduction);

    // cross-check the character-sum count against plain affine enumeration
    for (const auto& curve : {EllipticCurve{0, 0, 1, 0, 0, "27a"},
                              EllipticCurve{1, -1, 0, -2, -1, "49a"}}) {
        for (long p : {3L, 5L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
            if (mpz_divisible_ui_p(curve.discriminant().get_mpz_t(),
                                   static_cast<unsigned long>(p)))
                continue;
            CHECK(ap_point_count(curve, p) == oracle::naive_ap(curve, p));
        }
    }
}

TEST_CASE("discriminants of the catalogue models") {
    CHECK(EllipticCurve{0, 0, 1, 0, 0, ""}.discriminant() == -27);
    CHECK(EllipticCurve{0, 0, 0, -1, 0, ""}.discriminant() == 64);
    CHECK(EllipticCurve{0, 0, 0, 0, 1, ""}.discriminant() == -432);
    CHECK(EllipticCurve{1, -1, 0, -2, -1, ""}.discriminant() == -343);
}

TEST_CASE("prime classification") {
    CHECK(is_inert(-3, 5));
    CHECK_FALSE(is_inert(-3, 7));
    CHECK(is_inert(-4, 3));
    CHECK_FALSE(is_inert(-4, 5));
    CHECK(is_inert(-7, 5));
    CHECK_FALSE(is_inert(-7, 11));
    CHECK_THROWS_AS(is_inert(-3, 3), Ramified);
    CHECK_THROWS_AS(is_inert(-3, 2), std::invalid_argument);
    CHECK(classify_prime(-3, 7) == PrimeClass::Split);
    CHECK(classify_prime(-3, 3) == PrimeClass::Ramified);
}

TEST_CASE("catalogue shape") {
    const auto& forms = catalogue();
    REQUIRE(forms.size() == 5);
    long seen_weights = 0;
    for (const auto& f : forms) {
        CHECK(f.coefficient(1) == 1);  // normalized
        seen_weights += f.weight();
    }
    CHECK(seen_weights == 2 * 4 + 4);
    CHECK(form_by_label("9.4").cm_discriminant() == -3);
    CHECK(form_by_label("27.2").cm_discriminant() == -3);
    CHECK(form_by_label("32.2").cm_discriminant() == -4);
    CHECK(form_by_label("36.2").cm_discriminant() == -3);
    CHECK(form_by_label("49.2").cm_discriminant() == -7);
    CHECK_THROWS_AS(form_by_label("50.2"), UnknownForm);
}

TEST_CASE("coefficient values") {
    const CMNewform& f32 = form_by_label("32.2");
    CHECK(f32.coefficient(5) == -2);
    CHECK(f32.coefficient(25) == -1);  // a_5^2 - 5

    const CMNewform& f94 = form_by_label("9.4");
    for (long m = 0; m <= 2; ++m) {
        long e = 1;
        for (long i = 0; i < 2 * m + 1; ++i) e *= 5;
        CHECK(f94.coefficient(e) == 0);  // inert prime powers with odd exponent vanish
    }
    CHECK(f94.coefficient(3) == 0);  // p | N
    CHECK(form_by_label("27.2").coefficient(3) == 0);
    CHECK(form_by_label("36.2").coefficient(2) == 0);

    // a_{p^{2m}} = (-p^{k-1})^m when a_p = 0
    CHECK(f94.coefficient(25) == -125);
    CHECK(f94.coefficient(625) == 15625);
    CHECK(f32.coefficient(9) == -3);
    CHECK(f32.coefficient(81) == 9);

    CHECK_THROWS_AS(f94.coefficient(0), std::invalid_argument);
}

TEST_CASE("q-expansions match the classical eta identities") {
    struct Pair {
        const char* form;
        const char* quotient;
    };
    for (const auto& [label, quotient] : {Pair{"27.2", "3^2 9^2"}, Pair{"32.2", "4^2 8^2"},
                                          Pair{"36.2", "6^4"}, Pair{"9.4", "3^8"}}) {
        LaurentSeries lhs = form_by_label(label).q_expansion(120);
        LaurentSeries rhs = EtaQuotient::parse(quotient).expand(120);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("known expansion of 9.4") {
    LaurentSeries g = form_by_label("9.4").q_expansion(20);
    CHECK(g.coeff(1) == 1);
    CHECK(g.coeff(4) == -8);
    CHECK(g.coeff(7) == 20);
    CHECK(g.coeff(13) == -70);
    CHECK(g.coeff(16) == 64);
    CHECK(g.coeff(19) == 56);
}

TEST_CASE("eigenform structure at desk scale") {
    for (const auto& form : catalogue()) {
        long D = form.cm_discriminant();
        // CM vanishing at inert primes
        for (long p = 3; p < 300; p += 2) {
            if (!is_prime(p) || D % p == 0) continue;
            if (is_inert(D, p)) CHECK(form.coefficient(p) == 0);
        }
        // multiplicativity on coprime pairs
        for (long m = 2; m <= 30; ++m)
            for (long n = m + 1; m * n <= 300; ++n) {
                if (std::gcd(m, n) != 1) continue;
                CHECK(form.coefficient(m * n) == form.coefficient(m) * form.coefficient(n));
            }
        // Hasse/Deligne bound |a_p| <= 2 p^{(k-1)/2}
        for (long p = 2; p < 300; ++p) {
            if (!is_prime(p) || form.level() % p == 0) continue;
            Integer ap = form.coefficient(p);
            CHECK(ap * ap <= 4 * prime_power(p, static_cast<unsigned long>(form.weight() - 1)));
        }
    }
}

TEST_CASE("concurrent coefficient fills agree with serial ones") {
    CMNewform fresh(2, 27, -3, EllipticCurve{0, 0, 1, 0, 0, "27a"});
    std::vector<std::thread> workers;
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&fresh, t] {
            for (long n = 1 + t; n <= 400; n += 2) fresh.coefficient(n);
        });
    for (auto& w : workers) w.join();
    const CMNewform& reference = form_by_label("27.2");
    for (long n = 1; n <= 400; ++n) CHECK(fresh.coefficient(n) == reference.coefficient(n));
}

TEST_CASE("coefficient preloading") {
    CMNewform fresh(4, 9, -3, EtaQuotient({{3, 8}}));
    LaurentSeries expansion = form_by_label("9.4").q_expansion(50);
    fresh.preload_coefficients(expansion);
    CHECK(fresh.coefficient(13) == -70);
    CHECK_THROWS_AS(
        fresh.preload_coefficients(LaurentSeries::from_terms({{0, Rational(1)}}, 3)),
        std::invalid_argument);
}
