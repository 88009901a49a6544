#include "qshadow/rational.hpp"

#include <cctype>
#include <limits>

#include "qshadow/errors.hpp"

namespace qshadow {

namespace {

bool valid_fraction_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        return j;
    };
    if (s[i] == '+' || s[i] == '-') ++i;
    std::size_t j = digits(i);
    if (j == i) return false;
    if (j == s.size()) return true;
    if (s[j] != '/') return false;
    ++j;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    std::size_t k = digits(j);
    return k > j && k == s.size();
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    // trim
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty rational literal");
    s = s.substr(b, e - b + 1);
    if (!valid_fraction_text(s)) throw ParseError("malformed rational literal: '" + s + "'");
    Rational x;
    if (x.set_str(s, 10) != 0) throw ParseError("malformed rational literal: '" + s + "'");
    if (x.get_den() == 0) throw ParseError("zero denominator in rational literal: '" + s + "'");
    x.canonicalize();
    return x;
}

std::string fraction_string(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Integer pow_integer(const Integer& x, unsigned long n) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), n);
    return r;
}

Integer prime_power(long p, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
    return r;
}

bool fits_long(const Integer& x) {
    return x.fits_slong_p();
}

bool is_prime(long n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(Integer(n).get_mpz_t(), 30) != 0;
}

long odd_prime_power_long(long p, long m) {
    Integer v = prime_power(p, static_cast<unsigned long>(2 * m + 1));
    if (!fits_long(v))
        throw std::overflow_error("p^(2m+1) does not fit in a machine exponent");
    return v.get_si();
}

}  // namespace qshadow
