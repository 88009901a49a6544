#include "qshadow/eta.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace qshadow {

EtaQuotient::EtaQuotient(std::vector<EtaFactor> factors) : factors_(std::move(factors)) {
    std::erase_if(factors_, [](const EtaFactor& f) { return f.power == 0; });
    std::sort(factors_.begin(), factors_.end(),
              [](const EtaFactor& a, const EtaFactor& b) { return a.delta < b.delta; });
    std::set<long> seen;
    for (const auto& f : factors_) {
        if (f.delta <= 0) throw std::invalid_argument("eta factor delta must be positive");
        if (!seen.insert(f.delta).second)
            throw std::invalid_argument("duplicate eta factor delta " + std::to_string(f.delta));
    }
}

EtaQuotient EtaQuotient::parse(std::string_view text) {
    std::vector<EtaFactor> factors;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        auto caret = token.find('^');
        if (caret == std::string::npos || caret == 0 || caret + 1 == token.size())
            throw ParseError("eta factor must look like delta^power, got '" + token + "'");
        long delta = 0, power = 0;
        try {
            std::size_t p1 = 0, p2 = 0;
            delta = std::stol(token.substr(0, caret), &p1);
            power = std::stol(token.substr(caret + 1), &p2);
            if (p1 != caret || p2 != token.size() - caret - 1)
                throw ParseError("eta factor must look like delta^power, got '" + token + "'");
        } catch (const std::logic_error&) {
            throw ParseError("eta factor must look like delta^power, got '" + token + "'");
        }
        if (delta <= 0) throw ParseError("eta factor delta must be positive in '" + token + "'");
        factors.push_back({delta, power});
    }
    if (factors.empty()) throw ParseError("empty eta quotient");
    try {
        return EtaQuotient(std::move(factors));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string EtaQuotient::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << ' ';
        out << factors_[i].delta << '^' << factors_[i].power;
    }
    return out.str();
}

long EtaQuotient::exponent_times_24() const {
    long total = 0;
    for (const auto& f : factors_) total += f.delta * f.power;
    return total;
}

long EtaQuotient::leading_exponent() const {
    long total = exponent_times_24();
    long residue = ((total % 24) + 24) % 24;
    if (residue != 0)
        throw FractionalExponent("eta quotient '" + str() + "' has q-exponent " +
                                     std::to_string(total) + "/24 (residue " +
                                     std::to_string(residue) + " mod 24)",
                                 residue);
    return total / 24;
}

LaurentSeries eta_unit(long delta, long order) {
    if (delta < 1) throw std::invalid_argument("eta_unit: delta must be positive");
    if (order < 1) throw std::invalid_argument("eta_unit: order must be >= 1");
    LaurentSeries::CoeffMap m;
    m.emplace(0, Rational(1));
    for (long j = 1;; ++j) {
        long lo = delta * (j * (3 * j - 1) / 2);  // generalized pentagonal pair
        long hi = delta * (j * (3 * j + 1) / 2);
        if (lo >= order) break;
        Rational sign(j % 2 == 0 ? 1 : -1);
        m.emplace(lo, sign);
        if (hi < order) m.emplace(hi, sign);
    }
    return LaurentSeries(0, order, std::move(m));
}

LaurentSeries EtaQuotient::expand(long order) const {
    long shift = leading_exponent();
    long len = order - shift;
    if (len < 1)
        throw std::invalid_argument("expand: order " + std::to_string(order) +
                                    " does not reach past the leading exponent " +
                                    std::to_string(shift));
    LaurentSeries acc = LaurentSeries::constant(Rational(1), len);
    for (const auto& f : factors_) {
        LaurentSeries unit = eta_unit(f.delta, len);
        for (long i = 0; i < std::abs(f.power); ++i)
            acc = f.power > 0 ? acc * unit : acc / unit;
    }
    return acc.shifted(shift);
}

LaurentSeries build_generator_9_4(long order) {
    if (order < 2) throw std::invalid_argument("build_generator_9_4: order must be >= 2");
    const long len = order + 1;
    LaurentSeries u1 = eta_unit(1, len);
    LaurentSeries u3 = eta_unit(3, len);
    LaurentSeries u9 = eta_unit(9, len);

    LaurentSeries cube1 = (u1 * u1) * u1;  // both cubes are sqrt-sparse
    LaurentSeries cube9 = (u9 * u9) * u9;

    // eta(z)^3/eta(9z)^3 + 3 = q^{-1} (u1^3 + 3 q u9^3) / u9^3
    LaurentSeries numerator = cube1 + cube9.scaled(Rational(3)).shifted(1);
    LaurentSeries p = numerator * numerator;
    for (int i = 0; i < 8; ++i) p = p * u3;
    for (int i = 0; i < 6; ++i) p = p / u9;
    return (-p).shifted(-1);
}

}  // namespace qshadow
