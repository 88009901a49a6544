#ifndef QSHADOW_ETA_HPP
#define QSHADOW_ETA_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qshadow/laurent_series.hpp"

namespace qshadow {

struct EtaFactor {
    long delta;  // argument dilation, > 0
    long power;  // exponent, any sign
    friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

// Formal product over (delta, power) factors of rescaled eta functions,
// with the q^{delta/24} prefactors tracked as a single total exponent.
// Deltas are positive and pairwise distinct; factors are kept sorted.
class EtaQuotient {
public:
    explicit EtaQuotient(std::vector<EtaFactor> factors);

    // Whitespace-separated `delta^power` tokens, e.g. "3^8" or "1^3 9^-3".
    static EtaQuotient parse(std::string_view text);
    std::string str() const;

    const std::vector<EtaFactor>& factors() const { return factors_; }

    // 24 times the leading q-exponent, i.e. sum of delta*power.
    long exponent_times_24() const;

    // Leading q-exponent; FractionalExponent unless exponent_times_24() is
    // divisible by 24.
    long leading_exponent() const;

    // Exact expansion on the window [leading_exponent(), order).
    LaurentSeries expand(long order) const;

private:
    std::vector<EtaFactor> factors_;
};

// prod_{n>=1} (1 - q^{delta n}) on [0, order), via the pentagonal number
// theorem: sum_j (-1)^j q^{delta j(3j-1)/2}. Coefficients are -1, 0 or 1.
LaurentSeries eta_unit(long delta, long order);

// The distinguished weight-4 level-9 series
//     -q^{-1} - 2 q^2 + 49 q^5 - 48 q^8 - ...
// with principal part -q^{-1}, built from eta quotients as
// -eta(3z)^8 (eta(z)^3/eta(9z)^3 + 3)^2, on the window [-1, order).
// Internally the quotient is cleared to numerator form before squaring so
// the whole computation stays dense-times-sparse; the arrangement is exact
// and tested against the directly composed product.
LaurentSeries build_generator_9_4(long order);

}  // namespace qshadow

#endif
