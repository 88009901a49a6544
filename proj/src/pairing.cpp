#include "qshadow/pairing.hpp"

namespace qshadow {

PairingValue pair_series(const LaurentSeries& a, const LaurentSeries& cusp_form, long k) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("pairing weight must be a positive even integer");
    for (const auto& [e, c] : cusp_form.terms())
        if (e <= 0)
            throw NonCuspidalInput("second pairing argument has a term at q^" +
                                   std::to_string(e));
    Rational sum(0);
    for (const auto& [e, c] : a.terms()) {
        if (e >= 0) break;
        Integer denom = pow_integer(Integer(e), static_cast<unsigned long>(k - 1));
        sum += c * cusp_form.coeff(-e) / Rational(denom);
    }
    return {sum, k};
}

}  // namespace qshadow
