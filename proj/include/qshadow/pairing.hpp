#ifndef QSHADOW_PAIRING_HPP
#define QSHADOW_PAIRING_HPP

#include "qshadow/laurent_series.hpp"

namespace qshadow {

struct PairingValue {
    Rational value;
    long weight;
};

// Bilinear pairing between a Laurent series and a cusp-form expansion:
//   <sum a_n q^n, sum b_n q^n> = sum_{n<0} a_n b_{-n} / n^{k-1}.
// The sum is finite because the first argument has finitely many negative
// terms. The second argument must have no nonzero coefficient at n <= 0
// (NonCuspidalInput) and its window must cover -n for every negative stored
// exponent n of the first (PrecisionExceeded).
PairingValue pair_series(const LaurentSeries& a, const LaurentSeries& cusp_form, long k);

}  // namespace qshadow

#endif
