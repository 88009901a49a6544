#ifndef QSHADOW_NEWFORMS_HPP
#define QSHADOW_NEWFORMS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qshadow/eta.hpp"
#include "qshadow/laurent_series.hpp"

namespace qshadow {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
// integer coefficients, used as an exact coefficient source for the weight-2
// forms: a_p = p + 1 - #E(F_p).
struct EllipticCurve {
    long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    std::string conductor_label;

    Integer discriminant() const;
};

// Trace of Frobenius at a prime of good reduction, by exhaustive counting:
// a character sum over x for odd p, direct enumeration for p = 2. Throws
// BadReduction when p divides the discriminant. O(p) per call; meant for
// desk-scale p.
long ap_point_count(const EllipticCurve& curve, long p);

enum class PrimeClass { Inert, Split, Ramified };

// Splitting behaviour of p in the quadratic order of discriminant disc < 0,
// by the Kronecker symbol (disc/p).
PrimeClass classify_prime(long disc, long p);
const char* prime_class_name(PrimeClass c);

// true iff the odd prime p is inert; Ramified error when p | disc.
bool is_inert(long disc, long p);

// One of the five catalogued CM newforms with one-dimensional cusp space.
// Coefficients are exact integers: a_p at good primes comes from the source
// (point counting for weight 2, the eta-quotient expansion for weight 4),
// a_p = 0 at p | level, and everything else follows from the eigenform
// recursion a_{p^{r+1}} = a_p a_{p^r} - p^{k-1} a_{p^{r-1}} together with
// multiplicativity. Coefficients are memoized; the cache is shared between
// copies and guarded, so concurrent lookups are safe.
class CMNewform {
public:
    CMNewform(long weight, long level, long cm_disc, EllipticCurve curve);
    CMNewform(long weight, long level, long cm_disc, EtaQuotient eta);

    long weight() const { return weight_; }
    long level() const { return level_; }
    long cm_discriminant() const { return cm_disc_; }
    std::string label() const;  // "<level>.<weight>", e.g. "9.4"

    const EllipticCurve* curve_source() const;
    const EtaQuotient* eta_source() const;

    Integer coefficient(long n) const;  // n >= 1
    LaurentSeries q_expansion(long order) const;

    // Seed the memo cache from a stored expansion (window must start at 1,
    // integer coefficients).
    void preload_coefficients(const LaurentSeries& expansion) const;

private:
    long weight_, level_, cm_disc_;
    std::optional<EllipticCurve> curve_;
    std::optional<EtaQuotient> eta_;

    struct Memo {
        std::mutex mu;
        std::map<long, Integer> values;
        std::optional<LaurentSeries> eta_expansion;
    };
    std::shared_ptr<Memo> memo_;

    Integer coefficient_locked(long n) const;
    Integer prime_coefficient_locked(long p) const;
};

// The five catalogued forms: 27.2, 32.2, 36.2, 49.2, 9.4. Curve models are
// validated once against the classical eta-quotient identities before the
// catalogue is handed out; a mismatch aborts with a diagnostic instead of
// returning wrong numbers.
const std::vector<CMNewform>& catalogue();

const CMNewform& form_by_label(const std::string& label);  // UnknownForm

}  // namespace qshadow

#endif
