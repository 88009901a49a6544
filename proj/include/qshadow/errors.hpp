#ifndef QSHADOW_ERRORS_HPP
#define QSHADOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qshadow {

// Base class for every domain error raised by the library. Anything else
// escaping the public API (std::invalid_argument, ...) indicates misuse of a
// documented precondition rather than a data-dependent failure.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Read outside a series' certain window, or a verification needs a larger
// expansion than the one supplied. required_order is the smallest prec that
// would make the call succeed (0 when not applicable).
struct PrecisionExceeded : Error {
    long required_order;
    explicit PrecisionExceeded(const std::string& what, long required = 0)
        : Error(what), required_order(required) {}
};

// invert()/division on a series whose coefficient at min_exp vanishes.
struct InvalidLeadingTerm : Error {
    using Error::Error;
};

// Eichler integral or cusp-form pairing fed a series with a nonzero
// coefficient at an exponent <= 0.
struct NonCuspidalInput : Error {
    using Error::Error;
};

// Eta quotient whose total q-exponent is not an integer. residue_mod_24 is
// the offending value of (sum delta*r) mod 24.
struct FractionalExponent : Error {
    long residue_mod_24;
    FractionalExponent(const std::string& what, long residue)
        : Error(what), residue_mod_24(residue) {}
};

// Point counting requested at a prime of bad reduction.
struct BadReduction : Error {
    using Error::Error;
};

// Splitting query at a prime dividing the field discriminant.
struct Ramified : Error {
    using Error::Error;
};

// An operation that only makes sense for inert primes was invoked on a
// split prime.
struct NotInert : Error {
    using Error::Error;
};

// The limit normalizer d_gamma(p^{2m+1}) vanished; m_collided records which
// m hit gamma exactly.
struct ZeroNormalizer : Error {
    long m_collided;
    ZeroNormalizer(const std::string& what, long m) : Error(what), m_collided(m) {}
};

// Digit stabilization needs at least three ratio terms.
struct InsufficientDepth : Error {
    using Error::Error;
};

// Malformed text input: rationals, eta-quotient syntax, interchange files.
struct ParseError : Error {
    using Error::Error;
};

struct UnknownForm : Error {
    using Error::Error;
};

}  // namespace qshadow

#endif
