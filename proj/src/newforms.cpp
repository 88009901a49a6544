#include "qshadow/newforms.hpp"

#include <cstdint>
#include <vector>

namespace qshadow {

Integer EllipticCurve::discriminant() const {
    Integer A1(a1), A2(a2), A3(a3), A4(a4), A6(a6);
    Integer b2 = A1 * A1 + 4 * A2;
    Integer b4 = 2 * A4 + A1 * A3;
    Integer b6 = A3 * A3 + 4 * A6;
    Integer b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

namespace {

long mod_reduce(long v, long p) {
    long r = v % p;
    return r < 0 ? r + p : r;
}

}  // namespace

long ap_point_count(const EllipticCurve& curve, long p) {
    if (p < 2) throw std::invalid_argument("ap_point_count: p must be prime");
    if (mpz_divisible_ui_p(curve.discriminant().get_mpz_t(), static_cast<unsigned long>(p)))
        throw BadReduction("curve " + curve.conductor_label + " has bad reduction at " +
                           std::to_string(p));
    if (p == 2) {
        long affine = 0;
        for (long x = 0; x < 2; ++x)
            for (long y = 0; y < 2; ++y) {
                long lhs = y * y + curve.a1 * x * y + curve.a3 * y;
                long rhs = x * x * x + curve.a2 * x * x + curve.a4 * x + curve.a6;
                if (mod_reduce(lhs - rhs, 2) == 0) ++affine;
            }
        return 2 + 1 - (affine + 1);
    }

    // complete the square: #affine solutions at x is 1 + chi(4x^3 + b2 x^2 + 2 b4 x + b6)
    long b2 = mod_reduce(curve.a1 * curve.a1 + 4 * curve.a2, p);
    long b4x2 = mod_reduce(2 * (2 * curve.a4 + curve.a1 * curve.a3), p);
    long b6 = mod_reduce(curve.a3 * curve.a3 + 4 * curve.a6, p);

    std::vector<std::int8_t> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (long t = 1; t < p; ++t) chi[static_cast<std::size_t>((t * t) % p)] = 1;

    long sum = 0;
    for (long x = 0; x < p; ++x) {
        long x2 = (x * x) % p;
        long f = (4 * ((x2 * x) % p) + b2 * x2 + b4x2 * x + b6) % p;
        sum += chi[static_cast<std::size_t>(f)];
    }
    return -sum;
}

PrimeClass classify_prime(long disc, long p) {
    if (p < 2) throw std::invalid_argument("classify_prime: p must be prime");
    if (disc >= 0) throw std::invalid_argument("classify_prime: discriminant must be negative");
    if (disc % p == 0) return PrimeClass::Ramified;
    int sym = mpz_kronecker_si(Integer(disc).get_mpz_t(), p);
    return sym == -1 ? PrimeClass::Inert : PrimeClass::Split;
}

const char* prime_class_name(PrimeClass c) {
    switch (c) {
        case PrimeClass::Inert: return "inert";
        case PrimeClass::Split: return "split";
        case PrimeClass::Ramified: return "ramified";
    }
    return "?";
}

bool is_inert(long disc, long p) {
    if (p == 2 || p < 2) throw std::invalid_argument("is_inert: p must be an odd prime");
    PrimeClass c = classify_prime(disc, p);
    if (c == PrimeClass::Ramified)
        throw Ramified("prime " + std::to_string(p) + " ramifies in discriminant " +
                       std::to_string(disc));
    return c == PrimeClass::Inert;
}

CMNewform::CMNewform(long weight, long level, long cm_disc, EllipticCurve curve)
    : weight_(weight), level_(level), cm_disc_(cm_disc), curve_(std::move(curve)),
      memo_(std::make_shared<Memo>()) {}

CMNewform::CMNewform(long weight, long level, long cm_disc, EtaQuotient eta)
    : weight_(weight), level_(level), cm_disc_(cm_disc), eta_(std::move(eta)),
      memo_(std::make_shared<Memo>()) {}

std::string CMNewform::label() const {
    return std::to_string(level_) + "." + std::to_string(weight_);
}

const EllipticCurve* CMNewform::curve_source() const {
    return curve_ ? &*curve_ : nullptr;
}

const EtaQuotient* CMNewform::eta_source() const {
    return eta_ ? &*eta_ : nullptr;
}

Integer CMNewform::prime_coefficient_locked(long p) const {
    if (level_ % p == 0) return 0;  // every catalogued level has p^2 | N
    if (curve_) return Integer(ap_point_count(*curve_, p));
    // eta source: read a_p off the cached expansion, growing it as needed
    if (!memo_->eta_expansion || memo_->eta_expansion->prec() <= p) {
        long order = 256;
        while (order <= p) order *= 2;
        memo_->eta_expansion = eta_->expand(order);
    }
    return Integer(memo_->eta_expansion->coeff(p).get_num());
}

Integer CMNewform::coefficient_locked(long n) const {
    if (n == 1) return 1;
    auto hit = memo_->values.find(n);
    if (hit != memo_->values.end()) return hit->second;

    long p = n;
    for (long d = 2; d * d <= n; d += (d == 2 ? 1 : 2))
        if (n % d == 0) {
            p = d;
            break;
        }
    long pe = 1, rest = n;
    while (rest % p == 0) {
        rest /= p;
        pe *= p;
    }

    Integer result;
    if (rest == 1 && level_ % p == 0) {
        // bad prime: a_{p^r} = a_p^r = 0 (every catalogued level has p^2 | N)
        result = 0;
    } else if (rest == 1) {
        // prime power: eigenform recursion a_{p^{r+1}} = a_p a_{p^r} - p^{k-1} a_{p^{r-1}}
        Integer ap = prime_coefficient_locked(p);
        Integer pk1 = pow_integer(Integer(p), static_cast<unsigned long>(weight_ - 1));
        Integer prev(1), cur = ap;
        long q = p;
        memo_->values.emplace(q, cur);
        while (q != pe) {
            q *= p;
            Integer next = ap * cur - pk1 * prev;
            prev = std::move(cur);
            cur = std::move(next);
            memo_->values.emplace(q, cur);
        }
        result = std::move(cur);
    } else {
        result = coefficient_locked(pe) * coefficient_locked(rest);
    }

    memo_->values.emplace(n, result);
    return result;
}

Integer CMNewform::coefficient(long n) const {
    if (n < 1) throw std::invalid_argument("coefficient index must be >= 1");
    std::lock_guard<std::mutex> lock(memo_->mu);
    return coefficient_locked(n);
}

LaurentSeries CMNewform::q_expansion(long order) const {
    if (order < 2) throw std::invalid_argument("q_expansion: order must be >= 2");
    std::lock_guard<std::mutex> lock(memo_->mu);
    LaurentSeries::CoeffMap m;
    for (long n = 1; n < order; ++n) {
        Integer a = coefficient_locked(n);
        if (a != 0) m.emplace_hint(m.end(), n, Rational(a));
    }
    return LaurentSeries(1, order, std::move(m));
}

void CMNewform::preload_coefficients(const LaurentSeries& expansion) const {
    if (expansion.min_exp() < 1)
        throw std::invalid_argument("coefficient preload must start at q^1");
    if (!expansion.is_integral())
        throw std::invalid_argument("coefficient preload must be integral");
    std::lock_guard<std::mutex> lock(memo_->mu);
    for (long n = expansion.min_exp(); n < expansion.prec(); ++n)
        memo_->values.emplace(n, Integer(expansion.at(n).get_num()));
}

namespace {

// The catalogue's curve models are cross-checked against the classical eta
// identities (and, for 49, a couple of fixed traces) before first use.
void validate_catalogue(const std::vector<CMNewform>& forms) {
    struct Check {
        std::size_t index;
        const char* quotient;
    };
    const Check checks[] = {{0, "3^2 9^2"}, {1, "4^2 8^2"}, {2, "6^4"}, {4, "3^8"}};
    const long order = 64;
    for (const auto& [idx, text] : checks) {
        LaurentSeries from_source = forms[idx].q_expansion(order);
        LaurentSeries from_eta = EtaQuotient::parse(text).expand(order);
        if (!(from_source == from_eta))
            throw Error("catalogue self-check failed: form " + forms[idx].label() +
                        " does not match eta quotient " + std::string(text));
    }
    const CMNewform& f49 = forms[3];
    if (f49.coefficient(2) != 1 || f49.coefficient(11) != 4 || f49.coefficient(23) != 8)
        throw Error("catalogue self-check failed: form 49.2 traces are off");
}

std::vector<CMNewform> build_catalogue() {
    std::vector<CMNewform> forms;
    forms.emplace_back(2, 27, -3, EllipticCurve{0, 0, 1, 0, 0, "27a"});
    forms.emplace_back(2, 32, -4, EllipticCurve{0, 0, 0, -1, 0, "32a"});
    forms.emplace_back(2, 36, -3, EllipticCurve{0, 0, 0, 0, 1, "36a"});
    forms.emplace_back(2, 49, -7, EllipticCurve{1, -1, 0, -2, -1, "49a"});
    forms.emplace_back(4, 9, -3, EtaQuotient({{3, 8}}));
    validate_catalogue(forms);
    return forms;
}

}  // namespace

const std::vector<CMNewform>& catalogue() {
    static const std::vector<CMNewform> forms = build_catalogue();
    return forms;
}

const CMNewform& form_by_label(const std::string& label) {
    for (const auto& f : catalogue())
        if (f.label() == label) return f;
    throw UnknownForm("unknown form '" + label + "'; catalogued: 27.2 32.2 36.2 49.2 9.4");
}

}  // namespace qshadow
