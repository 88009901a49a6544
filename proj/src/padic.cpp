#include "qshadow/padic.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace qshadow {

using nlohmann::ordered_json;

namespace {

std::vector<long> odd_primes_upto(long n) {
    std::vector<bool> sieve(static_cast<std::size_t>(std::max<long>(n + 1, 2)), true);
    std::vector<long> out;
    for (long i = 2; i <= n; ++i) {
        if (!sieve[static_cast<std::size_t>(i)]) continue;
        if (i > 2) out.push_back(i);
        for (long j = i * i; j <= n; j += i) sieve[static_cast<std::size_t>(j)] = false;
    }
    return out;
}

ordered_json valuation_json(const Valuation& v) {
    if (!v) return nullptr;
    return *v;
}

}  // namespace

Valuation vp(const Rational& x, long p) {
    if (!is_prime(p)) throw std::invalid_argument("vp: p must be prime");
    if (x == 0) return std::nullopt;
    Integer P(p), scratch;
    long vn = static_cast<long>(
        mpz_remove(scratch.get_mpz_t(), mpq_numref(x.get_mpq_t()), P.get_mpz_t()));
    long vd = static_cast<long>(
        mpz_remove(scratch.get_mpz_t(), mpq_denref(x.get_mpq_t()), P.get_mpz_t()));
    return vn - vd;
}

std::string valuation_string(const Valuation& v) {
    return v ? std::to_string(*v) : "inf";
}

Integer mod_prime_power(const Rational& x, long p, long j) {
    if (j < 1) throw std::invalid_argument("mod_prime_power: j must be >= 1");
    Integer pj = prime_power(p, static_cast<unsigned long>(j));
    Integer num(x.get_num()), den(x.get_den()), inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pj.get_mpz_t()) == 0)
        throw Error("not a p-adic integer: denominator of " + fraction_string(x) +
                    " is divisible by " + std::to_string(p));
    Integer r = (num * inv) % pj;
    if (r < 0) r += pj;
    return r;
}

PadicContext PadicContext::for_form(const CMNewform& g, long p) {
    if (p == 2 || !is_prime(p))
        throw std::invalid_argument("the p-adic machinery needs an odd prime");
    if (g.level() % p == 0)
        throw Error("p = " + std::to_string(p) + " divides the level " +
                    std::to_string(g.level()));
    PadicContext ctx;
    ctx.p = p;
    ctx.k = g.weight();
    ctx.level = g.level();
    ctx.inert = is_inert(g.cm_discriminant(), p);
    ctx.beta_square = -Rational(prime_power(p, static_cast<unsigned long>(g.weight() - 1)));
    return ctx;
}

long required_order_power(long p, long m_max) {
    return odd_prime_power_long(p, m_max) + 1;
}

long required_order_limit(long p, long m_max, long n_max) {
    long e = odd_prime_power_long(p, m_max);
    long r;
    if (__builtin_mul_overflow(e, n_max, &r))
        throw std::overflow_error("required order does not fit in a machine exponent");
    return r + 1;
}

std::vector<Rational> ratio_sequence(const LaurentSeries& F, const PadicContext& ctx,
                                     long m_max) {
    if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
    if (!ctx.inert)
        throw NotInert("p = " + std::to_string(ctx.p) +
                       " is not inert; the ratio sequence is defined for inert primes");
    long needed = required_order_power(ctx.p, m_max);
    if (F.prec() < needed)
        throw PrecisionExceeded("series window ends at " + std::to_string(F.prec()) +
                                    " but the ratio sequence needs order " +
                                    std::to_string(needed),
                                needed);
    std::vector<Rational> out;
    Rational beta_pow(1);
    for (long m = 0; m <= m_max; ++m) {
        out.push_back(F.coeff(odd_prime_power_long(ctx.p, m)) / beta_pow);
        beta_pow *= ctx.beta_square;
    }
    return out;
}

bool ValuationReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ValuationEntry& e) { return e.pass; });
}

ordered_json ValuationReport::to_json() const {
    ordered_json rows = ordered_json::array();
    for (const auto& e : entries) {
        rows.push_back({{"m", e.m},
                        {"exponent", e.exponent},
                        {"coefficient", fraction_string(e.coefficient)},
                        {"observed_vp", valuation_json(e.observed_vp)},
                        {"expected_vp", e.expected_vp},
                        {"pass", e.pass}});
    }
    return ordered_json{{"p", p}, {"k", k}, {"all_pass", all_pass()}, {"entries", rows}};
}

std::string ValuationReport::table() const {
    std::ostringstream out;
    out << std::setw(4) << "m" << std::setw(12) << "exponent" << std::setw(12) << "observed"
        << std::setw(12) << "expected" << std::setw(8) << "pass" << '\n';
    for (const auto& e : entries) {
        out << std::setw(4) << e.m << std::setw(12) << e.exponent << std::setw(12)
            << valuation_string(e.observed_vp) << std::setw(12) << e.expected_vp
            << std::setw(8) << (e.pass ? "yes" : "NO") << '\n';
    }
    return out.str();
}

ValuationReport verify_valuation_law(const LaurentSeries& F, const PadicContext& ctx,
                                     long m_max) {
    if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
    if (!ctx.inert)
        throw NotInert("p = " + std::to_string(ctx.p) +
                       " is not inert; the valuation law applies to inert primes");
    long needed = required_order_power(ctx.p, m_max);
    if (F.prec() < needed)
        throw PrecisionExceeded("series window ends at " + std::to_string(F.prec()) +
                                    " but the valuation law at m_max needs order " +
                                    std::to_string(needed),
                                needed);
    ValuationReport report{ctx.p, ctx.k, {}};
    for (long m = 0; m <= m_max; ++m) {
        long e = odd_prime_power_long(ctx.p, m);
        Rational c = F.coeff(e);
        Valuation observed = vp(c, ctx.p);
        long expected = (ctx.k - 1) * m;
        report.entries.push_back(
            {m, e, c, observed, expected, observed.has_value() && *observed == expected});
    }
    return report;
}

ValuationReport verify_unit_ratios(const LaurentSeries& F, const PadicContext& ctx,
                                   long m_max) {
    std::vector<Rational> ratios = ratio_sequence(F, ctx, m_max);
    ValuationReport report{ctx.p, ctx.k, {}};
    for (long m = 0; m <= m_max; ++m) {
        Valuation observed = vp(ratios[static_cast<std::size_t>(m)], ctx.p);
        report.entries.push_back({m, odd_prime_power_long(ctx.p, m),
                                  ratios[static_cast<std::size_t>(m)], observed, 0,
                                  observed.has_value() && *observed == 0});
    }
    return report;
}

bool NonDivisibilityReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const NonDivisibilityEntry& e) { return e.pass; });
}

long NonDivisibilityReport::checked_count() const {
    return static_cast<long>(
        std::count_if(entries.begin(), entries.end(),
                      [](const NonDivisibilityEntry& e) { return e.checked; }));
}

ordered_json NonDivisibilityReport::to_json() const {
    ordered_json rows = ordered_json::array();
    for (const auto& e : entries) {
        rows.push_back({{"p", e.p},
                        {"class", prime_class_name(e.cls)},
                        {"vp_cp", e.checked ? valuation_json(e.vp_cp) : ordered_json(nullptr)},
                        {"checked", e.checked},
                        {"pass", e.pass}});
    }
    return ordered_json{{"discriminant", disc},
                        {"p_max", p_max},
                        {"checked", checked_count()},
                        {"all_pass", all_pass()},
                        {"entries", rows}};
}

std::string NonDivisibilityReport::table() const {
    std::ostringstream out;
    out << "odd primes up to " << p_max << ", discriminant " << disc << ": "
        << checked_count() << " inert primes checked\n";
    long shown = 0;
    for (const auto& e : entries) {
        if (!e.checked) continue;
        if (!e.pass || shown < 10) {
            out << std::setw(6) << e.p << "  v_p(C_F(p)) = " << valuation_string(e.vp_cp)
                << (e.pass ? "" : "  VIOLATION") << '\n';
            ++shown;
        }
    }
    if (checked_count() > shown) out << "  ... (" << (checked_count() - shown) << " more)\n";
    out << (all_pass() ? "all inert primes pass" : "VIOLATIONS FOUND") << '\n';
    return out.str();
}

NonDivisibilityReport non_divisibility_check(const LaurentSeries& F, long disc, long p_max) {
    if (F.prec() <= p_max)
        throw PrecisionExceeded("series window ends at " + std::to_string(F.prec()) +
                                    " but the sweep needs order " + std::to_string(p_max + 1),
                                p_max + 1);
    NonDivisibilityReport report{disc, p_max, {}};
    for (long p : odd_primes_upto(p_max)) {
        PrimeClass cls = classify_prime(disc, p);
        if (cls != PrimeClass::Inert) {
            report.entries.push_back({p, cls, std::nullopt, false, true});
            continue;
        }
        Valuation w = vp(F.coeff(p), p);
        bool pass = w.has_value() && *w < 3;
        report.entries.push_back({p, cls, w, true, pass});
    }
    return report;
}

Rational d_gamma(const LaurentSeries& F, const CMNewform& g, const PadicContext& ctx,
                 const Rational& gamma, long n) {
    if (n == 0) throw std::invalid_argument("d_gamma is undefined at n = 0");
    Rational value = F.coeff(n);
    if (n % ctx.p == 0) {
        long q = n / ctx.p;
        if (q >= 1) value -= gamma * Rational(g.coefficient(q));
    }
    return value;
}

const LimitRow& LimitReport::row(long m, long n) const {
    for (const auto& r : rows)
        if (r.m == m && r.n == n) return r;
    throw std::out_of_range("no limit row (m, n) = (" + std::to_string(m) + ", " +
                            std::to_string(n) + ")");
}

std::vector<Valuation> LimitReport::vp_column(long n) const {
    std::vector<Valuation> out;
    for (long m = 0; m <= m_max; ++m) out.push_back(row(m, n).vp_difference);
    return out;
}

ordered_json LimitReport::to_json() const {
    ordered_json rows_json = ordered_json::array();
    for (const auto& r : rows) {
        rows_json.push_back({{"m", r.m},
                             {"n", r.n},
                             {"lhs", fraction_string(r.lhs)},
                             {"target", fraction_string(r.target)},
                             {"vp_difference", valuation_json(r.vp_difference)}});
    }
    return ordered_json{{"p", p},
                        {"gamma", fraction_string(gamma)},
                        {"m_max", m_max},
                        {"n_max", n_max},
                        {"rows", rows_json}};
}

std::string LimitReport::table() const {
    std::ostringstream out;
    out << "v_p(lhs(m, n) - C_g(n)) for p = " << p << ", gamma = " << fraction_string(gamma)
        << '\n';
    out << std::setw(6) << "n \\ m";
    for (long m = 0; m <= m_max; ++m) out << std::setw(8) << m;
    out << '\n';
    for (long n = 1; n <= n_max; ++n) {
        out << std::setw(6) << n;
        for (long m = 0; m <= m_max; ++m)
            out << std::setw(8) << valuation_string(row(m, n).vp_difference);
        out << '\n';
    }
    return out.str();
}

LimitReport verify_limit(const LaurentSeries& F, const CMNewform& g, const PadicContext& ctx,
                         const Rational& gamma, long m_max, long n_max) {
    if (m_max < 0 || n_max < 1) throw std::invalid_argument("need m_max >= 0 and n_max >= 1");
    long needed = required_order_limit(ctx.p, m_max, n_max);
    if (F.prec() < needed)
        throw PrecisionExceeded("series window ends at " + std::to_string(F.prec()) +
                                    " but the limit check needs order " +
                                    std::to_string(needed),
                                needed);
    LimitReport report{ctx.p, gamma, m_max, n_max, {}};
    for (long m = 0; m <= m_max; ++m) {
        long e = odd_prime_power_long(ctx.p, m);
        Rational normalizer = d_gamma(F, g, ctx, gamma, e);
        if (normalizer == 0)
            throw ZeroNormalizer("d_gamma(p^" + std::to_string(2 * m + 1) +
                                     ") = 0: gamma equals the ratio r_" + std::to_string(m),
                                 m);
        for (long n = 1; n <= n_max; ++n) {
            Rational lhs = d_gamma(F, g, ctx, gamma, n * e) / normalizer;
            Rational target(g.coefficient(n));
            report.rows.push_back({m, n, lhs, target, vp(lhs - target, ctx.p)});
        }
    }
    return report;
}

bool AlphaReport::unit() const {
    Valuation v = vp(ratios.back(), p);
    return v.has_value() && *v == 0;
}

ordered_json AlphaReport::to_json() const {
    ordered_json ratios_json = ordered_json::array();
    for (const auto& r : ratios) ratios_json.push_back(fraction_string(r));
    ordered_json digits = ordered_json::array();
    for (const auto& [j, r] : residues)
        digits.push_back({{"modulus_exponent", j}, {"residue", r.get_str()}});
    return ordered_json{{"p", p},
                        {"m_max", m_max},
                        {"ratios", ratios_json},
                        {"residues", digits},
                        {"certified_depth",
                         certified_depth ? ordered_json(*certified_depth) : ordered_json("exact")},
                        {"heuristic", true},
                        {"unit", unit()}};
}

std::string AlphaReport::table() const {
    std::ostringstream out;
    out << "ratio sequence stabilization, p = " << p << " (heuristic depth: last three terms)\n";
    for (const auto& [j, r] : residues)
        out << "  limit = " << r.get_str() << "  (mod " << p << "^" << j << ")\n";
    if (residues.empty()) out << "  no stable digits across the last three terms\n";
    out << "  certified depth: "
        << (certified_depth ? std::to_string(*certified_depth) : std::string("exact"))
        << ", unit: " << (unit() ? "yes" : "no") << '\n';
    return out.str();
}

AlphaReport alpha_digits(const LaurentSeries& F, const PadicContext& ctx, long m_max) {
    if (m_max < 2)
        throw InsufficientDepth("digit stabilization needs m_max >= 2 (three ratio terms)");
    AlphaReport report;
    report.p = ctx.p;
    report.m_max = m_max;
    report.ratios = ratio_sequence(F, ctx, m_max);
    const Rational& last = report.ratios.back();

    std::optional<long> depth;
    bool any_finite = false;
    for (long back = 1; back <= 2; ++back) {
        Valuation t = vp(report.ratios[static_cast<std::size_t>(m_max - back)] - last, ctx.p);
        if (t) {
            any_finite = true;
            depth = depth ? std::min(*depth, std::max<long>(0, *t)) : std::max<long>(0, *t);
        }
    }
    if (any_finite)
        report.certified_depth = depth;
    else
        report.certified_depth = std::nullopt;  // last three terms identical

    long j_max = report.certified_depth ? *report.certified_depth : 8;
    for (long j = 1; j <= j_max; ++j)
        report.residues.emplace_back(j, mod_prime_power(last, ctx.p, j));
    return report;
}

}  // namespace qshadow
