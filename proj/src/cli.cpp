#include "qshadow/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qshadow/eta.hpp"
#include "qshadow/newforms.hpp"
#include "qshadow/padic.hpp"
#include "qshadow/pairing.hpp"
#include "qshadow/series_io.hpp"

namespace qshadow {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0, kFail = 1, kError = 2;

struct CommandResult {
    int exit_code = kOk;
    ordered_json payload;
    std::string table;
};

struct Output {
    std::ostream& out;
    std::ostream& err;
    bool json = false;

    int emit(const CommandResult& r) const {
        if (json)
            out << r.payload.dump(2) << '\n';
        else
            out << r.table;
        return r.exit_code;
    }

    int fail_with(const Error& e, long required_order = 0) const {
        err << "error: " << e.what() << '\n';
        if (required_order > 0)
            err << "required series order: " << required_order << '\n';
        if (json) {
            ordered_json doc{{"status", "error"}, {"message", e.what()}};
            if (required_order > 0) doc["required_order"] = required_order;
            out << doc.dump(2) << '\n';
        }
        return kError;
    }
};

const char* status_name(int code) {
    return code == kOk ? "ok" : code == kFail ? "fail" : "error";
}

// The built-in generator exists for 9.4 only; every other form needs a
// user-supplied series file. order_override can only enlarge the window.
LaurentSeries obtain_generator(const CMNewform& form, long required_order,
                               const std::string& series_path, long order_override,
                               std::ostream& err) {
    if (!series_path.empty()) {
        LaurentSeries s = load_series(series_path);
        if (s.prec() < required_order)
            throw PrecisionExceeded("series file '" + series_path + "' has window up to " +
                                        std::to_string(s.prec()) + " but order " +
                                        std::to_string(required_order) + " is needed",
                                    required_order);
        return s;
    }
    if (form.label() != "9.4")
        throw Error("no built-in generator for form " + form.label() +
                    "; supply one with --series");
    long order = std::max(required_order, std::max(order_override, 2L));
    if (order > 20000)
        err << "expanding the 9.4 generator to order " << order << " ..." << std::endl;
    LaurentSeries s = build_generator_9_4(order);
    if (order > 20000) err << "expansion done" << std::endl;
    return s;
}

std::string prime_annotation(long n, long disc) {
    if (!is_prime(n)) return "";
    return prime_class_name(classify_prime(disc, n));
}

int cmd_eta_expand(const Output& io, const std::string& quotient_text, long order,
                   const std::string& out_path) {
    EtaQuotient quotient = EtaQuotient::parse(quotient_text);
    LaurentSeries series = quotient.expand(order);
    if (!out_path.empty()) save_series(out_path, series);

    CommandResult r;
    r.payload = ordered_json{{"status", "ok"},
                             {"command", "eta-expand"},
                             {"quotient", quotient.str()},
                             {"order", order},
                             {"series", series_to_json(series)}};
    std::ostringstream t;
    t << "eta quotient " << quotient.str() << " on [" << series.min_exp() << ", "
      << series.prec() << ")\n  " << pretty(series) << '\n';
    if (!out_path.empty()) t << "written to " << out_path << '\n';
    r.table = t.str();
    return io.emit(r);
}

int cmd_newform(const Output& io, const std::string& label, long order,
                const std::string& out_path, bool use_cache) {
    const CMNewform& form = form_by_label(label);

    std::optional<long> cached_prec;
    std::filesystem::path cache_file;
    if (use_cache) {
        const char* dir = std::getenv("QSHADOW_CACHE_DIR");
        if (dir == nullptr || *dir == '\0')
            throw Error("--cache needs the QSHADOW_CACHE_DIR environment variable");
        std::filesystem::create_directories(dir);
        cache_file = std::filesystem::path(dir) / (label + ".coeffs.json");
        if (std::filesystem::exists(cache_file)) {
            LaurentSeries cached = load_series(cache_file);
            form.preload_coefficients(cached);
            cached_prec = cached.prec();
        }
    }

    LaurentSeries series = form.q_expansion(order);
    if (use_cache && (!cached_prec || *cached_prec < series.prec()))
        save_series(cache_file, series);
    if (!out_path.empty()) save_series(out_path, series);

    CommandResult r;
    r.payload = ordered_json{{"status", "ok"},
                             {"command", "newform"},
                             {"form", label},
                             {"weight", form.weight()},
                             {"level", form.level()},
                             {"cm_discriminant", form.cm_discriminant()},
                             {"order", order},
                             {"series", series_to_json(series)}};
    std::ostringstream t;
    t << "newform " << label << " (weight " << form.weight() << ", level " << form.level()
      << ", CM discriminant " << form.cm_discriminant() << ")\n";
    t << std::setw(8) << "n" << std::setw(16) << "a_n" << "  prime class\n";
    for (long n = 1; n < order; ++n) {
        t << std::setw(8) << n << std::setw(16) << form.coefficient(n).get_str() << "  "
          << prime_annotation(n, form.cm_discriminant()) << '\n';
    }
    r.table = t.str();
    return io.emit(r);
}

int cmd_classify(const Output& io, long p, const std::string& form_label, long disc) {
    if (!is_prime(p)) throw Error("p = " + std::to_string(p) + " is not prime");
    if (!form_label.empty()) disc = form_by_label(form_label).cm_discriminant();
    if (disc >= 0) throw Error("need --form or a negative --disc");
    PrimeClass cls = classify_prime(disc, p);

    CommandResult r;
    r.payload = ordered_json{{"status", "ok"},
                             {"command", "classify-prime"},
                             {"p", p},
                             {"discriminant", disc},
                             {"class", prime_class_name(cls)}};
    std::ostringstream t;
    t << "p = " << p << " is " << prime_class_name(cls) << " for discriminant " << disc
      << '\n';
    r.table = t.str();
    return io.emit(r);
}

int cmd_verify_hanson(const Output& io, const CMNewform& form, const std::string& series_path,
                      long p, long m_max, long order_override) {
    PadicContext ctx = PadicContext::for_form(form, p);
    LaurentSeries F = obtain_generator(form, required_order_power(p, m_max), series_path,
                                       order_override, io.err);
    ValuationReport report = verify_valuation_law(F, ctx, m_max);

    CommandResult r;
    r.exit_code = report.all_pass() ? kOk : kFail;
    r.payload = ordered_json{{"status", status_name(r.exit_code)},
                             {"command", "verify hanson"},
                             {"form", form.label()},
                             {"p", p},
                             {"m_max", m_max},
                             {"report", report.to_json()}};
    std::ostringstream t;
    t << "valuation law v_p(C_F(p^(2m+1))) = (k-1)m for " << form.label() << ", p = " << p
      << '\n'
      << report.table() << (report.all_pass() ? "PASS" : "FAIL") << '\n';
    r.table = t.str();
    return io.emit(r);
}

int cmd_verify_hj(const Output& io, const CMNewform& form, const std::string& series_path,
                  long p_max, long order_override) {
    LaurentSeries F =
        obtain_generator(form, p_max + 1, series_path, order_override, io.err);
    NonDivisibilityReport report =
        non_divisibility_check(F, form.cm_discriminant(), p_max);

    CommandResult r;
    r.exit_code = report.all_pass() ? kOk : kFail;
    r.payload = ordered_json{{"status", status_name(r.exit_code)},
                             {"command", "verify hj"},
                             {"form", form.label()},
                             {"p_max", p_max},
                             {"report", report.to_json()}};
    std::ostringstream t;
    t << "non-divisibility p^3 does not divide C_F(p), form " << form.label() << '\n'
      << report.table() << (report.all_pass() ? "PASS" : "FAIL") << '\n';
    r.table = t.str();
    return io.emit(r);
}

int cmd_verify_limit(const Output& io, const CMNewform& form, const std::string& series_path,
                     long p, const std::string& gamma_text, long m_max, long n_max,
                     long order_override) {
    PadicContext ctx = PadicContext::for_form(form, p);
    Rational gamma = parse_rational(gamma_text);
    LaurentSeries F = obtain_generator(form, required_order_limit(p, m_max, n_max),
                                       series_path, order_override, io.err);
    LimitReport report = verify_limit(F, form, ctx, gamma, m_max, n_max);

    // the limit check passes when every column's valuation never decreases
    bool monotone = true;
    for (long n = 1; n <= n_max; ++n) {
        auto col = report.vp_column(n);
        for (std::size_t i = 1; i < col.size(); ++i) {
            // infinity (exact hit) never decreases to a finite value
            if (col[i - 1] && (!col[i] || *col[i] >= *col[i - 1])) continue;
            if (!col[i - 1] && !col[i]) continue;
            monotone = false;
        }
    }

    CommandResult r;
    r.exit_code = monotone ? kOk : kFail;
    r.payload = ordered_json{{"status", status_name(r.exit_code)},
                             {"command", "verify limit"},
                             {"form", form.label()},
                             {"monotone", monotone},
                             {"report", report.to_json()}};
    std::ostringstream t;
    t << "normalized U(p^(2m+1)) slices against the form's coefficients\n"
      << report.table() << (monotone ? "PASS (valuations nondecreasing)" : "FAIL") << '\n';
    r.table = t.str();
    return io.emit(r);
}

int cmd_verify_alpha(const Output& io, const CMNewform& form, const std::string& series_path,
                     long p, long m_max, long order_override) {
    PadicContext ctx = PadicContext::for_form(form, p);
    LaurentSeries F = obtain_generator(form, required_order_power(p, m_max), series_path,
                                       order_override, io.err);
    ValuationReport report = verify_unit_ratios(F, ctx, m_max);

    CommandResult r;
    r.exit_code = report.all_pass() ? kOk : kFail;
    r.payload = ordered_json{{"status", status_name(r.exit_code)},
                             {"command", "verify alpha"},
                             {"form", form.label()},
                             {"p", p},
                             {"m_max", m_max},
                             {"report", report.to_json()}};
    std::ostringstream t;
    t << "unit property v_p(r_m) = 0 for " << form.label() << ", p = " << p << '\n'
      << report.table() << (report.all_pass() ? "PASS" : "FAIL") << '\n';
    r.table = t.str();
    return io.emit(r);
}

int cmd_verify_pairing(const Output& io, const CMNewform& form,
                       const std::string& series_path, long order_override) {
    LaurentSeries F = obtain_generator(form, 2, series_path, order_override, io.err);
    long g_order = 2;
    for (const auto& [e, c] : F.terms()) {
        if (e >= 0) break;
        g_order = std::max(g_order, -e + 1);
    }
    LaurentSeries g = form.q_expansion(g_order);
    PairingValue value = pair_series(F, g, form.weight());
    bool pass = value.value == 1;

    CommandResult r;
    r.exit_code = pass ? kOk : kFail;
    r.payload = ordered_json{{"status", status_name(r.exit_code)},
                             {"command", "verify pairing"},
                             {"form", form.label()},
                             {"value", fraction_string(value.value)},
                             {"expected", "1/1"}};
    std::ostringstream t;
    t << "<F, g> = " << fraction_string(value.value) << " (decimal "
      << value.value.get_d() << ") for form " << form.label() << '\n'
      << (pass ? "PASS" : "FAIL") << '\n';
    r.table = t.str();
    return io.emit(r);
}

int cmd_alpha(const Output& io, const CMNewform& form, const std::string& series_path, long p,
              long m_max, long order_override) {
    PadicContext ctx = PadicContext::for_form(form, p);
    LaurentSeries F = obtain_generator(form, required_order_power(p, m_max), series_path,
                                       order_override, io.err);
    AlphaReport report = alpha_digits(F, ctx, m_max);

    CommandResult r;
    r.payload = ordered_json{{"status", "ok"},
                             {"command", "alpha"},
                             {"form", form.label()},
                             {"report", report.to_json()}};
    r.table = report.table();
    return io.emit(r);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact q-series toolkit: eta quotients, CM newforms and p-adic limits"};
    app.require_subcommand(1);

    // shared option storage
    std::string quotient_text, form_label = "9.4", series_path, out_path, gamma_text = "0";
    long order = 16, p = 5, m_max = 2, n_max = 10, p_max = 2000, disc = 0;
    bool json = false, use_cache = false;

    auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", json, "emit a JSON payload"); };
    auto add_series = [&](CLI::App* cmd) {
        cmd->add_option("--series", series_path,
                        "user-supplied generator series file (.json or .csv)");
        cmd->add_option("--order", order, "minimum expansion order for the built-in generator");
    };

    CLI::App* eta = app.add_subcommand("eta-expand", "expand an eta quotient exactly");
    eta->add_option("quotient", quotient_text, "whitespace-separated delta^power tokens")
        ->required();
    eta->add_option("--order", order, "exclusive upper exponent bound")->required();
    eta->add_option("--out", out_path, "write the series to a file");
    add_json(eta);

    CLI::App* nf = app.add_subcommand("newform", "q-expansion of a catalogued CM newform");
    nf->add_option("id", form_label, "form identifier: 27.2 32.2 36.2 49.2 9.4")->required();
    nf->add_option("--order", order, "exclusive upper exponent bound")->required();
    nf->add_option("--out", out_path, "write the series to a file");
    nf->add_flag("--cache", use_cache, "persist coefficients under QSHADOW_CACHE_DIR");
    add_json(nf);

    CLI::App* cls = app.add_subcommand("classify-prime", "inert / split / ramified");
    cls->add_option("--p", p, "prime to classify")->required();
    cls->add_option("--form", form_label, "classify against this form's CM field");
    cls->add_option("--disc", disc, "or an explicit negative field discriminant");
    add_json(cls);

    CLI::App* verify = app.add_subcommand("verify", "run a verification");
    verify->require_subcommand(1);

    CLI::App* hanson = verify->add_subcommand(
        "hanson", "valuation law v_p(C_F(p^(2m+1))) = (k-1)m at an inert prime");
    hanson->add_option("--form", form_label);
    hanson->add_option("--p", p)->required();
    hanson->add_option("--m-max", m_max)->required();
    add_series(hanson);
    add_json(hanson);

    CLI::App* hj = verify->add_subcommand(
        "hj", "non-divisibility p^3 does not divide C_F(p) for odd inert p <= p-max");
    hj->add_option("--form", form_label);
    hj->add_option("--p-max", p_max)->required();
    add_series(hj);
    add_json(hj);

    CLI::App* limit = verify->add_subcommand(
        "limit", "U(p^(2m+1)) slices of F - gamma*(g|V(p)) recover the form's coefficients");
    limit->add_option("--form", form_label);
    limit->add_option("--p", p)->required();
    limit->add_option("--gamma", gamma_text, "rational a/b");
    limit->add_option("--m-max", m_max)->required();
    limit->add_option("--n-max", n_max);
    add_series(limit);
    add_json(limit);

    CLI::App* valpha = verify->add_subcommand(
        "alpha", "each ratio r_m = C_F(p^(2m+1))/(-p^(k-1))^m is a p-adic unit");
    valpha->add_option("--form", form_label);
    valpha->add_option("--p", p)->required();
    valpha->add_option("--m-max", m_max)->required();
    add_series(valpha);
    add_json(valpha);

    CLI::App* pairing = verify->add_subcommand(
        "pairing", "principal-part pairing <F, g> equals 1 exactly");
    pairing->add_option("--form", form_label);
    add_series(pairing);
    add_json(pairing);

    CLI::App* alpha = app.add_subcommand(
        "alpha", "stabilized p-adic digits of the limit of the ratio sequence");
    alpha->add_option("--form", form_label);
    alpha->add_option("--p", p)->required();
    alpha->add_option("--m-max", m_max, "depth; needs >= 2");
    add_series(alpha);
    add_json(alpha);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << '\n';
        return kError;
    }

    Output io{out, err, json};
    try {
        if (eta->parsed()) return cmd_eta_expand(io, quotient_text, order, out_path);
        if (nf->parsed()) return cmd_newform(io, form_label, order, out_path, use_cache);
        if (cls->parsed()) return cmd_classify(io, p, cls->count("--form") ? form_label : "",
                                               disc);
        if (hanson->parsed())
            return cmd_verify_hanson(io, form_by_label(form_label), series_path, p, m_max,
                                     order);
        if (hj->parsed())
            return cmd_verify_hj(io, form_by_label(form_label), series_path, p_max, order);
        if (limit->parsed())
            return cmd_verify_limit(io, form_by_label(form_label), series_path, p, gamma_text,
                                    m_max, n_max, order);
        if (valpha->parsed())
            return cmd_verify_alpha(io, form_by_label(form_label), series_path, p, m_max,
                                    order);
        if (pairing->parsed())
            return cmd_verify_pairing(io, form_by_label(form_label), series_path, order);
        if (alpha->parsed())
            return cmd_alpha(io, form_by_label(form_label), series_path, p, m_max, order);
        err << "error: no command\n";
        return kError;
    } catch (const PrecisionExceeded& e) {
        return io.fail_with(e, e.required_order);
    } catch (const Error& e) {
        return io.fail_with(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        if (json) {
            ordered_json doc{{"status", "error"}, {"message", e.what()}};
            out << doc.dump(2) << '\n';
        }
        return kError;
    }
}

}  // namespace qshadow
