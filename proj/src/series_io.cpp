#include "qshadow/series_io.hpp"

#include <fstream>
#include <sstream>

namespace qshadow {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

long parse_exponent(const std::string& key) {
    try {
        std::size_t pos = 0;
        long e = std::stol(key, &pos);
        if (pos != key.size()) throw ParseError("bad exponent key '" + key + "'");
        return e;
    } catch (const std::logic_error&) {
        throw ParseError("bad exponent key '" + key + "'");
    }
}

}  // namespace

ordered_json series_to_json(const LaurentSeries& s) {
    ordered_json doc;
    doc["min_exp"] = s.min_exp();
    doc["prec"] = s.prec();
    ordered_json coeffs = ordered_json::object();
    for (const auto& [e, c] : s.terms()) coeffs[std::to_string(e)] = fraction_string(c);
    doc["coeffs"] = std::move(coeffs);
    return doc;
}

LaurentSeries series_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("min_exp") || !doc.contains("prec") ||
        !doc.contains("coeffs"))
        throw ParseError("series document needs min_exp, prec and coeffs");
    if (!doc["min_exp"].is_number_integer() || !doc["prec"].is_number_integer())
        throw ParseError("min_exp and prec must be integers");
    long min_exp = doc["min_exp"].get<long>();
    long prec = doc["prec"].get<long>();
    if (min_exp >= prec) throw ParseError("empty window: min_exp >= prec");
    if (!doc["coeffs"].is_object()) throw ParseError("coeffs must be an object");
    LaurentSeries::CoeffMap m;
    for (const auto& [key, val] : doc["coeffs"].items()) {
        long e = parse_exponent(key);
        if (e < min_exp || e >= prec)
            throw ParseError("coefficient exponent " + key + " outside window");
        if (!val.is_string()) throw ParseError("coefficient at " + key + " must be a string");
        m[e] = parse_rational(val.get<std::string>());
    }
    return LaurentSeries(min_exp, prec, std::move(m));
}

std::string series_to_csv(const LaurentSeries& s) {
    std::ostringstream out;
    out << "n,numerator,denominator\n";
    for (long n = s.min_exp(); n < s.prec(); ++n) {
        const Rational& c = s.at(n);
        out << n << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
    }
    return out.str();
}

LaurentSeries series_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV document");
    // tolerate trailing \r from foreign line endings
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "n,numerator,denominator")
        throw ParseError("CSV header must be 'n,numerator,denominator'");
    LaurentSeries::CoeffMap m;
    bool have_row = false;
    long lo = 0, hi = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string n_s, num_s, den_s;
        if (!std::getline(row, n_s, ',') || !std::getline(row, num_s, ',') ||
            !std::getline(row, den_s))
            throw ParseError("malformed CSV row: '" + line + "'");
        long e = parse_exponent(n_s);
        Rational c = parse_rational(num_s + "/" + den_s);
        if (!have_row) {
            lo = hi = e;
            have_row = true;
        }
        lo = std::min(lo, e);
        hi = std::max(hi, e);
        if (c != 0) m[e] = c;
    }
    if (!have_row) throw ParseError("CSV document has no coefficient rows");
    return LaurentSeries(lo, hi + 1, std::move(m));
}

void save_series(const std::filesystem::path& path, const LaurentSeries& s) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    if (path.extension() == ".csv") {
        out << series_to_csv(s);
    } else {
        out << series_to_json(s).dump(2) << '\n';
    }
}

std::string pretty(const LaurentSeries& s, std::size_t max_terms) {
    std::ostringstream out;
    std::size_t shown = 0;
    for (const auto& [e, c] : s.terms()) {
        if (shown == max_terms) {
            out << " + ...";
            break;
        }
        Rational abs_c = c < 0 ? Rational(-c) : c;
        if (shown == 0)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        std::string mag = abs_c.get_den() == 1 ? abs_c.get_num().get_str()
                                               : fraction_string(abs_c);
        if (e == 0) {
            out << mag;
        } else {
            if (mag != "1") out << mag << "*";
            out << "q";
            if (e != 1) out << "^" << e;
        }
        ++shown;
    }
    if (shown == 0) out << "0";
    out << " + O(q^" << s.prec() << ")";
    return out.str();
}

LaurentSeries load_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    if (path.extension() == ".csv") return series_from_csv(in);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
    }
    return series_from_json(doc);
}

}  // namespace qshadow
