#ifndef QSHADOW_SERIES_IO_HPP
#define QSHADOW_SERIES_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qshadow/laurent_series.hpp"

namespace qshadow {

// Interchange formats. JSON:
//   {"min_exp": -1, "prec": 10, "coeffs": {"-1": "-1/1", "2": "-2/1", ...}}
// with exponents as decimal keys and coefficients as num/den strings.
// CSV: header `n,numerator,denominator`, one row per exponent of the window
// (zero rows included so the window round-trips losslessly).

nlohmann::ordered_json series_to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const nlohmann::json& doc);  // ParseError on bad input

std::string series_to_csv(const LaurentSeries& s);
LaurentSeries series_from_csv(std::istream& in);

// Dispatch on extension: .json or .csv.
void save_series(const std::filesystem::path& path, const LaurentSeries& s);
LaurentSeries load_series(const std::filesystem::path& path);

// Human-readable leading terms, e.g. "-q^-1 - 2*q^2 + 49*q^5 + O(q^10)".
std::string pretty(const LaurentSeries& s, std::size_t max_terms = 12);

}  // namespace qshadow

#endif
