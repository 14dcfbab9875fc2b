#pragma once

#include <string>
#include <string_view>

#include "groverpt/exppoly.hpp"
#include "groverpt/series.hpp"

namespace groverpt {

/// {"cap": N, "coeffs": ["num/den", ...]} with cap+1 exact rational strings;
/// the round trip is bit-exact.
std::string series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(std::string_view text);

/// [{"omega": w, "power": a, "re": "num/den", "im": "num/den"}, ...]
std::string exppoly_to_json(const ExpPoly& p);
ExpPoly exppoly_from_json(std::string_view text);

/// Shortest decimal representation that parses back to exactly this double.
std::string format_double(double v);

}  // namespace groverpt
