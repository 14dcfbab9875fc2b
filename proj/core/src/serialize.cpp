#include "groverpt/serialize.hpp"

#include <charconv>
#include <system_error>

#include <json.hpp>

namespace groverpt {

std::string series_to_json(const TruncatedSeries& s) {
  nlohmann::json j;
  j["cap"] = s.cap();
  nlohmann::json coeffs = nlohmann::json::array();
  for (int i = 0; i <= s.cap(); ++i) coeffs.push_back(s.coeff(i).to_string());
  j["coeffs"] = std::move(coeffs);
  return j.dump();
}

TruncatedSeries series_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const int cap = j.at("cap").get<int>();
  const auto& coeffs = j.at("coeffs");
  if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != cap + 1)
    throw std::invalid_argument("series_from_json: coeffs length must be cap+1");
  TruncatedSeries s(cap);
  for (int i = 0; i <= cap; ++i)
    s.set_coeff(i, Rational::from_string(coeffs[static_cast<size_t>(i)].get<std::string>()));
  return s;
}

std::string exppoly_to_json(const ExpPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [key, c] : p.terms()) {
    nlohmann::json t;
    t["omega"] = key.first;
    t["power"] = key.second;
    t["re"] = c.re.to_string();
    t["im"] = c.im.to_string();
    arr.push_back(std::move(t));
  }
  return arr.dump();
}

ExpPoly exppoly_from_json(std::string_view text) {
  const nlohmann::json arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("exppoly_from_json: expected an array");
  ExpPoly p;
  for (const auto& t : arr) {
    p.add_term(t.at("omega").get<int>(), t.at("power").get<int>(),
               GaussianRational(Rational::from_string(t.at("re").get<std::string>()),
                                Rational::from_string(t.at("im").get<std::string>())));
  }
  return p;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, res.ptr);
}

}  // namespace groverpt
