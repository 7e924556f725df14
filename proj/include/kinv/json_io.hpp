#pragma once

// JSON encoding of the exact types. Integers travel as decimal strings so
// that nothing is lost to double conversion:
//   polynomial  := [[exponent-tuple, numerator, denominator], ...]
//   series      := {"valid_order": n | "exact", "coefficients": [polynomial, ...]}
// Terms are emitted in ascending exponent order, so output is byte-stable.

#include <string>
#include <vector>

#include <json.hpp>

#include "kinv/poly.hpp"
#include "kinv/series.hpp"

namespace kinv {

using json = nlohmann::json;

inline json q_to_json_pair(const Q& q) {
  return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

template <class V>
json to_json(const Poly<V>& p) {
  json out = json::array();
  for (const auto& t : p.terms()) {
    json e = json::array();
    for (int x : t.e) e.push_back(x);
    out.push_back(json::array({e, t.c.get_num().get_str(), t.c.get_den().get_str()}));
  }
  return out;
}

inline json to_json(const Q& q) {
  json out = json::array();
  if (!is_zero(q)) out.push_back(json::array({json::array(), q.get_num().get_str(), q.get_den().get_str()}));
  return out;
}

template <class C>
json to_json(const Series<C>& s) {
  json coeffs = json::array();
  for (int i = 0; i < s.stored(); ++i) coeffs.push_back(to_json(s.ref(i)));
  json out;
  out["coefficients"] = coeffs;
  if (s.is_exact())
    out["valid_order"] = "exact";
  else
    out["valid_order"] = s.order();
  return out;
}

template <class V>
Poly<V> poly_from_json(const json& j) {
  std::vector<typename Poly<V>::Term> terms;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 3) throw ArithmeticError("malformed polynomial term");
    const auto& e = entry[0];
    if (e.size() != V::count) throw ArithmeticError("polynomial term has wrong arity");
    typename Poly<V>::Exps ex;
    for (std::size_t i = 0; i < V::count; ++i) ex[i] = e[i].get<int>();
    terms.push_back({ex, q_from_strings(entry[1].get<std::string>(), entry[2].get<std::string>())});
  }
  return Poly<V>::from_terms(std::move(terms));
}

template <class V>
Series<Poly<V>> series_from_json(const json& j) {
  int order = kExact;
  if (j.at("valid_order").is_number_integer()) order = j.at("valid_order").get<int>();
  std::vector<Poly<V>> coeffs;
  for (const auto& c : j.at("coefficients")) coeffs.push_back(poly_from_json<V>(c));
  return Series<Poly<V>>::from_coeffs(std::move(coeffs), order);
}

}  // namespace kinv
