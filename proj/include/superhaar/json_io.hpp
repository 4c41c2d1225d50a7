#pragma once

#include <json.hpp>

#include "superhaar/grassmann.hpp"

namespace superhaar {

using json = nlohmann::json;

json to_json(const Q& q);
json to_json(const C& c);
void from_json_value(const json& j, Q& out);
void from_json_value(const json& j, C& out);

// {"re": ..., "im": ...} with rationals as {"num": "..", "den": ".."}.
json scalar_json(const Q& q);
json scalar_json(const C& c);

template <class T>
json to_json(const Grassmann<T>& g) {
  json terms = json::array();
  for (const auto& [b, c] : g.terms()) {
    json t = scalar_json(c);
    json idx = json::array();
    for (int i = 1; i <= g.num_generators(); ++i)
      if (b & generator_bit(i)) idx.push_back(i);
    t["blade"] = idx;
    terms.push_back(std::move(t));
  }
  return json{{"N", g.num_generators()}, {"terms", terms}};
}

template <class T>
Grassmann<T> grassmann_from_json(const json& j) {
  const int n = j.at("N").get<int>();
  std::vector<typename Grassmann<T>::Term> terms;
  for (const auto& t : j.at("terms")) {
    Blade b = 0;
    for (const auto& i : t.at("blade")) {
      const int k = i.get<int>();
      if (k < 1 || k > n) throw std::out_of_range("blade index out of range");
      b |= generator_bit(k);
    }
    T c;
    from_json_value(t, c);
    terms.emplace_back(b, c);
  }
  return Grassmann<T>::from_terms(n, std::move(terms));
}

}  // namespace superhaar
