#include "superhaar/json_io.hpp"

namespace superhaar {

namespace {
json rational_json(const mpq_class& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}
mpq_class rational_from(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  mpq_class q(mpz_class(j.at("num").get<std::string>()), mpz_class(j.at("den").get<std::string>()));
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}
}  // namespace

json scalar_json(const Q& q) { return json{{"re", rational_json(q.re)}, {"im", rational_json(q.im)}}; }
json scalar_json(const C& c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

json to_json(const Q& q) { return scalar_json(q); }
json to_json(const C& c) { return scalar_json(c); }

void from_json_value(const json& j, Q& out) {
  out = Q(rational_from(j.at("re")), j.contains("im") ? rational_from(j.at("im")) : mpq_class(0));
}

void from_json_value(const json& j, C& out) {
  out = C(j.at("re").get<double>(), j.contains("im") ? j.at("im").get<double>() : 0.0);
}

}  // namespace superhaar
