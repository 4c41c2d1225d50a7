#include "superhaar/symbols.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "superhaar/json_io.hpp"

namespace superhaar {

int Alphabet::id(const Symbol& s) const {
  if (s.i < 0 || s.j < 0 || s.i >= d_ || s.j >= d_) throw std::out_of_range("symbol index out of range");
  if (s.star && !star_) throw std::invalid_argument("Xs symbols are only defined for U(p|q)");
  return (s.star ? d_ * d_ : 0) + s.i * d_ + s.j;
}

std::string Alphabet::name(int id) const {
  Symbol s = symbol(id);
  return std::string(s.star ? "Xs[" : "X[") + std::to_string(s.i + 1) + "," + std::to_string(s.j + 1) + "]";
}

std::pair<int, Monomial> normalize(const Alphabet& alpha, const std::vector<int>& sequence) {
  std::vector<int> seq = sequence;
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = 0; j + 1 < seq.size() - i; ++j)
      if (seq[j] > seq[j + 1]) {
        if (alpha.parity(seq[j]) && alpha.parity(seq[j + 1])) sign = -sign;
        std::swap(seq[j], seq[j + 1]);
      }
  Monomial m(alpha.size(), 0);
  for (int id : seq) {
    if (id < 0 || id >= alpha.size()) throw std::out_of_range("symbol id out of range");
    if (alpha.parity(id) && m[id]) return {0, {}};
    if (m[id] == 255) throw std::overflow_error("exponent too large");
    ++m[id];
  }
  return {sign, m};
}

int monomial_product_sign(const Alphabet& alpha, const Monomial& a, const Monomial& b) {
  int inversions = 0, odd_in_a_after = 0;
  // count pairs (u in a, v in b) of odd symbols with u > v
  for (int id = alpha.size() - 1; id >= 0; --id) {
    if (!alpha.parity(id)) continue;
    const int ea = id < int(a.size()) ? a[id] : 0;
    const int eb = id < int(b.size()) ? b[id] : 0;
    if (ea && eb) return 0;
    if (eb) inversions += odd_in_a_after;
    if (ea) ++odd_in_a_after;
  }
  return inversions % 2 ? -1 : 1;
}

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

int monomial_parity(const Alphabet& alpha, const Monomial& m) {
  int p = 0;
  for (std::size_t id = 0; id < m.size(); ++id)
    if (alpha.parity(int(id))) p += m[id];
  return p % 2;
}

std::vector<int> monomial_sequence(const Monomial& m) {
  std::vector<int> s;
  for (std::size_t id = 0; id < m.size(); ++id)
    for (int e = 0; e < m[id]; ++e) s.push_back(int(id));
  return s;
}

SuperPolynomial SuperPolynomial::constant(const GroupSpec& spec, const Q& c) {
  SuperPolynomial p(spec);
  p.add_term(Monomial(p.alpha_.size(), 0), c);
  return p;
}

SuperPolynomial SuperPolynomial::symbol(const GroupSpec& spec, const Symbol& s) {
  SuperPolynomial p(spec);
  return from_sequence(spec, {p.alpha_.id(s)}, Q(1));
}

SuperPolynomial SuperPolynomial::from_sequence(const GroupSpec& spec, const std::vector<int>& ids, const Q& c) {
  SuperPolynomial p(spec);
  auto [sign, m] = normalize(p.alpha_, ids);
  if (sign) p.add_term(m, sign < 0 ? -c : c);
  return p;
}

int SuperPolynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, monomial_degree(t.first));
  return d;
}

int SuperPolynomial::parity() const {
  int p = -1;
  for (const auto& t : terms_) {
    const int q = monomial_parity(alpha_, t.first);
    if (p >= 0 && p != q) throw std::domain_error("polynomial is not homogeneous");
    p = q;
  }
  return p < 0 ? 0 : p;
}

void SuperPolynomial::add_term(const Monomial& m, const Q& c) {
  if (int(m.size()) != alpha_.size()) throw std::invalid_argument("monomial length mismatch");
  if (superhaar::is_zero(c)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (superhaar::is_zero(it->second)) terms_.erase(it);
}

SuperPolynomial SuperPolynomial::operator-() const {
  SuperPolynomial r(*this);
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

SuperPolynomial operator+(const SuperPolynomial& a, const SuperPolynomial& b) {
  if (!(a.alpha_ == b.alpha_)) throw std::invalid_argument("alphabet mismatch");
  SuperPolynomial r(a);
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

SuperPolynomial operator-(const SuperPolynomial& a, const SuperPolynomial& b) { return a + (-b); }

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
  if (!(a.alpha_ == b.alpha_)) throw std::invalid_argument("alphabet mismatch");
  SuperPolynomial r(a.spec());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      const int s = monomial_product_sign(a.alpha_, ma, mb);
      if (!s) continue;
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::uint8_t(ma[i] + mb[i]);
      Q c = ca * cb;
      r.add_term(m, s < 0 ? -c : c);
    }
  return r;
}

SuperPolynomial operator*(const SuperPolynomial& a, const Q& c) {
  SuperPolynomial r(a.spec());
  for (const auto& [m, v] : a.terms_) r.add_term(m, v * c);
  return r;
}

std::string SuperPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool empty = std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; });
    bool sep = !(c == Q(1)) || empty;
    if (sep) os << "(" << c << ")";
    for (std::size_t id = 0; id < m.size(); ++id) {
      if (!m[id]) continue;
      if (sep) os << "*";
      sep = true;
      os << alpha_.name(int(id));
      if (m[id] > 1) os << "^" << int(m[id]);
    }
  }
  return os.str();
}

SuperPolynomial parse_monomial(const GroupSpec& spec, const std::string& text) {
  static const std::regex sym(R"(^(Xs|X)\[\s*(\d+)\s*,\s*(\d+)\s*\](?:\s*\^\s*(\d+))?$)");
  static const std::regex num(R"(^([+-]?\d+)(?:/(\d+))?$)");
  Alphabet alpha(spec);
  std::vector<int> seq;
  Q coeff(1);
  std::string body = text;
  body.erase(0, body.find_first_not_of(" \t"));
  if (!body.empty() && body[0] == '-') {
    coeff = Q(-1);
    body.erase(0, 1);
  }
  std::stringstream ss(body);
  std::string factor;
  bool any = false;
  while (std::getline(ss, factor, '*')) {
    const auto a = factor.find_first_not_of(" \t"), b = factor.find_last_not_of(" \t");
    if (a == std::string::npos) throw std::invalid_argument("empty factor in monomial '" + text + "'");
    factor = factor.substr(a, b - a + 1);
    any = true;
    std::smatch m;
    if (factor == "1") continue;
    if (factor == "i") {
      coeff *= Q::unit_i();
    } else if (std::regex_match(factor, m, sym)) {
      const int i = std::stoi(m[2]) - 1, j = std::stoi(m[3]) - 1;
      const int e = m[4].matched ? std::stoi(m[4]) : 1;
      const int id = alpha.id({m[1] == "Xs", i, j});
      for (int k = 0; k < e; ++k) seq.push_back(id);
    } else if (std::regex_match(factor, m, num)) {
      const long n = std::stol(m[1]), d = m[2].matched ? std::stol(m[2]) : 1;
      if (d == 0) throw std::invalid_argument("zero denominator in monomial");
      coeff *= Q::frac(n, d);
    } else {
      throw std::invalid_argument("cannot parse factor '" + factor + "'");
    }
  }
  if (!any) throw std::invalid_argument("empty monomial");
  return SuperPolynomial::from_sequence(spec, seq, coeff);
}

std::vector<Monomial> monomials_up_to(const Alphabet& alpha, int d) {
  std::vector<Monomial> out;
  Monomial m(alpha.size(), 0);
  std::vector<int> ids(alpha.size());
  for (int i = 0; i < alpha.size(); ++i) ids[i] = i;
  auto rec = [&](auto&& self, int id, int left) -> void {
    if (id == alpha.size()) {
      out.push_back(m);
      return;
    }
    const int cap = alpha.parity(id) ? std::min(1, left) : left;
    for (int e = 0; e <= cap; ++e) {
      m[id] = std::uint8_t(e);
      self(self, id + 1, left - e);
    }
    m[id] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    const int da = monomial_degree(a), db = monomial_degree(b);
    return da != db ? da < db : a > b;
  });
  return out;
}

SuperPolynomial random_polynomial(const GroupSpec& spec, std::mt19937_64& rng, int max_degree, int terms) {
  Alphabet alpha(spec);
  auto all = monomials_up_to(alpha, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  SuperPolynomial p(spec);
  for (int t = 0; t < terms; ++t) {
    Q c(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
    p.add_term(all[pick(rng)], c);
  }
  return p;
}

json to_json(const SuperPolynomial& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    std::string name;
    for (std::size_t id = 0; id < m.size(); ++id) {
      if (!m[id]) continue;
      if (!name.empty()) name += "*";
      name += f.alphabet().name(int(id));
      if (m[id] > 1) name += "^" + std::to_string(m[id]);
    }
    terms.push_back(json{{"monomial", name.empty() ? "1" : name}, {"coefficient", scalar_json(c)}});
  }
  return json{{"spec", f.spec().str()}, {"terms", terms}};
}

}  // namespace superhaar
