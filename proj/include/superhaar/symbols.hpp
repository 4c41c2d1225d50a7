#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "superhaar/groups.hpp"
#include "superhaar/matrix.hpp"

namespace superhaar {

// Matrix-entry symbols X[i,j] (and Xs[i,j], entries of the superadjoint, for U(p|q)).
// Symbol ids: X[i,j] -> i*d + j, Xs[i,j] -> d*d + i*d + j (0-based i, j).
struct Symbol {
  bool star = false;
  int i = 0;
  int j = 0;
};

class Alphabet {
 public:
  explicit Alphabet(const GroupSpec& spec) : spec_(spec), d_(spec.size()), star_(spec.kind == GroupKind::U) {}

  const GroupSpec& spec() const { return spec_; }
  int dim() const { return d_; }
  bool has_star() const { return star_; }
  int size() const { return (star_ ? 2 : 1) * d_ * d_; }
  int index_parity(int i) const { return i < spec_.even_dim() ? 0 : 1; }
  int parity(int id) const {
    Symbol s = symbol(id);
    return (index_parity(s.i) + index_parity(s.j)) % 2;
  }
  Symbol symbol(int id) const { return {id >= d_ * d_, (id % (d_ * d_)) / d_, id % d_}; }
  int id(const Symbol& s) const;
  std::string name(int id) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.spec_ == b.spec_; }

 private:
  GroupSpec spec_;
  int d_;
  bool star_;
};

using Monomial = std::vector<std::uint8_t>;  // exponent per symbol id

// Sorts a symbol sequence into canonical order; sign 0 when an odd symbol repeats.
std::pair<int, Monomial> normalize(const Alphabet& alpha, const std::vector<int>& sequence);

// Sign of m1 * m2 relative to the canonical product; 0 if it vanishes.
int monomial_product_sign(const Alphabet& alpha, const Monomial& a, const Monomial& b);

class SuperPolynomial {
 public:
  using Terms = std::map<Monomial, Q>;

  explicit SuperPolynomial(const GroupSpec& spec) : alpha_(spec) {}
  static SuperPolynomial constant(const GroupSpec& spec, const Q& c);
  static SuperPolynomial symbol(const GroupSpec& spec, const Symbol& s);
  static SuperPolynomial from_sequence(const GroupSpec& spec, const std::vector<int>& ids, const Q& c);

  const Alphabet& alphabet() const { return alpha_; }
  const GroupSpec& spec() const { return alpha_.spec(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  // Parity of a homogeneous polynomial; throws when mixed.
  int parity() const;

  void add_term(const Monomial& m, const Q& c);

  SuperPolynomial operator-() const;
  friend SuperPolynomial operator+(const SuperPolynomial& a, const SuperPolynomial& b);
  friend SuperPolynomial operator-(const SuperPolynomial& a, const SuperPolynomial& b);
  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);
  friend SuperPolynomial operator*(const SuperPolynomial& a, const Q& c);
  friend SuperPolynomial operator*(const Q& c, const SuperPolynomial& a) { return a * c; }
  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
    return a.alpha_ == b.alpha_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  Alphabet alpha_;
  Terms terms_;
};

int monomial_degree(const Monomial& m);
int monomial_parity(const Alphabet& alpha, const Monomial& m);
// Canonical symbol sequence of a monomial, with even powers repeated.
std::vector<int> monomial_sequence(const Monomial& m);

// "X[1,1]^2 * Xs[2,1] * X[1,2]", optionally with rational or i factors, read left to right.
SuperPolynomial parse_monomial(const GroupSpec& spec, const std::string& text);

// All monomials of total degree <= d (odd exponents capped at 1).
std::vector<Monomial> monomials_up_to(const Alphabet& alpha, int d);

// Random polynomial with `terms` monomials of degree <= max_degree and small Gaussian-rational coefficients.
SuperPolynomial random_polynomial(const GroupSpec& spec, std::mt19937_64& rng, int max_degree, int terms);

template <class T>
T coeff_as(const Q& q) {
  if constexpr (std::is_same_v<T, Q>)
    return q;
  else
    return to_complex(q);
}

// Generic evaluation: value(id) gives the image of symbol id; scale(v, q) multiplies by a coefficient.
template <class V, class Value, class Scale>
V evaluate_with(const SuperPolynomial& f, Value value, Scale scale, const V& zero, const V& one) {
  std::map<std::pair<int, int>, V> powers;
  auto power = [&](int id, int e) -> const V& {
    auto it = powers.find({id, e});
    if (it != powers.end()) return it->second;
    int k = e - 1;
    while (k > 0 && !powers.count({id, k})) --k;
    V v = k ? powers.at({id, k}) : V(value(id));
    if (!k) {
      powers.emplace(std::make_pair(id, 1), v);
      k = 1;
    }
    for (; k < e; ++k) {
      v = v * value(id);
      powers.emplace(std::make_pair(id, k + 1), v);
    }
    return powers.at({id, e});
  };
  V acc = zero;
  for (const auto& [m, c] : f.terms()) {
    V term = one;
    for (std::size_t id = 0; id < m.size(); ++id)
      if (m[id]) term = term * power(int(id), m[id]);
    acc = acc + scale(term, c);
  }
  return acc;
}

// f(X, X*) with X* = superadjoint(X) under the spec's conjugation.
template <class T>
Grassmann<T> evaluate(const SuperPolynomial& f, const SuperMatrix<T>& X) {
  const Alphabet& a = f.alphabet();
  if (X.k() != a.spec().even_dim() || X.l() != a.spec().odd_dim())
    throw std::invalid_argument("evaluate: supermatrix does not match the alphabet of " + a.spec().name());
  SuperMatrix<T> Xs = a.has_star() ? X.superadjoint(a.spec().conjugation()) : X;
  const int gens = X.generators();
  auto value = [&](int id) -> Grassmann<T> {
    Symbol s = a.symbol(id);
    return s.star ? Xs(s.i, s.j) : X(s.i, s.j);
  };
  auto scale = [](const Grassmann<T>& g, const Q& c) { return g * coeff_as<T>(c); };
  return evaluate_with<Grassmann<T>>(f, value, scale, Grassmann<T>(gens), Grassmann<T>(gens, Ring<T>::from_int(1)));
}

json to_json(const SuperPolynomial& f);

}  // namespace superhaar
