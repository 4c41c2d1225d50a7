#include "superhaar/superalgebra.hpp"

#include <stdexcept>

#include "superhaar/json_io.hpp"

namespace superhaar {

namespace {

int sgn_pow(int e) { return e % 2 ? -1 : 1; }

Q signed_q(int s, const Q& q) { return s < 0 ? -q : q; }

Matrix<Q> unit(int d, int r, int c, const Q& v = Q(1)) {
  Matrix<Q> m(d, d);
  m(r, c) = v;
  return m;
}

std::string idx_label(const std::string& head, int i, int j) {
  return head + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
}

// Superadjoint of a numeric matrix: (D*)_{ij} = c_ij conj(D_ji), c = i off the diagonal blocks.
Matrix<Q> numeric_superadjoint(const GroupSpec& spec, const Matrix<Q>& D) {
  const int d = spec.size(), m = spec.even_dim();
  Matrix<Q> r(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Q c = conj(D(j, i));
      r(i, j) = ((i < m) != (j < m)) ? c * Q::unit_i() : c;
    }
  return r;
}

double poly_residual(const SuperPolynomial& a, const SuperPolynomial& b) {
  double r = 0;
  const SuperPolynomial diff = a - b;
  for (const auto& t : diff.terms()) r = std::max(r, magnitude(t.second));
  return r;
}

double derivation_residual(const Derivation& a, const Derivation& b) {
  Alphabet alpha(a.spec());
  double r = 0;
  for (int id = 0; id < alpha.size(); ++id) r = std::max(r, poly_residual(a.on_symbol(id), b.on_symbol(id)));
  return r;
}

}  // namespace

Matrix<Q> osp_generator_matrix(const GroupSpec& spec, int i, int j) {
  Matrix<int> g = spec.metric();
  const int d = spec.size(), m = spec.even_dim();
  const int pi = i >= m, pj = j >= m;
  Matrix<Q> k(d, d);
  for (int a = 0; a < d; ++a) {
    k(i, a) += Q(g(a, j));
    k(j, a) -= Q((pi && pj) ? -g(a, i) : g(a, i));
  }
  return k;
}

std::vector<BasisElement> algebra_basis(const GroupSpec& spec) {
  std::vector<BasisElement> out;
  const int d = spec.size(), m = spec.even_dim();
  if (spec.kind != GroupKind::U) {
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        if (i == j && i < m) continue;
        out.push_back({idx_label("K", i, j), ((i >= m) + (j >= m)) % 2, osp_generator_matrix(spec, i, j), i, j});
      }
    return out;
  }
  const Q iu = Q::unit_i();
  auto even_block = [&](int lo, int hi, const std::string& tag) {
    for (int k = lo; k < hi; ++k) out.push_back({idx_label(tag + "i", k, k), 0, unit(d, k, k, iu), k, k});
    for (int k = lo; k < hi; ++k)
      for (int l = k + 1; l < hi; ++l) {
        out.push_back({idx_label(tag + "r", k, l), 0, unit(d, k, l) - unit(d, l, k), k, l});
        out.push_back({idx_label(tag + "s", k, l), 0, unit(d, k, l, iu) + unit(d, l, k, iu), k, l});
      }
  };
  even_block(0, m, "P");
  even_block(m, d, "Q");
  for (int j = 0; j < m; ++j)
    for (int k = m; k < d; ++k) {
      // C-hat = [[0, C], [-i C^dag, 0]] for C = E_jk and C = i E_jk
      out.push_back({idx_label("Cr", j, k), 1, unit(d, j, k) + unit(d, k, j, -iu), j, k});
      out.push_back({idx_label("Ci", j, k), 1, unit(d, j, k, iu) + unit(d, k, j, Q(-1)), j, k});
    }
  return out;
}

std::vector<BasisElement> complex_odd_basis(const GroupSpec& spec) {
  if (spec.kind != GroupKind::U) throw std::logic_error("complex odd basis only for U(p|q)");
  const int p = spec.a, q = spec.b, d = spec.size();
  std::vector<BasisElement> out;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < p; ++j) {
      out.push_back({idx_label("Y", i, j), 1, unit(d, j, p + i), i, j});
      out.push_back({idx_label("Ybar", i, j), 1, unit(d, p + i, j, -Q::unit_i()), i, j});
    }
  return out;
}

std::vector<BasisElement> odd_basis(const GroupSpec& spec) {
  if (spec.kind == GroupKind::U) return complex_odd_basis(spec);
  std::vector<BasisElement> out;
  for (auto& e : algebra_basis(spec))
    if (e.parity) out.push_back(std::move(e));
  return out;
}

Derivation::Derivation(const GroupSpec& spec, int parity) : spec_(spec), parity_(parity % 2) {
  Alphabet a(spec);
  images_.assign(a.size(), SuperPolynomial(spec));
}

void Derivation::set_symbol(int id, SuperPolynomial image) { images_.at(id) = std::move(image); }

SuperPolynomial Derivation::apply(const SuperPolynomial& f) const {
  const Alphabet& alpha = f.alphabet();
  if (!(alpha.spec() == spec_)) throw std::invalid_argument("derivation applied to a polynomial of another alphabet");
  SuperPolynomial out(spec_);
  for (const auto& [m, c] : f.terms()) {
    const std::vector<int> seq = monomial_sequence(m);
    int prefix_parity = 0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const SuperPolynomial& img = images_[seq[k]];
      if (!img.is_zero()) {
        std::vector<int> pre(seq.begin(), seq.begin() + k), post(seq.begin() + k + 1, seq.end());
        const Q coeff = signed_q(sgn_pow(parity_ * prefix_parity), c);
        out = out + SuperPolynomial::from_sequence(spec_, pre, coeff) * img *
                        SuperPolynomial::from_sequence(spec_, post, Q(1));
      }
      prefix_parity += alpha.parity(seq[k]);
    }
  }
  return out;
}

Derivation operator+(const Derivation& a, const Derivation& b) {
  if (a.parity_ != b.parity_) throw std::invalid_argument("sum of derivations of different parity");
  Derivation r(a.spec_, a.parity_);
  for (std::size_t i = 0; i < r.images_.size(); ++i) r.images_[i] = a.images_[i] + b.images_[i];
  return r;
}

Derivation operator*(const Q& c, const Derivation& d) {
  Derivation r(d.spec_, d.parity_);
  for (std::size_t i = 0; i < r.images_.size(); ++i) r.images_[i] = d.images_[i] * c;
  return r;
}

Derivation supercommutator(const Derivation& a, const Derivation& b) {
  Derivation r(a.spec(), a.parity() + b.parity());
  Alphabet alpha(a.spec());
  const int s = sgn_pow(a.parity() * b.parity());
  for (int id = 0; id < alpha.size(); ++id)
    r.set_symbol(id, a.apply(b.on_symbol(id)) - b.apply(a.on_symbol(id)) * Q(s));
  return r;
}

Derivation konx(const GroupSpec& spec, int a, int b) {
  if (spec.kind == GroupKind::U) throw std::logic_error("K generators need an orthosymplectic spec");
  Matrix<int> g = spec.metric();
  Alphabet alpha(spec);
  const int d = spec.size();
  auto par = [&](int i) { return alpha.index_parity(i); };
  Derivation D(spec, par(a) + par(b));
  for (int c = 0; c < d; ++c)
    for (int e = 0; e < d; ++e) {
      const int s = sgn_pow((1 + par(e)) * (par(a) + par(b)));
      SuperPolynomial img(spec);
      if (g(c, b)) img = img + SuperPolynomial::symbol(spec, {false, a, e}) * Q(s * g(c, b));
      if (g(c, a))
        img = img - SuperPolynomial::symbol(spec, {false, b, e}) * Q(s * sgn_pow(par(a) * par(b)) * g(c, a));
      D.set_symbol(alpha.id({false, c, e}), img);
    }
  return D;
}

Derivation tilde(const GroupSpec& spec, const Matrix<Q>& D, int parity) {
  Alphabet alpha(spec);
  const int d = spec.size();
  auto par = [&](int i) { return alpha.index_parity(i); };
  Derivation R(spec, parity);
  auto plain = [&](const Matrix<Q>& M, int a, int b) {
    SuperPolynomial img(spec);
    for (int c = 0; c < d; ++c)
      if (!is_zero(M(c, a)))
        img = img + SuperPolynomial::symbol(spec, {false, c, b}) * signed_q(sgn_pow(par(b) * (par(a) + par(c))), M(c, a));
    return img;
  };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) R.set_symbol(alpha.id({false, a, b}), plain(D, a, b));
  if (!alpha.has_star()) return R;
  // Xs_{ab} = c_ab conj(X_ba); D~(conj f) = conj((-D*)~ f)
  Matrix<Q> Dp = numeric_superadjoint(spec, D).scaled(Q(-1));
  auto cfac = [&](int a, int b) { return par(a) != par(b) ? Q::unit_i() : Q(1); };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      SuperPolynomial img(spec);
      for (int c = 0; c < d; ++c) {
        if (is_zero(Dp(c, b))) continue;
        // (-D*)~(X_ba) contains coef * X_{ca}; conj(X_ca) = Xs_{ac} / c_ac
        const Q coef = signed_q(sgn_pow(par(a) * (par(b) + par(c))), Dp(c, b));
        img = img + SuperPolynomial::symbol(spec, {true, a, c}) * (cfac(a, b) * conj(coef) / cfac(a, c));
      }
      R.set_symbol(alpha.id({true, a, b}), img);
    }
  return R;
}

Derivation derivation_of(const GroupSpec& spec, const BasisElement& e) {
  if (spec.kind != GroupKind::U) return konx(spec, e.i, e.j);
  return tilde(spec, e.matrix, e.parity);
}

Matrix<Q> matrix_bracket(const Matrix<Q>& a, int pa, const Matrix<Q>& b, int pb) {
  Matrix<Q> ab = a * b, ba = b * a;
  return (pa * pb) % 2 ? ab + ba : ab - ba;
}

json to_json(const CheckReport& r, bool all_lines) {
  json lines = json::array();
  for (const auto& l : r.lines)
    if (all_lines || !l.pass) lines.push_back(json{{"check", l.name}, {"residual", l.residual}, {"pass", l.pass}});
  return json{{"suite", r.suite},
              {"pass", r.pass()},
              {"checks", r.lines.size()},
              {"failures", r.failures()},
              {"max_residual", r.max_residual()},
              {"lines", lines}};
}

CheckReport verify_bracket(const GroupSpec& spec) {
  CheckReport rep;
  auto basis = algebra_basis(spec);
  std::vector<Derivation> der;
  for (const auto& e : basis) der.push_back(derivation_of(spec, e));
  if (spec.kind != GroupKind::U) {
    rep.suite = "osp-structure-constants";
    Alphabet alpha(spec);
    Matrix<int> g = spec.metric();
    auto par = [&](int i) { return alpha.index_parity(i); };
    for (std::size_t x = 0; x < basis.size(); ++x)
      for (std::size_t y = 0; y < basis.size(); ++y) {
        const int i = basis[x].i, j = basis[x].j, k = basis[y].i, l = basis[y].j;
        const int c1 = g(k, j), c2 = sgn_pow(par(i) * (par(j) + par(k))) * g(l, i),
                  c3 = -sgn_pow(par(k) * par(l)) * g(l, j), c4 = -sgn_pow(par(i) * par(j)) * g(k, i);
        Derivation rhs(spec, par(i) + par(j) + par(k) + par(l));
        Matrix<Q> mrhs(spec.size(), spec.size());
        auto acc = [&](int c, int a, int b) {
          if (!c) return;
          rhs = rhs + Q(c) * konx(spec, a, b);
          mrhs = mrhs + osp_generator_matrix(spec, a, b).scaled(Q(c));
        };
        acc(c1, i, l);
        acc(c2, j, k);
        acc(c3, i, k);
        acc(c4, j, l);
        const std::string name = "[" + basis[x].label + "," + basis[y].label + "]";
        rep.add(name + " on symbols", derivation_residual(supercommutator(der[x], der[y]), rhs), 0.0);
        Matrix<Q> lhs = matrix_bracket(basis[x].matrix, basis[x].parity, basis[y].matrix, basis[y].parity);
        double r = 0;
        const Matrix<Q> diff = lhs - mrhs;
        for (const auto& v : diff.data()) r = std::max(r, magnitude(v));
        rep.add(name + " matrices", r, 0.0);
      }
    return rep;
  }
  rep.suite = "u-bracket-morphism";
  auto all = basis;
  for (auto& e : complex_odd_basis(spec)) all.push_back(e);
  for (std::size_t x = der.size(); x < all.size(); ++x) der.push_back(derivation_of(spec, all[x]));
  for (std::size_t x = 0; x < all.size(); ++x)
    for (std::size_t y = 0; y < all.size(); ++y) {
      Matrix<Q> br = matrix_bracket(all[x].matrix, all[x].parity, all[y].matrix, all[y].parity);
      Derivation rhs = tilde(spec, br, all[x].parity + all[y].parity);
      rep.add("[" + all[x].label + "," + all[y].label + "]", derivation_residual(supercommutator(der[x], der[y]), rhs),
              0.0);
    }
  return rep;
}

CheckReport verify_jacobi(const GroupSpec& spec) {
  CheckReport rep;
  rep.suite = "jacobi";
  auto basis = algebra_basis(spec);
  std::vector<Derivation> der;
  for (const auto& e : basis) der.push_back(derivation_of(spec, e));
  const std::size_t n = der.size();
  std::vector<std::vector<Derivation>> br(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) br[a].push_back(supercommutator(der[a], der[b]));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const int s = sgn_pow(der[a].parity() * der[b].parity());
        Derivation lhs = supercommutator(der[a], br[b][c]);
        Derivation rhs = supercommutator(br[a][b], der[c]) + Q(s) * supercommutator(der[b], br[a][c]);
        rep.add(basis[a].label + "," + basis[b].label + "," + basis[c].label, derivation_residual(lhs, rhs), 0.0);
      }
  return rep;
}

CheckReport verify_matrix_consistency(const GroupSpec& spec) {
  CheckReport rep;
  rep.suite = "symbol-action-vs-matrix-action";
  Alphabet alpha(spec);
  auto par = [&](int i) { return alpha.index_parity(i); };
  if (spec.kind != GroupKind::U) {
    for (const auto& e : algebra_basis(spec)) {
      Derivation viaM = Q(sgn_pow(e.parity)) * tilde(spec, e.matrix, e.parity);
      rep.add(e.label, derivation_residual(konx(spec, e.i, e.j), viaM), 0.0);
    }
    return rep;
  }
  // odd complex derivations against their closed form on X symbols
  const int p = spec.a, d = spec.size();
  for (const auto& e : complex_odd_basis(spec)) {
    Derivation t = tilde(spec, e.matrix, 1);
    const bool bar = e.label.rfind("Ybar", 0) == 0;
    double r = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        SuperPolynomial want(spec);
        if (!bar && a == p + e.i) want = SuperPolynomial::symbol(spec, {false, e.j, b}) * Q(sgn_pow(par(b)));
        if (bar && a == e.j)
          want = SuperPolynomial::symbol(spec, {false, p + e.i, b}) * (Q(sgn_pow(par(b))) * -Q::unit_i());
        r = std::max(r, poly_residual(t.on_symbol(alpha.id({false, a, b})), want));
      }
    rep.add(e.label, r, 0.0);
  }
  return rep;
}

}  // namespace superhaar
