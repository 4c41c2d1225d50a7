#include "superhaar/integration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace superhaar {

namespace {

Matrix<Q> adjoint_q(const Matrix<Q>& m) {
  return m.transpose().map([](const Q& v) { return conj(v); });
}

}  // namespace

// ---- density and Berezin data ----

template <class T>
Grassmann<T> density(const GroupSpec& spec, const GMatrix<T>& odd) {
  const int gens = std::max(detail::generators_of(odd), spec.grassmann_count());
  if (spec.kind == GroupKind::U) return Grassmann<T>(gens, Ring<T>::from_int(1));
  const int m = spec.a;
  GMatrix<T> prod = spec.kind == GroupKind::OSp ? GMatrix<T>(odd_hat(spec, odd) * odd)
                                                : GMatrix<T>(conj_transpose(odd, Conjugation::SecondKind) * odd);
  GMatrix<T> M = identity_g<T>(m, gens) - prod;
  return nilpotent_series(det_even(M), Series::InvSqrt);
}

template Grassmann<Q> density(const GroupSpec&, const GMatrix<Q>&);
template Grassmann<C> density(const GroupSpec&, const GMatrix<C>&);

std::vector<int> berezin_ordering(const GroupSpec& spec) {
  const int n = spec.grassmann_count();
  std::vector<int> o = identity_ordering<int>(n);
  if (spec.kind == GroupKind::U) std::reverse(o.begin(), o.end());
  return o;
}

Q berezin_normalization(const GroupSpec& spec) {
  if (spec.kind == GroupKind::U) return Q(1);
  const int n = spec.b, N = spec.grassmann_count();
  GMatrix<Q> odd = universal_odd<Q>(spec);
  GMatrix<Q> tt = odd_hat(spec, odd) * odd;
  GQ top(N, Q(1));
  Q nfact(1);
  for (int k = 2; k <= n; ++k) nfact *= Q(k);
  for (int k = 0; k < spec.a; ++k) {
    GQ p(N, Q(1));
    for (int e = 0; e < n; ++e) p = p * tt(k, k);
    top = top * p * (Q(1) / nfact);
  }
  Q raw = berezin(top, berezin_ordering(spec));
  if (is_zero(raw)) throw std::logic_error("degenerate Berezin normalization");
  return Q(1) / raw;
}

// ---- classical coordinates ----

ClassicalLayout::ClassicalLayout(const GroupSpec& s) : spec(s), m(s.even_dim()), k(s.odd_dim()) {}

std::string ClassicalLayout::name(int id) const {
  auto idx = [](int a, int b) { return "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]"; };
  if (id < m * m) return "x" + idx(id / m, id % m);
  id -= m * m;
  if (id < k * k) return "y" + idx(id / k, id % k);
  id -= k * k;
  if (id < m * m) return "xbar" + idx(id / m, id % m);
  id -= m * m;
  return "ybar" + idx(id / k, id % k);
}

template <class T>
std::vector<T> ClassicalLayout::values(const ClassicalPoint<T>& p) const {
  std::vector<T> v(count());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) v[x(a, b)] = p.x(a, b);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) v[y(a, b)] = p.y(a, b);
  if (spec.kind == GroupKind::U) {
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) v[xbar(a, b)] = conj(p.x(a, b));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) v[ybar(a, b)] = conj(p.y(a, b));
  }
  return v;
}

template std::vector<Q> ClassicalLayout::values(const ClassicalPoint<Q>&) const;
template std::vector<C> ClassicalLayout::values(const ClassicalPoint<C>&) const;

ClassicalMonomial monomial_times(const ClassicalMonomial& a, const ClassicalMonomial& b) {
  ClassicalMonomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (int(r[i]) + b[i] > 255) throw std::overflow_error("classical exponent overflow");
    r[i] = std::uint8_t(r[i] + b[i]);
  }
  return r;
}

void ClassicalPolynomial::add(const ClassicalMonomial& m, const Q& c) {
  if (superhaar::is_zero(c)) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (superhaar::is_zero(it->second)) terms_.erase(it);
}

Q ClassicalPolynomial::constant_term() const {
  auto it = terms_.find(ClassicalMonomial{});
  return it == terms_.end() ? Q() : it->second;
}

template <class T>
T ClassicalPolynomial::evaluate(const std::vector<T>& values) const {
  T acc{};
  for (const auto& [mono, c] : terms_) {
    T t = coeff_as<T>(c);
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (int e = 0; e < mono[i]; ++e) t *= values.at(i);
    acc += t;
  }
  return acc;
}

template Q ClassicalPolynomial::evaluate(const std::vector<Q>&) const;
template C ClassicalPolynomial::evaluate(const std::vector<C>&) const;

ClassicalPolynomial& ClassicalPolynomial::operator+=(const ClassicalPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

ClassicalPolynomial operator*(const Q& c, const ClassicalPolynomial& p) {
  ClassicalPolynomial r;
  if (superhaar::is_zero(c)) return r;
  for (const auto& [m, v] : p.terms_) r.terms_.emplace(m, v * c);
  return r;
}

// ---- superfunctions ----

Superfunction::Superfunction(const GQ& constant) { add({}, constant); }

Superfunction Superfunction::variable(int id, const GQ& coeff) {
  Superfunction s;
  ClassicalMonomial m(id + 1, 0);
  m[id] = 1;
  s.add(m, coeff);
  return s;
}

void Superfunction::add(const ClassicalMonomial& m, const GQ& g) {
  if (g.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, g);
  if (fresh) return;
  it->second += g;
  if (it->second.is_zero()) terms_.erase(it);
}

Superfunction operator+(const Superfunction& a, const Superfunction& b) {
  Superfunction r = a;
  for (const auto& [m, g] : b.terms_) r.add(m, g);
  return r;
}

Superfunction operator-(const Superfunction& a, const Superfunction& b) {
  Superfunction r = a;
  for (const auto& [m, g] : b.terms_) r.add(m, -g);
  return r;
}

Superfunction operator*(const Superfunction& a, const Superfunction& b) {
  Superfunction r;
  for (const auto& [ma, ga] : a.terms_)
    for (const auto& [mb, gb] : b.terms_) r.add(monomial_times(ma, mb), ga * gb);
  return r;
}

Superfunction operator*(const Superfunction& a, const Q& c) {
  Superfunction r;
  if (superhaar::is_zero(c)) return r;
  for (const auto& [m, g] : a.terms_) r.add(m, g * c);
  return r;
}

Superfunction Superfunction::conj(const ClassicalLayout& L, Conjugation conv) const {
  if (L.spec.kind != GroupKind::U) throw std::logic_error("conjugate superfunctions need complex coordinates");
  const int half = L.count() / 2;
  Superfunction r;
  for (const auto& [m, g] : terms_) {
    ClassicalMonomial c(L.count(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) c[(int(i) + half) % L.count()] = m[i];
    while (!c.empty() && c.back() == 0) c.pop_back();
    r.add(c, conjugate(g, conv));
  }
  return r;
}

// ---- modes and results ----

std::string mode_name(ResultMode m) {
  switch (m) {
    case ResultMode::ExactPhase:
      return "exact-phase";
    case ResultMode::ExactBerezinOnly:
      return "exact-berezin-only";
    case ResultMode::MonteCarlo:
      return "monte-carlo";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "auto") return Mode::Auto;
  if (s == "exact") return Mode::Exact;
  if (s == "exact-phase") return Mode::ExactPhase;
  if (s == "mc" || s == "monte-carlo") return Mode::MonteCarlo;
  throw std::invalid_argument("unknown mode '" + s + "' (auto, exact, exact-phase, mc)");
}

json to_json(const IntegralResult& r) {
  json j;
  j["estimate"] = r.is_exact() ? scalar_json(r.exact) : scalar_json(r.estimate);
  j["stderr"] = r.stderr_;
  j["samples"] = r.samples;
  j["mode"] = mode_name(r.mode);
  j["berezin_normalization"] = scalar_json(r.normalization);
  return j;
}

// ---- engine ----

Integrator::Integrator(const GroupSpec& spec) : spec_(spec), layout_(spec) {
  const int m = spec.even_dim(), k = spec.odd_dim(), d = spec.size(), N = spec.grassmann_count();
  if (N > 16) throw std::invalid_argument("too many odd coordinates for symbolic integration");
  GMatrix<Q> odd = universal_odd<Q>(spec);
  auto ab = ab_matrices(spec, odd);
  GMatrix<Q> hat = odd_hat(spec, odd);
  const bool u = spec.kind == GroupKind::U;
  X_ = Matrix<Superfunction>(d, d);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) X_(a, b) = X_(a, b) + Superfunction::variable(layout_.x(a, c), ab->A(c, b));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < m; ++c)
        for (int e = 0; e < k; ++e) {
          GQ h = u ? GQ(hat(c, e) * Q::unit_i()) : hat(c, e);
          if (h.is_zero()) continue;
          X_(a, m + b) = X_(a, m + b) + Superfunction::variable(layout_.x(a, c), h) *
                                            Superfunction::variable(layout_.y(e, b), GQ(N, Q(1)));
        }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < m; ++b) X_(m + a, b) = Superfunction(odd(a, b));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        X_(m + a, m + b) = X_(m + a, m + b) + Superfunction::variable(layout_.y(c, b), ab->B(a, c));
  if (u) {
    Xs_ = Matrix<Superfunction>(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Superfunction c = X_(i, j).conj(layout_, spec.conjugation());
        Xs_(j, i) = ((i < m) != (j < m)) ? c * Q::unit_i() : c;
      }
  }
  norm_ = berezin_normalization(spec);
  GQ dens = density(spec, odd);
  auto order = berezin_ordering(spec);
  weight_.assign(std::size_t(1) << N, Q());
  for (Blade b = 0; b < (Blade(1) << N); ++b) {
    Q w = berezin(GQ(GQ::blade(N, b, Q(1)) * dens), order);
    if (!is_zero(w)) weight_[b] = w * norm_;
  }
}

ClassicalPolynomial Integrator::reduce(const SuperPolynomial& f) const {
  if (!(f.spec() == spec_)) throw std::invalid_argument("polynomial alphabet does not match " + spec_.name());
  const int N = spec_.grassmann_count();
  const Alphabet& alpha = f.alphabet();
  ClassicalPolynomial out;
  for (const auto& [mono, coeff] : f.terms()) {
    std::unique_lock lock(mu_);
    auto it = cache_.find(mono);
    if (it == cache_.end()) {
      lock.unlock();
      SuperPolynomial single(spec_);
      single.add_term(mono, Q(1));
      auto value = [&](int id) -> const Superfunction& {
        Symbol s = alpha.symbol(id);
        return s.star ? Xs_(s.i, s.j) : X_(s.i, s.j);
      };
      auto scale = [](const Superfunction& v, const Q& c) { return v * c; };
      Superfunction sf =
          evaluate_with<Superfunction>(single, value, scale, Superfunction(), Superfunction(GQ(N, Q(1))));
      ClassicalPolynomial p;
      for (const auto& [cm, g] : sf.terms()) {
        Q acc;
        for (const auto& [b, c] : g.terms())
          if (!is_zero(weight_[b])) acc += c * weight_[b];
        p.add(cm, acc);
      }
      lock.lock();
      it = cache_.emplace(mono, std::move(p)).first;
    }
    out += coeff * it->second;
  }
  return out;
}

Q Integrator::phase_integral(const ClassicalPolynomial& p) const {
  if (!(spec_.kind == GroupKind::U && spec_.a == 1 && spec_.b == 1))
    throw std::invalid_argument("exact-phase mode needs U(1) classical factors, i.e. U(1|1)");
  Q acc;
  for (const auto& [mono, c] : p.terms()) {
    auto e = [&](int i) { return i < int(mono.size()) ? int(mono[i]) : 0; };
    acc += c * exact_u1_moment({{e(layout_.x(0, 0)), e(layout_.xbar(0, 0))}, {e(layout_.y(0, 0)), e(layout_.ybar(0, 0))}});
  }
  return acc;
}

std::optional<Q> Integrator::constant_value(const ClassicalPolynomial& p) const {
  if (p.is_constant()) return p.constant_term();
  std::mt19937_64 rng(0x5eedc0ffeeULL);
  std::optional<Q> v;
  for (int t = 0; t < 12; ++t) {
    auto pt = cayley_point(spec_, rng);
    Q val = p.evaluate(layout_.values(pt));
    if (v && *v != val) return std::nullopt;
    v = val;
  }
  return v;
}

std::shared_ptr<const std::vector<std::vector<C>>> Integrator::sample_values(std::uint64_t seed, long samples) const {
  std::lock_guard lock(mu_);
  auto key = std::make_pair(seed, samples);
  auto it = samples_.find(key);
  if (it != samples_.end()) return it->second;
  auto v = std::make_shared<std::vector<std::vector<C>>>();
  v->reserve(samples);
  for (long i = 0; i < samples; ++i) v->push_back(layout_.values(sample_indexed(spec_, seed, std::uint64_t(i))));
  if (samples_.size() > 8) samples_.clear();
  samples_.emplace(key, v);
  return v;
}

IntegralResult Integrator::integrate_reduced(const ClassicalPolynomial& p, const Strategy& s) const {
  IntegralResult r;
  r.normalization = norm_;
  const bool phase_ok = spec_.kind == GroupKind::U && spec_.a == 1 && spec_.b == 1;
  auto exact = [&](ResultMode m, const Q& v) {
    r.mode = m;
    r.exact = v;
    r.estimate = to_complex(v);
    return r;
  };
  if (s.mode == Mode::ExactPhase || ((s.mode == Mode::Auto || s.mode == Mode::Exact) && phase_ok))
    return exact(ResultMode::ExactPhase, phase_integral(p));
  if (s.mode == Mode::MonteCarlo) {
    if (p.is_constant()) return exact(ResultMode::ExactBerezinOnly, p.constant_term());
  } else if (auto v = constant_value(p)) {
    return exact(ResultMode::ExactBerezinOnly, *v);
  } else if (s.mode == Mode::Exact) {
    throw std::domain_error("no exact evaluation for " + spec_.name() +
                            ": the integrand depends on the classical coordinates (use mc)");
  }
  if (s.samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
  auto pts = sample_values(s.seed, s.samples);
  std::vector<C> vals(pts->size());
  for (std::size_t i = 0; i < pts->size(); ++i) vals[i] = p.evaluate((*pts)[i]);
  Estimate e = summarize(vals);
  r.mode = ResultMode::MonteCarlo;
  r.estimate = e.mean;
  r.stderr_ = e.stderr_;
  r.samples = e.samples;
  return r;
}

IntegralResult Integrator::integrate(const SuperPolynomial& f, const Strategy& s) const {
  return integrate_reduced(reduce(f), s);
}

const Integrator& integrator(const GroupSpec& spec) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Integrator>> engines;
  std::lock_guard lock(mu);
  auto& e = engines[spec.str()];
  if (!e) e = std::make_unique<Integrator>(spec);
  return *e;
}

// ---- left translation ----

SuperPolynomial left_translate(const SuperPolynomial& f, const ClassicalPoint<Q>& g) {
  const GroupSpec& spec = f.spec();
  const int m = spec.even_dim(), d = spec.size();
  if (g.x.rows() != m || g.y.rows() != spec.odd_dim()) throw std::invalid_argument("translation has wrong shape");
  Matrix<Q> D(d, d);
  D.set_block(0, 0, g.x);
  D.set_block(m, m, g.y);
  Matrix<Q> Dd = adjoint_q(D);
  const Alphabet& alpha = f.alphabet();
  std::vector<SuperPolynomial> img;
  for (int id = 0; id < alpha.size(); ++id) {
    Symbol s = alpha.symbol(id);
    SuperPolynomial p(spec);
    for (int c = 0; c < d; ++c) {
      if (!s.star && !is_zero(D(s.i, c))) p = p + SuperPolynomial::symbol(spec, {false, c, s.j}) * D(s.i, c);
      if (s.star && !is_zero(Dd(c, s.j))) p = p + SuperPolynomial::symbol(spec, {true, s.i, c}) * Dd(c, s.j);
    }
    img.push_back(std::move(p));
  }
  auto value = [&](int id) -> const SuperPolynomial& { return img[id]; };
  auto scale = [](const SuperPolynomial& v, const Q& c) { return v * c; };
  return evaluate_with<SuperPolynomial>(f, value, scale, SuperPolynomial(spec), SuperPolynomial::constant(spec, Q(1)));
}

// ---- density characterization ----

namespace {

double residual_of(const GQ& g) { return g.norm_inf(); }

}  // namespace

CheckReport verify_density_pde(const GroupSpec& spec, bool corrupt) {
  CheckReport rep;
  rep.suite = "density";
  const int N = spec.grassmann_count();
  GMatrix<Q> th = universal_odd<Q>(spec);
  GQ f = density(spec, th);
  if (corrupt) f = f + GQ::blade(N, generator_bit(1) | generator_bit(2), Q(1));
  if (spec.kind == GroupKind::U) {
    rep.add("U(p|q) density is 1", residual_of(f - GQ(N, Q(1))), 0.0);
    return rep;
  }
  const int m = spec.a, n2 = 2 * spec.b;
  GMatrix<Q> hat = odd_hat(spec, th);
  auto ab = ab_matrices(spec, th);
  GQ detA(N, Q(1));
  {
    GQ dA = det_even(ab->A);
    detA = inverse(dA);
    rep.add("density = 1/det A", residual_of(f - detA), 0.0);
  }
  if (spec.kind == GroupKind::UOSp) {
    GMatrix<Q> dag = conj_transpose(th, Conjugation::SecondKind);
    rep.add("theta^dag theta = theta^T J theta", norm_inf(GMatrix<Q>(dag * th - hat * th)), 0.0);
    return rep;
  }
  GMatrix<Q> M = identity_g<Q>(m, N) - hat * th;
  GQ det = det_even(M);
  GMatrix<Q> Minv_hat = inverse_block(M) * hat;
  auto gen = [&](int i, int j) { return theta_generator(spec, i, j); };
  double worst = 0;
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < m; ++j)
      worst = std::max(worst, residual_of(partial(gen(i, j), det) - Minv_hat(j, i) * det * Q(2)));
  rep.add("d_theta det(I - theta^ theta) = 2 ((I - theta^ theta)^-1 theta^)^T det", worst, 0.0);
  GMatrix<Q> A2 = ab->A * ab->A;
  worst = 0;
  for (int l = 0; l < m; ++l)
    for (int j = 0; j < n2; ++j) {
      GQ lhs = hat(l, j) * f;
      for (int t = 0; t < m; ++t) lhs += A2(l, t) * partial(gen(j, t), f);
      worst = std::max(worst, residual_of(lhs));
    }
  rep.add("sum_t A^2_lt d_theta_jt f = -theta^_lj f", worst, 0.0);
  if (spec.kind == GroupKind::OSp && spec.b == 1) {
    GQ closed(N, Q(1));
    for (int j = 0; j < m; ++j) closed += th(0, j) * th(1, j);
    rep.add("n = 1 closed form 1 + sum_j theta_1j theta_2j", residual_of(f - closed), 0.0);
  }
  if (spec.kind == GroupKind::OSp && N <= 6) {
    const int nul = density_pde_nullity(spec);
    rep.add("solution space of the density equations has dimension 1", std::abs(nul - 1), 0.0);
  }
  // y theta keeps theta^ theta for y in the symplectic group.
  std::mt19937_64 rng(0xd5ULL);
  worst = 0;
  for (int t = 0; t < 3; ++t) {
    auto g = cayley_point(spec, rng);
    GMatrix<Q> moved = lift(g.y, N) * th;
    worst = std::max(worst, residual_of(density(spec, moved) - density(spec, th)));
  }
  rep.add("density(y theta) = density(theta)", worst, 0.0);
  return rep;
}

int density_pde_nullity(const GroupSpec& spec) {
  if (spec.kind != GroupKind::OSp) throw std::logic_error("density equations are stated for OSp");
  const int N = spec.grassmann_count(), m = spec.a, n2 = 2 * spec.b;
  if (N > 10) throw std::invalid_argument("nullity check is limited to small algebras");
  GMatrix<Q> th = universal_odd<Q>(spec);
  GMatrix<Q> hat = odd_hat(spec, th);
  auto ab = ab_matrices(spec, th);
  GMatrix<Q> A2 = ab->A * ab->A;
  const Blade full = Blade(1) << N;
  const int rows = m * n2 * int(full);
  Matrix<Q> sys(rows, int(full));
  for (Blade b = 0; b < full; ++b) {
    GQ e = GQ::blade(N, b, Q(1));
    int r = 0;
    for (int l = 0; l < m; ++l)
      for (int j = 0; j < n2; ++j, r += int(full)) {
        GQ img = hat(l, j) * e;
        for (int t = 0; t < m; ++t) img += A2(l, t) * partial(theta_generator(spec, j, t), e);
        for (const auto& [bb, c] : img.terms()) sys(r + int(bb), int(b)) = c;
      }
  }
  return int(full) - exact_rank(std::move(sys));
}

// ---- invariance ----

CheckReport verify_invariance(const GroupSpec& spec, const SuperPolynomial& f, const Strategy& s,
                              const std::vector<ClassicalPoint<Q>>& translations) {
  CheckReport rep;
  rep.suite = "invariance";
  const Integrator& I = integrator(spec);
  auto judge = [&](const std::string& name, const IntegralResult& r) {
    if (r.is_exact())
      rep.add(name, magnitude(r.exact), 0.0);
    else
      rep.add(name, std::abs(r.estimate), 3 * r.stderr_ + 1e-10);
  };
  for (const auto& e : odd_basis(spec)) {
    Derivation D = derivation_of(spec, e);
    judge("int " + e.label + "(f) = 0", I.integrate(D.apply(f), s));
  }
  ClassicalPolynomial pf = I.reduce(f);
  for (std::size_t t = 0; t < translations.size(); ++t) {
    ClassicalPolynomial diff = pf;
    diff += Q(-1) * I.reduce(left_translate(f, translations[t]));
    judge("int f(gX) = int f(X), g #" + std::to_string(t + 1), I.integrate_reduced(diff, s));
  }
  return rep;
}

// ---- U(1|1) table ----

SuperPolynomial u11_monomial(const U11Exponents& e) {
  const GroupSpec spec = GroupSpec::u(1, 1);
  Alphabet alpha(spec);
  const Symbol order[8] = {{false, 0, 0}, {false, 0, 1}, {false, 1, 0}, {false, 1, 1},
                           {true, 0, 0},  {true, 0, 1},  {true, 1, 0},  {true, 1, 1}};
  std::vector<int> seq;
  for (int s = 0; s < 8; ++s)
    for (int r = 0; r < e[s]; ++r) seq.push_back(alpha.id(order[s]));
  return SuperPolynomial::from_sequence(spec, seq, Q(1));
}

Q u11_closed_formula(const U11Exponents& e) {
  const int a11 = e[0], a12 = e[1], a21 = e[2], a22 = e[3], b11 = e[4], b12 = e[5], b21 = e[6], b22 = e[7];
  Q v;
  if (a12 + a21 + b12 + b21 == 0 && a11 == b11 && a22 == b22) v += Q(2 * (a11 - a22));
  if (a12 + b12 == 1 && a21 + b21 == 1 && a11 + a12 == b11 + b21 && a12 + a22 == b21 + b22)
    v += Q((a21 * b12) % 2 ? -2 : 2);
  return v;
}

std::vector<U11Cell> u11_table(int max_exp) {
  if (max_exp < 0) throw std::invalid_argument("max exponent must be non-negative");
  const Integrator& I = integrator(GroupSpec::u(1, 1));
  Strategy s;
  s.mode = Mode::ExactPhase;
  std::vector<U11Cell> out;
  const bool odd_slot[8] = {false, true, true, false, false, true, true, false};
  U11Exponents e{};
  std::function<void(int)> rec = [&](int slot) {
    if (slot == 8) {
      U11Cell c;
      c.exponents = e;
      c.computed = I.integrate(u11_monomial(e), s).exact;
      c.formula = u11_closed_formula(e);
      c.match = c.computed == c.formula;
      out.push_back(std::move(c));
      return;
    }
    const int hi = odd_slot[slot] ? 1 : max_exp;
    for (int v = 0; v <= hi; ++v) {
      e[slot] = v;
      rec(slot + 1);
    }
  };
  rec(0);
  return out;
}

json to_json(const std::vector<U11Cell>& table) {
  json cells = json::array();
  std::size_t mism = 0;
  for (const auto& c : table) {
    cells.push_back({{"exponents", c.exponents},
                     {"computed", scalar_json(c.computed)},
                     {"formula", scalar_json(c.formula)},
                     {"match", c.match}});
    mism += !c.match;
  }
  return {{"exponent_order", {"X11", "X12", "X21", "X22", "Xs11", "Xs12", "Xs21", "Xs22"}},
          {"cells", cells},
          {"count", table.size()},
          {"mismatches", mism}};
}

// ---- ranks and Gram matrices ----

int exact_rank(Matrix<Q> a) {
  int rank = 0;
  const int R = a.rows(), Cc = a.cols();
  for (int col = 0; col < Cc && rank < R; ++col) {
    int piv = -1;
    for (int r = rank; r < R; ++r)
      if (!is_zero(a(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int c = col; c < Cc; ++c) std::swap(a(piv, c), a(rank, c));
    const Q inv = Q(1) / a(rank, col);
    for (int r = rank + 1; r < R; ++r) {
      if (is_zero(a(r, col))) continue;
      const Q f = a(r, col) * inv;
      for (int c = col; c < Cc; ++c)
        if (!is_zero(a(rank, c))) a(r, c) -= f * a(rank, c);
    }
    ++rank;
  }
  return rank;
}

int numeric_rank(const Matrix<C>& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::MatrixXcd e = to_eigen(m);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(1.0, top)) ++r;
  return r;
}

GramResult gram_matrix(const GroupSpec& spec, int degree, const Strategy& s) {
  const Integrator& I = integrator(spec);
  Alphabet alpha(spec);
  GramResult g;
  g.basis = monomials_up_to(alpha, degree);
  const int n = int(g.basis.size());
  g.exact_matrix = Matrix<Q>(n, n);
  g.numeric = Matrix<C>(n, n);
  std::vector<SuperPolynomial> fs;
  for (const auto& b : g.basis) {
    SuperPolynomial p(spec);
    p.add_term(b, Q(1));
    fs.push_back(std::move(p));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      IntegralResult r = I.integrate(fs[a] * fs[b], s);
      g.exact = g.exact && r.is_exact();
      g.exact_matrix(a, b) = r.exact;
      g.numeric(a, b) = r.estimate;
    }
  g.rank = g.exact ? exact_rank(g.exact_matrix) : numeric_rank(g.numeric);
  return g;
}

}  // namespace superhaar
