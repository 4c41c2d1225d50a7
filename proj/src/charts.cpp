#include "superhaar/charts.hpp"

#include <cstring>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace superhaar {

int theta_generator(const GroupSpec& spec, int j, int k) {
  if (spec.kind == GroupKind::U) throw std::logic_error("theta coordinates need OSp or UOSp");
  if (spec.kind == GroupKind::UOSp) {
    const int n = spec.b;
    const int r = (j % n) * spec.a + k;
    return j < n ? 2 * r + 1 : 2 * r + 2;
  }
  return j * spec.a + k + 1;
}

int psi_generator(const GroupSpec& spec, int j, int k, int part) {
  if (spec.kind != GroupKind::U) throw std::logic_error("psi coordinates need U(p|q)");
  return 2 * (j * spec.a + k) + part;
}

namespace {

void append_coeff(std::string& s, const C& c) {
  char buf[sizeof(C)];
  std::memcpy(buf, &c, sizeof(C));
  s.append(buf, sizeof(C));
}

void append_coeff(std::string& s, const Q& c) {
  s += c.str();
  s += ';';
}

template <class T>
std::string cache_key(const GroupSpec& spec, const GMatrix<T>& odd) {
  std::string s = spec.str() + "|" + std::to_string(odd.rows()) + "x" + std::to_string(odd.cols()) + "|";
  for (const auto& g : odd.data()) {
    s += std::to_string(g.num_generators()) + ":";
    for (const auto& t : g.terms()) {
      s.append(reinterpret_cast<const char*>(&t.first), sizeof(t.first));
      append_coeff(s, t.second);
    }
    s += '/';
  }
  return s;
}

struct AnyCache {
  std::mutex mu;
  std::unordered_map<std::string, std::shared_ptr<const void>> map;
};

AnyCache& ab_cache() {
  static AnyCache c;
  return c;
}

constexpr std::size_t kCacheLimit = 512;

template <class T>
GMatrix<T> conj_t(const GMatrix<T>& m, Conjugation conv) {
  return conj_transpose(m, conv);
}

}  // namespace

std::size_t ab_cache_size() {
  std::lock_guard<std::mutex> lk(ab_cache().mu);
  return ab_cache().map.size();
}

void ab_cache_clear() {
  std::lock_guard<std::mutex> lk(ab_cache().mu);
  ab_cache().map.clear();
}

template <class T>
std::shared_ptr<const ABMatrices<T>> ab_matrices(const GroupSpec& spec, const GMatrix<T>& odd) {
  const std::string key = std::string(Ring<T>::exact ? "Q" : "C") + cache_key(spec, odd);
  auto& cache = ab_cache();
  {
    std::lock_guard<std::mutex> lk(cache.mu);
    auto it = cache.map.find(key);
    if (it != cache.map.end()) return std::static_pointer_cast<const ABMatrices<T>>(it->second);
  }
  const int gens = detail::generators_of(odd);
  const int rows = odd.rows(), cols = odd.cols();
  GMatrix<T> hat = odd_hat(spec, odd);
  GMatrix<T> left = hat * odd, right = odd * hat;
  if (spec.kind == GroupKind::U) {
    const T iu = Ring<T>::unit_i();
    left = left.scaled(iu);
    right = right.scaled(iu);
  }
  auto r = std::make_shared<ABMatrices<T>>();
  r->A = sqrt_block(GMatrix<T>(identity_g<T>(cols, gens) - left));
  r->B = sqrt_block(GMatrix<T>(identity_g<T>(rows, gens) - right));
  r->Ainv = inverse_block(r->A);
  r->Binv = inverse_block(r->B);
  std::lock_guard<std::mutex> lk(cache.mu);
  if (cache.map.size() >= kCacheLimit) cache.map.clear();
  cache.map.emplace(key, r);
  return r;
}

template <class T>
SuperMatrix<T> embed(const GroupSpec& spec, const SuperPoint<T>& p) {
  const int m = spec.even_dim(), k = spec.odd_dim();
  if (p.x.rows() != m || p.x.cols() != m || p.y.rows() != k || p.y.cols() != k || p.odd.rows() != k ||
      p.odd.cols() != m)
    throw std::invalid_argument("point has wrong shape for " + spec.name());
  auto ab = ab_matrices(spec, p.odd);
  GMatrix<T> hat = odd_hat(spec, p.odd);
  GMatrix<T> x12 = p.x * hat * p.y;
  if (spec.kind == GroupKind::U) x12 = x12.scaled(Ring<T>::unit_i());
  return SuperMatrix<T>::from_blocks(p.x * ab->A, x12, p.odd, ab->B * p.y);
}

template <class T>
RelationReport check_defining_relations(const GroupSpec& spec, const SuperMatrix<T>& X) {
  const int m = spec.even_dim(), k = spec.odd_dim();
  if (X.k() != m || X.l() != k) throw std::invalid_argument("supermatrix has wrong shape for " + spec.name());
  const int gens = X.generators();
  GMatrix<T> X11 = X.block11(), X12 = X.block12(), X21 = X.block21(), X22 = X.block22();
  GMatrix<T> Im = identity_g<T>(m, gens), Ik = identity_g<T>(k, gens);
  RelationReport rep;
  auto add = [&](const std::string& name, const GMatrix<T>& r) { rep.residuals.emplace_back(name, norm_inf(r)); };
  if (spec.kind == GroupKind::U) {
    const T iu = Ring<T>::unit_i();
    const Conjugation cv = Conjugation::RealGenerators;
    GMatrix<T> a11 = conj_t(X11, cv), a12 = conj_t(X12, cv), a21 = conj_t(X21, cv), a22 = conj_t(X22, cv);
    add("even-even", a11 * X11 + (a21 * X21).scaled(iu) - Im);
    add("even-odd", -(a11 * X12) + (a21 * X22).scaled(iu));
    add("odd-odd", -(a12 * X12) + (a22 * X22).scaled(iu) - Ik.scaled(iu));
    return rep;
  }
  GMatrix<T> J = lift(as_ring<T>(symplectic_J(spec.b)), gens);
  GMatrix<T> t11 = X11.transpose(), t12 = X12.transpose(), t21 = X21.transpose(), t22 = X22.transpose();
  add("even-even", t11 * X11 + t21 * J * X21 - Im);
  add("even-odd", -(t11 * X12) + t21 * J * X22);
  add("odd-odd", -(t12 * X12) + t22 * J * X22 - J);
  if (spec.kind == GroupKind::UOSp) {
    const Conjugation cv = Conjugation::SecondKind;
    GMatrix<T> a11 = conj_t(X11, cv), a12 = conj_t(X12, cv), a21 = conj_t(X21, cv), a22 = conj_t(X22, cv);
    add("unitary even-even", a11 * X11 + a21 * X21 - Im);
    add("unitary even-odd", -(a11 * X12) + a21 * X22);
    add("unitary odd-even", a12 * X11 + a22 * X21);
    add("unitary odd-odd", -(a12 * X12) + a22 * X22 - Ik);
  }
  return rep;
}

template <class T>
double classical_relation_residual(const GroupSpec& spec, const GMatrix<T>& x, const GMatrix<T>& y) {
  const int gens = std::max(detail::generators_of(x), detail::generators_of(y));
  GMatrix<T> Im = identity_g<T>(x.rows(), gens), Ik = identity_g<T>(y.rows(), gens);
  double r = 0;
  if (spec.kind == GroupKind::U) {
    const Conjugation cv = Conjugation::RealGenerators;
    r = std::max(r, norm_inf(GMatrix<T>(conj_t(x, cv) * x - Im)));
    r = std::max(r, norm_inf(GMatrix<T>(conj_t(y, cv) * y - Ik)));
    return r;
  }
  GMatrix<T> J = lift(as_ring<T>(symplectic_J(spec.b)), gens);
  r = std::max(r, norm_inf(GMatrix<T>(x.transpose() * x - Im)));
  r = std::max(r, norm_inf(GMatrix<T>(y.transpose() * J * y - J)));
  if (spec.kind == GroupKind::UOSp) {
    const Conjugation cv = Conjugation::SecondKind;
    r = std::max(r, norm_inf(GMatrix<T>(conj_t(x, cv) * x - Im)));
    r = std::max(r, norm_inf(GMatrix<T>(conj_t(y, cv) * y - Ik)));
  }
  return r;
}

template <class T>
SuperPoint<T> decompose(const GroupSpec& spec, const SuperMatrix<T>& X, double tol) {
  if (X.k() != spec.even_dim() || X.l() != spec.odd_dim())
    throw std::invalid_argument("supermatrix has wrong shape for " + spec.name());
  if (!X.parity_consistent()) throw std::domain_error("decompose: supermatrix is not even");
  SuperPoint<T> p;
  p.odd = X.block21();
  auto ab = ab_matrices(spec, p.odd);
  p.x = X.block11() * ab->Ainv;
  p.y = ab->Binv * X.block22();
  GMatrix<T> x12 = p.x * odd_hat(spec, p.odd) * p.y;
  if (spec.kind == GroupKind::U) x12 = x12.scaled(Ring<T>::unit_i());
  const double mismatch = norm_inf(GMatrix<T>(x12 - X.block12()));
  if (mismatch > tol) {
    std::ostringstream os;
    os << "decompose: upper-right block does not match the chart (residual " << mismatch << ")";
    throw std::domain_error(os.str());
  }
  const double cl = classical_relation_residual(spec, p.x, p.y);
  if (cl > tol) {
    std::ostringstream os;
    os << "decompose: classical factors leave the group (residual " << cl << ")";
    throw std::domain_error(os.str());
  }
  return p;
}

template <class T>
SuperMatrix<T> antipode(const GroupSpec& spec, const SuperMatrix<T>& X) {
  const int gens = X.generators();
  GMatrix<T> X11 = X.block11(), X12 = X.block12(), X21 = X.block21(), X22 = X.block22();
  if (spec.kind == GroupKind::U) {
    const T iu = Ring<T>::unit_i();
    const Conjugation cv = Conjugation::RealGenerators;
    return SuperMatrix<T>::from_blocks(conj_t(X11, cv), conj_t(X21, cv).scaled(-iu), conj_t(X12, cv).scaled(-iu),
                                       conj_t(X22, cv));
  }
  GMatrix<T> J = lift(as_ring<T>(symplectic_J(spec.b)), gens);
  return SuperMatrix<T>::from_blocks(X11.transpose(), -(X21.transpose() * J), -(J * X12.transpose()),
                                     -(J * X22.transpose() * J));
}

template <class T>
SuperPoint<T> left_translate(const GroupSpec& spec, const ClassicalPoint<T>& g, const SuperPoint<T>& p) {
  (void)spec;
  GMatrix<T> gx = lift(g.x), gy = lift(g.y);
  return {gx * p.x, gy * p.y, gy * p.odd};
}

#define SUPERHAAR_CHARTS(T)                                                                              \
  template std::shared_ptr<const ABMatrices<T>> ab_matrices(const GroupSpec&, const GMatrix<T>&);       \
  template SuperMatrix<T> embed(const GroupSpec&, const SuperPoint<T>&);                                 \
  template RelationReport check_defining_relations(const GroupSpec&, const SuperMatrix<T>&);            \
  template double classical_relation_residual(const GroupSpec&, const GMatrix<T>&, const GMatrix<T>&);  \
  template SuperPoint<T> decompose(const GroupSpec&, const SuperMatrix<T>&, double);                    \
  template SuperMatrix<T> antipode(const GroupSpec&, const SuperMatrix<T>&);                             \
  template SuperPoint<T> left_translate(const GroupSpec&, const ClassicalPoint<T>&, const SuperPoint<T>&);

SUPERHAAR_CHARTS(Q)
SUPERHAAR_CHARTS(C)

}  // namespace superhaar
