#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "superhaar/coefficient.hpp"

namespace superhaar {

enum class Parity { Even, Odd, Mixed };
enum class Conjugation { None, RealGenerators, SecondKind };
enum class Series { Sqrt, InvSqrt, Inverse, Log, Exp };

using Blade = std::uint32_t;

inline constexpr int kMaxGenerators = 24;

// Sign of merging blade a in front of blade b into increasing order.
namespace detail {
// Plain complex product; std::complex's operator* takes the slow Annex G path.
template <class T>
inline T fast_mul(const T& a, const T& b) {
  return a * b;
}
inline C fast_mul(const C& a, const C& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}
}  // namespace detail

// Bit j set iff a has an odd number of bits above j.
inline Blade parity_above(Blade a) {
  Blade x = a >> 1;
  x ^= x >> 1;
  x ^= x >> 2;
  x ^= x >> 4;
  x ^= x >> 8;
  x ^= x >> 16;
  return x;
}

inline int koszul_sign(Blade a, Blade b) { return (std::popcount(b & parity_above(a)) & 1) ? -1 : 1; }

inline Blade generator_bit(int i) { return Blade(1) << (i - 1); }

// Element of the Grassmann algebra on N generators with coefficients in T.
// Terms are kept sorted by blade with no stored zeros. An element with N = 0
// is a plain scalar and combines with elements of any N.
template <class T>
class Grassmann {
 public:
  using Term = std::pair<Blade, T>;

  Grassmann() = default;
  explicit Grassmann(int n) : n_(n) { check_n(n); }
  Grassmann(int n, const T& scalar) : n_(n) {
    check_n(n);
    if (!is_zero_coeff(scalar)) terms_.emplace_back(0, scalar);
  }

  static Grassmann generator(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("generator index out of range");
    Grassmann g(n);
    g.terms_.emplace_back(generator_bit(i), Ring<T>::from_int(1));
    return g;
  }

  static Grassmann blade(int n, Blade b, const T& c) {
    Grassmann g(n);
    if (n < 32 && (b >> n) != 0) throw std::out_of_range("blade outside algebra");
    if (!is_zero_coeff(c)) g.terms_.emplace_back(b, c);
    return g;
  }

  // Builds from arbitrary (blade, coeff) pairs, merging duplicates.
  static Grassmann from_terms(int n, std::vector<Term> terms) {
    Grassmann g(n);
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    for (auto& t : terms) {
      if (n < 32 && (t.first >> n) != 0) throw std::out_of_range("blade outside algebra");
      if (!g.terms_.empty() && g.terms_.back().first == t.first) {
        g.terms_.back().second += t.second;
      } else {
        g.terms_.push_back(std::move(t));
      }
    }
    g.prune();
    return g;
  }

  int num_generators() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  T coeff(Blade b) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), b,
                               [](const Term& t, Blade x) { return t.first < x; });
    if (it != terms_.end() && it->first == b) return it->second;
    return T{};
  }
  T body() const { return coeff(0); }

  Parity parity() const {
    bool ev = false, od = false;
    for (const auto& t : terms_) (std::popcount(t.first) & 1 ? od : ev) = true;
    if (ev && od) return Parity::Mixed;
    return od ? Parity::Odd : Parity::Even;
  }
  bool is_even() const { return parity() == Parity::Even; }
  bool is_odd() const { return is_zero() || parity() == Parity::Odd; }

  Grassmann soul() const {
    Grassmann r = *this;
    if (!r.terms_.empty() && r.terms_.front().first == 0) r.terms_.erase(r.terms_.begin());
    return r;
  }

  double norm_inf() const {
    double m = 0;
    for (const auto& t : terms_) m = std::max(m, magnitude(t.second));
    return m;
  }

  // Same element viewed in a larger algebra, generator i mapped to i + shift.
  Grassmann extend(int n_new, int shift = 0) const {
    if (n_new < n_ + shift) throw std::invalid_argument("extend: algebra too small");
    Grassmann r(n_new);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first << shift, t.second);
    return r;
  }

  template <class F>
  auto map_coeffs(F f) const {
    using U = decltype(f(std::declval<T>()));
    Grassmann<U> r(n_);
    std::vector<std::pair<Blade, U>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.emplace_back(t.first, f(t.second));
    return Grassmann<U>::from_terms(n_, std::move(out));
  }

  Grassmann operator-() const {
    Grassmann r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  Grassmann& operator+=(const Grassmann& o) { return *this = combine(*this, o, false); }
  Grassmann& operator-=(const Grassmann& o) { return *this = combine(*this, o, true); }
  Grassmann& operator*=(const Grassmann& o) { return *this = multiply(*this, o); }
  Grassmann& operator*=(const T& s) {
    if (is_zero_coeff(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= s;
    prune();
    return *this;
  }

  friend Grassmann operator+(const Grassmann& a, const Grassmann& b) { return combine(a, b, false); }
  friend Grassmann operator-(const Grassmann& a, const Grassmann& b) { return combine(a, b, true); }
  friend Grassmann operator*(const Grassmann& a, const Grassmann& b) { return multiply(a, b); }
  friend Grassmann operator*(Grassmann a, const T& s) { return a *= s; }
  friend Grassmann operator*(const T& s, Grassmann a) { return a *= s; }
  friend bool operator==(const Grassmann& a, const Grassmann& b) {
    return (a.n_ == b.n_ || a.n_ == 0 || b.n_ == 0 || (a.is_zero() && b.is_zero())) &&
           a.terms_ == b.terms_;
  }
  friend bool operator!=(const Grassmann& a, const Grassmann& b) { return !(a == b); }

  static int common_n(const Grassmann& a, const Grassmann& b) {
    if (a.n_ == b.n_ || b.n_ == 0) return a.n_;
    if (a.n_ == 0) return b.n_;
    throw std::invalid_argument("mismatched number of generators");
  }

 private:
  static void check_n(int n) {
    if (n < 0 || n > kMaxGenerators) throw std::invalid_argument("unsupported number of generators");
  }
  static bool is_zero_coeff(const T& c) { return superhaar::is_zero(c); }

  void prune() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return is_zero_coeff(t.second); }),
                 terms_.end());
  }

  static Grassmann combine(const Grassmann& a, const Grassmann& b, bool subtract) {
    Grassmann r(common_n(a, b));
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        r.terms_.emplace_back(j->first, subtract ? -j->second : j->second);
        ++j;
      } else {
        T c = subtract ? i->second - j->second : i->second + j->second;
        if (!is_zero_coeff(c)) r.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  static Grassmann multiply(const Grassmann& a, const Grassmann& b) {
    const int n = common_n(a, b);
    Grassmann r(n);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1 && a.terms_[0].first == 0) {
      r = b;
      r.n_ = n;
      for (auto& t : r.terms_) t.second = a.terms_[0].second * t.second;
      r.prune();
      return r;
    }
    if (b.terms_.size() == 1 && b.terms_[0].first == 0) {
      r = a;
      r.n_ = n;
      for (auto& t : r.terms_) t.second *= b.terms_[0].second;
      r.prune();
      return r;
    }
    const double pairs = double(a.terms_.size()) * double(b.terms_.size());
    if (n <= 16 && pairs * 4 >= double(std::size_t(1) << n)) return multiply_dense(a, b, n);

    std::vector<Term> out;
    out.reserve(std::min<double>(pairs, 1 << 20));
    for (const auto& [ba, ca] : a.terms_) {
      for (const auto& [bb, cb] : b.terms_) {
        if (ba & bb) continue;
        T c = ca * cb;
        if (koszul_sign(ba, bb) < 0) c = -c;
        out.emplace_back(ba | bb, std::move(c));
      }
    }
    return from_terms(n, std::move(out));
  }

  // Dense accumulator; for each term of a, either scans b or enumerates the
  // complementary submasks against a dense lookup of b, whichever is shorter.
  static Grassmann multiply_dense(const Grassmann& a, const Grassmann& b, int n) {
    const std::size_t full = std::size_t(1) << n;
    const Blade mask = Blade(full - 1);
    std::vector<T> acc(full);
    std::vector<char> hit(full, 0);
    std::vector<const T*> lookup(full, nullptr);
    for (const auto& t : b.terms_) lookup[t.first] = &t.second;
    for (const auto& [ba, ca] : a.terms_) {
      const Blade comp = mask & ~ba;
      const Blade above = parity_above(ba);
      const std::size_t sub_count = std::size_t(1) << std::popcount(comp);
      auto add = [&](Blade bb, const T& cb) {
        T c = detail::fast_mul(ca, cb);
        Blade res = ba | bb;
        if (std::popcount(bb & above) & 1) {
          acc[res] -= c;
        } else {
          acc[res] += c;
        }
        hit[res] = 1;
      };
      if (sub_count < b.terms_.size()) {
        for (Blade s = comp;; s = (s - 1) & comp) {
          if (lookup[s]) add(s, *lookup[s]);
          if (s == 0) break;
        }
      } else {
        for (const auto& [bb, cb] : b.terms_)
          if (!(ba & bb)) add(bb, cb);
      }
    }
    Grassmann r(n);
    for (std::size_t k = 0; k < full; ++k)
      if (hit[k] && !is_zero_coeff(acc[k])) r.terms_.emplace_back(Blade(k), std::move(acc[k]));
    return r;
  }

  template <class U>
  friend Grassmann<U> partial(int i, const Grassmann<U>& f);
  template <class U>
  friend Grassmann<U> conjugate(const Grassmann<U>& f, Conjugation conv);

  int n_ = 0;
  std::vector<Term> terms_;
};

// Left derivative with respect to generator i (1-based).
template <class T>
Grassmann<T> partial(int i, const Grassmann<T>& f) {
  const int n = f.num_generators();
  if (i < 1 || i > n) throw std::out_of_range("derivative index out of range");
  const Blade bit = generator_bit(i);
  Grassmann<T> r(n);
  for (const auto& [b, c] : f.terms_) {
    if (!(b & bit)) continue;
    if (std::popcount(b & (bit - 1)) & 1) {
      r.terms_.emplace_back(b ^ bit, -c);
    } else {
      r.terms_.emplace_back(b ^ bit, c);
    }
  }
  return r;
}

// Composes the left derivatives in the given order; ordering[0] acts first.
template <class T>
T berezin(const Grassmann<T>& f, const std::vector<int>& ordering) {
  const int n = f.num_generators();
  if (int(ordering.size()) != n) throw std::invalid_argument("ordering is not a permutation");
  Blade seen = 0;
  for (int g : ordering) {
    if (g < 1 || g > n || (seen & generator_bit(g)))
      throw std::invalid_argument("ordering is not a permutation");
    seen |= generator_bit(g);
  }
  Blade blade = seen;
  int sign = 1;
  for (int g : ordering) {
    const Blade bit = generator_bit(g);
    if (std::popcount(blade & (bit - 1)) & 1) sign = -sign;
    blade ^= bit;
  }
  T top = f.coeff(seen);
  return sign < 0 ? T(-top) : top;
}

template <class T>
std::vector<int> identity_ordering(int n) {
  std::vector<int> o(n);
  for (int i = 0; i < n; ++i) o[i] = i + 1;
  return o;
}

template <class T>
Grassmann<T> conjugate(const Grassmann<T>& f, Conjugation conv) {
  const int n = f.num_generators();
  Grassmann<T> r(n);
  if (conv == Conjugation::None) throw std::invalid_argument("no conjugation registered");
  if (conv == Conjugation::RealGenerators) {
    r.terms_.reserve(f.size());
    for (const auto& [b, c] : f.terms_) r.terms_.emplace_back(b, conj(c));
    return r;
  }
  if (n % 2 != 0) throw std::invalid_argument("second-kind conjugation needs paired generators");
  constexpr Blade lo = 0x55555555u;
  constexpr Blade hi = 0xAAAAAAAAu;
  std::vector<typename Grassmann<T>::Term> out;
  out.reserve(f.size());
  for (const auto& [b, c] : f.terms_) {
    const Blade image = ((b & lo) << 1) | ((b & hi) >> 1);
    int flips = std::popcount(b & hi) + std::popcount(b & (b >> 1) & lo);
    T v = conj(c);
    if (flips & 1) v = -v;
    out.emplace_back(image, std::move(v));
  }
  return Grassmann<T>::from_terms(n, std::move(out));
}

// Coefficients of sum_k c_k u^k for the nilpotent part u = f/body - 1.
template <class T>
std::vector<T> series_coefficients(Series s, int count) {
  std::vector<T> c(count);
  switch (s) {
    case Series::Sqrt:
    case Series::InvSqrt: {
      const long num = (s == Series::Sqrt) ? 1 : -1;
      c[0] = Ring<T>::from_int(1);
      for (int k = 1; k < count; ++k)
        c[k] = c[k - 1] * Ring<T>::frac(num - 2 * (k - 1), 2 * k);
      break;
    }
    case Series::Inverse:
      for (int k = 0; k < count; ++k) c[k] = Ring<T>::from_int(k % 2 ? -1 : 1);
      break;
    case Series::Log:
      c[0] = T{};
      for (int k = 1; k < count; ++k) c[k] = Ring<T>::frac(k % 2 ? 1 : -1, k);
      break;
    case Series::Exp:
      c[0] = Ring<T>::from_int(1);
      for (int k = 1; k < count; ++k) c[k] = c[k - 1] * Ring<T>::frac(1, k);
      break;
  }
  return c;
}

namespace detail {
inline Q scalar_sqrt(const Q& b) { return sqrt_exact(b); }
inline C scalar_sqrt(const C& b) { return sqrt_exact(b); }
Q scalar_log(const Q& b);
C scalar_log(const C& b);
Q scalar_exp(const Q& b);
C scalar_exp(const C& b);
}  // namespace detail

template <class T>
Grassmann<T> nilpotent_series(const Grassmann<T>& f, Series s) {
  if (!f.is_even()) throw std::domain_error("nilpotent series needs an even element");
  const int n = f.num_generators();
  const T one = Ring<T>::from_int(1);
  const T b = f.body();
  const int count = n / 2 + 2;

  auto power_sum = [&](const Grassmann<T>& u, const std::vector<T>& c) {
    Grassmann<T> acc(n, c[0]);
    Grassmann<T> p(n, one);
    for (std::size_t k = 1; k < c.size(); ++k) {
      p = p * u;
      if (p.is_zero()) break;
      acc += p * c[k];
    }
    return acc;
  };

  if (s == Series::Exp) {
    return power_sum(f.soul(), series_coefficients<T>(Series::Exp, count)) * detail::scalar_exp(b);
  }
  if (is_zero(b)) throw std::domain_error("body is not invertible");
  const Grassmann<T> u = f.soul() * (one / b);
  switch (s) {
    case Series::Sqrt:
      return power_sum(u, series_coefficients<T>(s, count)) * detail::scalar_sqrt(b);
    case Series::InvSqrt:
      return power_sum(u, series_coefficients<T>(s, count)) * (one / detail::scalar_sqrt(b));
    case Series::Inverse:
      return power_sum(u, series_coefficients<T>(s, count)) * (one / b);
    case Series::Log:
      return power_sum(u, series_coefficients<T>(s, count)) + Grassmann<T>(n, detail::scalar_log(b));
    default:
      break;
  }
  throw std::logic_error("unreachable");
}

template <class T>
Grassmann<T> sqrt(const Grassmann<T>& f) { return nilpotent_series(f, Series::Sqrt); }
template <class T>
Grassmann<T> inverse(const Grassmann<T>& f) { return nilpotent_series(f, Series::Inverse); }
template <class T>
Grassmann<T> log(const Grassmann<T>& f) { return nilpotent_series(f, Series::Log); }
template <class T>
Grassmann<T> exp(const Grassmann<T>& f) { return nilpotent_series(f, Series::Exp); }

template <class T>
Grassmann<C> to_complex(const Grassmann<T>& f) {
  return f.map_coeffs([](const T& c) { return to_complex(c); });
}

using GQ = Grassmann<Q>;
using GC = Grassmann<C>;

}  // namespace superhaar
