#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace superhaar {

// Gaussian rational a + b i with a, b in Q.
struct GaussRational {
  mpq_class re;
  mpq_class im;

  GaussRational() : re(0), im(0) {}
  GaussRational(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static GaussRational frac(long num, long den) { return GaussRational(mpq_class(num, den)); }
  static GaussRational unit_i() { return GaussRational(0, 1); }

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    if (im == 0 && o.im == 0) {
      re *= o.re;
      return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    mpq_class d = o.re * o.re + o.im * o.im;
    if (d == 0) throw std::domain_error("division by zero");
    mpq_class r = (re * o.re + im * o.im) / d;
    mpq_class i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussRational operator-() const { return GaussRational(-re, -im); }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const GaussRational& q);

using Q = GaussRational;
using C = std::complex<double>;

inline bool is_zero(const Q& q) { return sgn(q.re) == 0 && sgn(q.im) == 0; }
inline bool is_zero(const C& c) { return c.real() == 0.0 && c.imag() == 0.0; }

inline Q conj(const Q& q) { return Q(q.re, -q.im); }
inline C conj(const C& c) { return std::conj(c); }

inline C to_complex(const Q& q) { return {q.re.get_d(), q.im.get_d()}; }
inline C to_complex(const C& c) { return c; }

inline double magnitude(const Q& q) { return std::abs(to_complex(q)); }
inline double magnitude(const C& c) { return std::abs(c); }

// Scalar construction helpers shared by both rings.
template <class T>
struct Ring;

template <>
struct Ring<Q> {
  static constexpr bool exact = true;
  static Q frac(long num, long den) { return Q::frac(num, den); }
  static Q unit_i() { return Q::unit_i(); }
  static Q from_int(long v) { return Q(v); }
};

template <>
struct Ring<C> {
  static constexpr bool exact = false;
  static C frac(long num, long den) { return C(double(num) / double(den), 0.0); }
  static C unit_i() { return C(0.0, 1.0); }
  static C from_int(long v) { return C(double(v), 0.0); }
};

// Principal square root, only for rings where it is representable.
Q sqrt_exact(const Q& q);
C sqrt_exact(const C& c);

}  // namespace superhaar
