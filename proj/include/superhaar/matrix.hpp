#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "superhaar/grassmann.hpp"
#include "superhaar/json_io.hpp"

namespace superhaar {

// Dense row-major matrix over a (super)commutative ring element type E.
template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const E& fill = E{}) : r_(rows), c_(cols), a_(std::size_t(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
  }

  static Matrix identity(int n, const E& one) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  E& operator()(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
  const E& operator()(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }
  const std::vector<E>& data() const { return a_; }

  template <class F>
  auto map(F f) const {
    using U = decltype(f(std::declval<E>()));
    Matrix<U> m(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > r_ || c0 + nc > c_) throw std::out_of_range("block out of range");
    Matrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(int r0, int c0, const Matrix& b) {
    if (r0 + b.rows() > r_ || c0 + b.cols() > c_) throw std::out_of_range("block out of range");
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  static Matrix from_blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
      throw std::invalid_argument("incompatible blocks");
    Matrix m(a.rows() + c.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    m.set_block(a.rows(), 0, c);
    m.set_block(a.rows(), a.cols(), d);
    return m;
  }

  Matrix operator-() const { return map([](const E& e) { return E(-e); }); }

  friend Matrix operator+(const Matrix& x, const Matrix& y) { return zip(x, y, std::plus<>()); }
  friend Matrix operator-(const Matrix& x, const Matrix& y) { return zip(x, y, std::minus<>()); }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix p(x.r_, y.c_);
    for (int i = 0; i < x.r_; ++i)
      for (int j = 0; j < y.c_; ++j) {
        E acc{};
        for (int k = 0; k < x.c_; ++k) acc += x(i, k) * y(k, j);
        p(i, j) = std::move(acc);
      }
    return p;
  }

  template <class S>
  Matrix scaled(const S& s) const {
    return map([&](const E& e) { return E(e * s); });
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }

 private:
  template <class Op>
  static Matrix zip(const Matrix& x, const Matrix& y, Op op) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix z(x.r_, x.c_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) z.a_[k] = op(x.a_[k], y.a_[k]);
    return z;
  }

  int r_ = 0, c_ = 0;
  std::vector<E> a_;
};

template <class T>
using GMatrix = Matrix<Grassmann<T>>;

template <class T>
GMatrix<T> lift(const Matrix<T>& m, int n = 0) {
  return m.map([n](const T& v) { return Grassmann<T>(n, v); });
}

template <class T>
Matrix<T> body(const GMatrix<T>& m) {
  return m.map([](const Grassmann<T>& g) { return g.body(); });
}

template <class T>
double norm_inf(const GMatrix<T>& m) {
  double r = 0;
  for (const auto& g : m.data()) r = std::max(r, g.norm_inf());
  return r;
}

template <class T>
double norm_inf(const Matrix<T>& m) {
  double r = 0;
  for (const auto& v : m.data()) r = std::max(r, magnitude(v));
  return r;
}

template <class T>
GMatrix<T> identity_g(int n, int gens = 0) {
  return GMatrix<T>::identity(n, Grassmann<T>(gens, Ring<T>::from_int(1)));
}

// Scalar Gauss-Jordan elimination; exact over Q, partial pivoting over C.
template <class T>
Matrix<T> scalar_inverse(const Matrix<T>& m, T* det_out = nullptr) {
  const int n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  Matrix<T> a = m, inv(n, n);
  for (int i = 0; i < n; ++i) inv(i, i) = Ring<T>::from_int(1);
  T det = Ring<T>::from_int(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = -1;
    for (int r = col; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      double mag = magnitude(a(r, col));
      if (Ring<T>::exact) {
        piv = r;
        break;
      }
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (piv < 0) throw std::domain_error("singular body");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
      det = -det;
    }
    const T p = a(col, col);
    det *= p;
    const T pinv = Ring<T>::from_int(1) / p;
    for (int j = 0; j < n; ++j) {
      a(col, j) *= pinv;
      inv(col, j) *= pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col))) continue;
      const T f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  if (det_out) *det_out = det;
  return inv;
}

namespace detail {
// sum_k c_k Z^k for a matrix Z with nilpotent entries.
template <class T>
GMatrix<T> matrix_series(const GMatrix<T>& z, const std::vector<T>& c, int gens) {
  const int n = z.rows();
  GMatrix<T> acc = identity_g<T>(n, gens).scaled(c[0]);
  GMatrix<T> p = identity_g<T>(n, gens);
  for (std::size_t k = 1; k < c.size(); ++k) {
    p = p * z;
    if (norm_inf(p) == 0) break;
    acc = acc + p.scaled(c[k]);
  }
  return acc;
}

template <class T>
int generators_of(const GMatrix<T>& m) {
  int n = 0;
  for (const auto& g : m.data()) n = std::max(n, g.num_generators());
  return n;
}

template <class T>
void require_unit_body(const GMatrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("square matrix required");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const T b = m(i, j).body();
      const T want = Ring<T>::from_int(i == j ? 1 : 0);
      if (Ring<T>::exact ? !(b == want) : magnitude(b - want) > 1e-12)
        throw std::domain_error("matrix body is not the identity");
    }
}
}  // namespace detail

// sqrt(I + Z) = sum_k binom(1/2, k) Z^k; the input body must be the identity.
template <class T>
GMatrix<T> sqrt_block(const GMatrix<T>& m) {
  detail::require_unit_body(m);
  const int gens = detail::generators_of(m);
  GMatrix<T> z = m - identity_g<T>(m.rows(), gens);
  return detail::matrix_series(z, series_coefficients<T>(Series::Sqrt, gens / 2 + 2), gens);
}

template <class T>
GMatrix<T> log_block(const GMatrix<T>& m) {
  detail::require_unit_body(m);
  const int gens = detail::generators_of(m);
  GMatrix<T> z = m - identity_g<T>(m.rows(), gens);
  return detail::matrix_series(z, series_coefficients<T>(Series::Log, gens / 2 + 2), gens);
}

// Inverse of a matrix whose body is invertible.
template <class T>
GMatrix<T> inverse_block(const GMatrix<T>& m) {
  const int gens = detail::generators_of(m);
  Matrix<T> binv = scalar_inverse(body(m));
  GMatrix<T> bi = lift(binv, gens);
  GMatrix<T> u = bi * m;
  GMatrix<T> z = u - identity_g<T>(m.rows(), gens);
  GMatrix<T> uinv = detail::matrix_series(z, series_coefficients<T>(Series::Inverse, gens / 2 + 2), gens);
  return uinv * bi;
}

// Determinant of an even-entry matrix via det(b) exp(tr log(b^{-1} M)).
template <class T>
Grassmann<T> det_even(const GMatrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  for (const auto& g : m.data())
    if (!g.is_even()) throw std::domain_error("det_even needs even entries");
  const int gens = detail::generators_of(m);
  T d;
  Matrix<T> binv = scalar_inverse(body(m), &d);
  GMatrix<T> u = lift(binv, gens) * m;
  GMatrix<T> lg = log_block(u);
  Grassmann<T> tr(gens);
  for (int i = 0; i < m.rows(); ++i) tr += lg(i, i);
  return exp(tr) * d;
}

// Block matrix with even blocks (1..k, k+1..k+l) and odd off-diagonal blocks.
template <class T>
class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(int k, int l, GMatrix<T> m) : k_(k), l_(l), m_(std::move(m)) {
    if (m_.rows() != k + l || m_.cols() != k + l) throw std::invalid_argument("supermatrix size mismatch");
  }

  static SuperMatrix from_blocks(const GMatrix<T>& a, const GMatrix<T>& b, const GMatrix<T>& c,
                                 const GMatrix<T>& d) {
    return SuperMatrix(a.rows(), d.rows(), GMatrix<T>::from_blocks(a, b, c, d));
  }
  static SuperMatrix identity(int k, int l, int gens = 0) {
    return SuperMatrix(k, l, identity_g<T>(k + l, gens));
  }

  int k() const { return k_; }
  int l() const { return l_; }
  int size() const { return k_ + l_; }
  int parity_of(int idx) const { return idx < k_ ? 0 : 1; }  // 0-based index
  const GMatrix<T>& matrix() const { return m_; }
  Grassmann<T>& operator()(int i, int j) { return m_(i, j); }
  const Grassmann<T>& operator()(int i, int j) const { return m_(i, j); }
  int generators() const { return detail::generators_of(m_); }

  GMatrix<T> block11() const { return m_.block(0, 0, k_, k_); }
  GMatrix<T> block12() const { return m_.block(0, k_, k_, l_); }
  GMatrix<T> block21() const { return m_.block(k_, 0, l_, k_); }
  GMatrix<T> block22() const { return m_.block(k_, k_, l_, l_); }

  bool parity_consistent() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        const auto& e = m_(i, j);
        if ((parity_of(i) + parity_of(j)) % 2 ? !e.is_odd() : !e.is_even()) return false;
      }
    return true;
  }

  bool odd_consistent() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        const auto& e = m_(i, j);
        if ((parity_of(i) + parity_of(j)) % 2 ? !e.is_even() : !e.is_odd()) return false;
      }
    return true;
  }

  // (X^T)_{ki} = (-1)^{([i]+|X|)([i]+[k])} X_{ik}; |X| = 0 for parity-consistent X.
  SuperMatrix supertranspose() const {
    const int px = (!parity_consistent() && odd_consistent()) ? 1 : 0;
    GMatrix<T> t(size(), size());
    for (int i = 0; i < size(); ++i)
      for (int k = 0; k < size(); ++k) {
        const int s = (parity_of(i) + px) * (parity_of(i) + parity_of(k));
        t(k, i) = s % 2 ? -m_(i, k) : m_(i, k);
      }
    return SuperMatrix(k_, l_, t);
  }

  // X* = [[A^dag, i C'^dag], [i C^dag, B^dag]] for X = [[A, C], [C', B]].
  SuperMatrix superadjoint(Conjugation conv) const {
    const T iu = Ring<T>::unit_i();
    GMatrix<T> t(size(), size());
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        Grassmann<T> c = conjugate(m_(i, j), conv);
        t(j, i) = (parity_of(i) != parity_of(j)) ? c * iu : c;
      }
    return SuperMatrix(k_, l_, t);
  }

  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.k_ != b.k_ || a.l_ != b.l_) throw std::invalid_argument("supermatrix dimension mismatch");
    return SuperMatrix(a.k_, a.l_, a.m_ * b.m_);
  }
  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
    return SuperMatrix(a.k_, a.l_, a.m_ + b.m_);
  }
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    return SuperMatrix(a.k_, a.l_, a.m_ - b.m_);
  }
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.k_ == b.k_ && a.l_ == b.l_ && a.m_ == b.m_;
  }

 private:
  int k_ = 0, l_ = 0;
  GMatrix<T> m_;
};

// Metric data: g = diag(I_m, J), J = [[0, I_n], [-I_n, 0]], h = diag(I_p, i I_q).
Matrix<int> symplectic_J(int n);
Matrix<int> osp_metric(int m, int n);
Matrix<Q> u_metric(int p, int q);

template <class T>
Matrix<T> as_ring(const Matrix<int>& m) {
  return m.map([](int v) { return Ring<T>::from_int(v); });
}

template <class T>
json to_json(const SuperMatrix<T>& x) {
  json entries = json::array();
  for (const auto& g : x.matrix().data()) entries.push_back(to_json(g));
  return json{{"k", x.k()}, {"l", x.l()}, {"N", x.generators()}, {"entries", entries}};
}

template <class T>
SuperMatrix<T> supermatrix_from_json(const json& j) {
  const int k = j.at("k").get<int>(), l = j.at("l").get<int>();
  const auto& e = j.at("entries");
  if (int(e.size()) != (k + l) * (k + l)) throw std::invalid_argument("entry count mismatch");
  GMatrix<T> m(k + l, k + l);
  for (int i = 0; i < k + l; ++i)
    for (int c = 0; c < k + l; ++c) m(i, c) = grassmann_from_json<T>(e[i * (k + l) + c]);
  return SuperMatrix<T>(k, l, m);
}

// Residuals of B^T J - J B and theta^ B - A theta^ for theta (2n x m, odd entries).
struct ABReport {
  double transpose_residual = 0;
  double intertwine_residual = 0;
};

template <class T>
ABReport check_properties_AB(const GMatrix<T>& theta) {
  const int n2 = theta.rows(), m = theta.cols(), gens = detail::generators_of(theta);
  GMatrix<T> J = lift(as_ring<T>(symplectic_J(n2 / 2)), gens);
  GMatrix<T> hat = theta.transpose() * J;
  GMatrix<T> A = sqrt_block(identity_g<T>(m, gens) - hat * theta);
  GMatrix<T> B = sqrt_block(identity_g<T>(n2, gens) - theta * hat);
  ABReport r;
  r.transpose_residual = norm_inf(GMatrix<T>(B.transpose() * J - J * B));
  r.intertwine_residual = norm_inf(GMatrix<T>(hat * B - A * hat));
  return r;
}

}  // namespace superhaar
