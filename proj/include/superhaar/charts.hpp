#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "superhaar/groups.hpp"
#include "superhaar/matrix.hpp"

namespace superhaar {

// Coordinates (x, y, theta) or (x, y, psi). The classical factors are allowed
// to carry nilpotent parts so that products of points can be decomposed.
template <class T>
struct SuperPoint {
  GMatrix<T> x;
  GMatrix<T> y;
  GMatrix<T> odd;  // theta: 2n x m (OSp, UOSp); psi: q x p (U)
};

// Generator index (1-based) of theta_{jk}, psi^1_{jk}, or alpha_{jk} (0-based j, k).
int theta_generator(const GroupSpec& spec, int j, int k);
int psi_generator(const GroupSpec& spec, int j, int k, int part);

// Free odd coordinates in Lambda_N, generator i mapped to i + shift inside Lambda_gens.
template <class T>
GMatrix<T> universal_odd(const GroupSpec& spec, int gens = -1, int shift = 0) {
  const int N = spec.grassmann_count();
  if (gens < 0) gens = N;
  auto g = [&](int i) { return Grassmann<T>::generator(gens, i + shift); };
  const T iu = Ring<T>::unit_i();
  switch (spec.kind) {
    case GroupKind::OSp: {
      GMatrix<T> t(2 * spec.b, spec.a);
      for (int j = 0; j < 2 * spec.b; ++j)
        for (int k = 0; k < spec.a; ++k) t(j, k) = g(theta_generator(spec, j, k));
      return t;
    }
    case GroupKind::U: {
      GMatrix<T> t(spec.b, spec.a);
      for (int j = 0; j < spec.b; ++j)
        for (int k = 0; k < spec.a; ++k) t(j, k) = g(psi_generator(spec, j, k, 1)) + g(psi_generator(spec, j, k, 2)) * iu;
      return t;
    }
    case GroupKind::UOSp: {
      const int n = spec.b;
      GMatrix<T> t(2 * n, spec.a);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < spec.a; ++k) {
          const int r = j * spec.a + k;
          t(j, k) = g(2 * r + 1);
          t(n + j, k) = -g(2 * r + 2);
        }
      return t;
    }
  }
  return {};
}

template <class T>
GMatrix<T> conj_transpose(const GMatrix<T>& m, Conjugation conv) {
  return m.transpose().map([conv](const Grassmann<T>& g) { return conjugate(g, conv); });
}

// theta^ = theta^T J for OSp/UOSp; psi^dagger for U.
template <class T>
GMatrix<T> odd_hat(const GroupSpec& spec, const GMatrix<T>& odd) {
  if (spec.kind == GroupKind::U) return conj_transpose(odd, Conjugation::RealGenerators);
  return odd.transpose() * lift(as_ring<T>(symplectic_J(spec.b)));
}

template <class T>
struct ABMatrices {
  GMatrix<T> A, B, Ainv, Binv;
};

// A = sqrt(I - theta^ theta), B = sqrt(I - theta theta^) (OSp/UOSp) or
// A = sqrt(I - i psi^dag psi), B = sqrt(I - i psi psi^dag) (U). Memoized.
template <class T>
std::shared_ptr<const ABMatrices<T>> ab_matrices(const GroupSpec& spec, const GMatrix<T>& odd);

std::size_t ab_cache_size();
void ab_cache_clear();

template <class T>
SuperMatrix<T> embed(const GroupSpec& spec, const SuperPoint<T>& p);

template <class T>
SuperPoint<T> point_from(const ClassicalPoint<T>& c, const GMatrix<T>& odd) {
  return {lift(c.x), lift(c.y), odd};
}

struct RelationReport {
  std::vector<std::pair<std::string, double>> residuals;
  double max() const {
    double m = 0;
    for (const auto& r : residuals) m = std::max(m, r.second);
    return m;
  }
};

template <class T>
RelationReport check_defining_relations(const GroupSpec& spec, const SuperMatrix<T>& X);

// Residual of the classical group relations of (x, y), nilpotent parts included.
template <class T>
double classical_relation_residual(const GroupSpec& spec, const GMatrix<T>& x, const GMatrix<T>& y);

// theta := X_{II,I}; x := X_{I,I} A^{-1}; y := B^{-1} X_{II,II}; X_{I,II} is re-derived.
template <class T>
SuperPoint<T> decompose(const GroupSpec& spec, const SuperMatrix<T>& X, double tol = 1e-10);

// Group law: (X o Y)_ij = sum_k (-1)^{([i]+[k])([k]+[j])} X_ik Y_kj.
template <class T>
SuperMatrix<T> group_product(const SuperMatrix<T>& X, const SuperMatrix<T>& Y) {
  if (X.k() != Y.k() || X.l() != Y.l()) throw std::invalid_argument("supermatrix dimension mismatch");
  const int d = X.size();
  GMatrix<T> r(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Grassmann<T> acc;
      for (int k = 0; k < d; ++k) {
        const int s = (X.parity_of(i) + X.parity_of(k)) * (X.parity_of(k) + X.parity_of(j));
        if (s % 2)
          acc -= X(i, k) * Y(k, j);
        else
          acc += X(i, k) * Y(k, j);
      }
      r(i, j) = std::move(acc);
    }
  return SuperMatrix<T>(X.k(), X.l(), r);
}

template <class T>
SuperMatrix<T> antipode(const GroupSpec& spec, const SuperMatrix<T>& X);

// (g_x x, g_y y, g_y theta): embeds to diag(g_x, g_y) X.
template <class T>
SuperPoint<T> left_translate(const GroupSpec& spec, const ClassicalPoint<T>& g, const SuperPoint<T>& p);

}  // namespace superhaar
