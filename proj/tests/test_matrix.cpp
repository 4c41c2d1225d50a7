#include <doctest.h>

#include "oracle.hpp"
#include "superhaar/matrix.hpp"

using namespace superhaar;
using oracle::Kind;

namespace {

// Entry (a,b) even iff [a]+[b] = 0; flip = true builds an odd supermatrix.
SuperMatrix<Q> random_super(std::mt19937_64& rng, int k, int l, int n, bool flip, int terms = 3) {
  GMatrix<Q> m(k + l, k + l);
  for (int i = 0; i < k + l; ++i)
    for (int j = 0; j < k + l; ++j) {
      bool odd = ((i >= k) != (j >= k)) != flip;
      m(i, j) = oracle::random_element(rng, n, terms, odd ? Kind::Odd : Kind::Even);
    }
  return SuperMatrix<Q>(k, l, m);
}

GMatrix<Q> theta_matrix(int m, int n) {
  const int N = 2 * m * n;
  GMatrix<Q> t(2 * n, m);
  for (int j = 0; j < 2 * n; ++j)
    for (int k = 0; k < m; ++k) t(j, k) = GQ::generator(N, j * m + k + 1);
  return t;
}

// Leibniz expansion; entries commute because they are even.
GQ det_cofactor(const GMatrix<Q>& a) {
  const int n = a.rows();
  if (n == 1) return a(0, 0);
  GQ d(0);
  for (int c = 0; c < n; ++c) {
    GMatrix<Q> minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = a(i, j);
    GQ term = a(0, c) * det_cofactor(minor);
    d = (c % 2) ? d - term : d + term;
  }
  return d;
}

}  // namespace

TEST_CASE("metric data") {
  for (int n = 1; n <= 3; ++n) {
    Matrix<int> J = symplectic_J(n);
    CHECK(J * J == Matrix<int>::identity(2 * n, 1).scaled(-1));
    CHECK(J.transpose() == J.scaled(-1));
  }
  Matrix<int> g = osp_metric(2, 1);
  CHECK(g(0, 0) == 1);
  CHECK(g(2, 3) == 1);
  CHECK(g(3, 2) == -1);
  Matrix<Q> h = u_metric(1, 2);
  CHECK(h(0, 0) == Q(1));
  CHECK(h(2, 2) == Q::unit_i());
}

TEST_CASE("matmul") {
  std::mt19937_64 rng(1);
  auto a = random_super(rng, 2, 1, 6, false), b = random_super(rng, 2, 1, 6, false),
       c = random_super(rng, 2, 1, 6, false);
  CHECK(SuperMatrix<Q>::identity(2, 1, 6) * a == a);
  CHECK((a * b) * c == a * (b * c));
  CHECK((a * b).parity_consistent());
  CHECK_THROWS(a * SuperMatrix<Q>::identity(1, 1, 6));
}

TEST_CASE("supertranspose") {
  std::mt19937_64 rng(2);
  GMatrix<Q> even(2, 2);
  for (auto i = 0; i < 2; ++i)
    for (auto j = 0; j < 2; ++j) even(i, j) = oracle::random_element(rng, 4, 3, Kind::Even);
  SuperMatrix<Q> e(2, 0, even);
  CHECK(e.supertranspose().matrix() == even.transpose());

  auto x = random_super(rng, 2, 2, 6, false);
  auto tt = x.supertranspose().supertranspose();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool odd = (i >= 2) != (j >= 2);
      CHECK(tt(i, j) == (odd ? -x(i, j) : x(i, j)));
    }
  CHECK(x.supertranspose().parity_consistent());

  for (bool fa : {false, true})
    for (bool fb : {false, true}) {
      auto a = random_super(rng, 2, 1, 6, fa), b = random_super(rng, 2, 1, 6, fb);
      SuperMatrix<Q> lhs = (a * b).supertranspose();
      SuperMatrix<Q> rhs = b.supertranspose() * a.supertranspose();
      if (fa && fb) rhs = SuperMatrix<Q>(rhs.k(), rhs.l(), rhs.matrix().scaled(Q(-1)));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("superadjoint") {
  GMatrix<Q> num(3, 3);
  int v = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) num(i, j) = GQ(0, Q(v++, i - j));
  SuperMatrix<Q> x(2, 1, num);
  auto s = x.superadjoint(Conjugation::RealGenerators);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Q expect = conj(num(j, i).body());
      if ((i >= 2) != (j >= 2)) expect = expect * Q::unit_i();
      CHECK(s(i, j).body() == expect);
    }
  CHECK(SuperMatrix<Q>::identity(2, 1).superadjoint(Conjugation::RealGenerators) == SuperMatrix<Q>::identity(2, 1));
  CHECK_THROWS(x.superadjoint(Conjugation::None));
}

TEST_CASE("sqrt_block") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {3, 1}, {2, 2}, {1, 3}}) {
    const int N = 2 * m * n;
    GMatrix<Q> th = theta_matrix(m, n);
    GMatrix<Q> J = lift(as_ring<Q>(symplectic_J(n)), N);
    GMatrix<Q> hat = th.transpose() * J;
    GMatrix<Q> M = identity_g<Q>(m, N) - hat * th;
    GMatrix<Q> A = sqrt_block(M);
    CHECK(A * A == M);
    GMatrix<Q> B = sqrt_block(identity_g<Q>(2 * n, N) - th * hat);
    CHECK(B * B + th * hat == identity_g<Q>(2 * n, N));
    if (m == 1 && n == 1) CHECK(A == identity_g<Q>(1, N) - (hat * th).scaled(Q::frac(1, 2)));
  }
  CHECK(sqrt_block(identity_g<Q>(3)) == identity_g<Q>(3));
  GMatrix<Q> bad = identity_g<Q>(2).scaled(Q(2));
  CHECK_THROWS(sqrt_block(bad));
}

TEST_CASE("det_even against the cofactor expansion") {
  std::mt19937_64 rng(3);
  for (int size = 1; size <= 3; ++size)
    for (int n : {2, 5, 8}) {
      for (int trial = 0; trial < 3; ++trial) {
        GMatrix<Q> a(size, size);
        for (int i = 0; i < size; ++i)
          for (int j = 0; j < size; ++j)
            a(i, j) = oracle::random_element(rng, n, 4, Kind::Even).soul() + GQ(n, oracle::random_q(rng, 3, false));
        GQ cof = det_cofactor(a);
        if (is_zero(cof.body())) continue;
        CHECK(det_even(a) == cof);
        GMatrix<Q> b(size, size);
        for (int i = 0; i < size; ++i)
          for (int j = 0; j < size; ++j)
            b(i, j) = oracle::random_element(rng, n, 3, Kind::Even).soul() + GQ(n, Q(i == j ? 2 : i - j));
        if (is_zero(det_cofactor(b).body())) continue;
        CHECK(det_even(GMatrix<Q>(a * b)) == det_even(a) * det_even(b));
        CHECK(inverse_block(b) * b == identity_g<Q>(size, n));
      }
    }
  CHECK(det_even(identity_g<Q>(3)) == GQ(0, Q(1)));
  GMatrix<Q> odd(1, 1);
  odd(0, 0) = GQ::generator(2, 1);
  CHECK_THROWS(det_even(odd));
}

TEST_CASE("inverse square root of det at n = 1 is 1 + tr(theta^ theta)/2") {
  for (int m = 1; m <= 3; ++m) {
    const int N = 2 * m;
    GMatrix<Q> th = theta_matrix(m, 1);
    GMatrix<Q> J = lift(as_ring<Q>(symplectic_J(1)), N);
    GMatrix<Q> tt = th.transpose() * J * th;
    GQ d = det_even(GMatrix<Q>(identity_g<Q>(m, N) - tt));
    GQ tr(N);
    for (int i = 0; i < m; ++i) tr += tt(i, i);
    CHECK(nilpotent_series(d, Series::InvSqrt) == GQ(N, Q(1)) + tr * Q::frac(1, 2));
    GQ explicit_form(N, Q(1));
    for (int j = 0; j < m; ++j) explicit_form += th(0, j) * th(1, j);
    CHECK(nilpotent_series(d, Series::InvSqrt) == explicit_form);
  }
}

TEST_CASE("properties of A and B") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 1}}) {
    auto r = check_properties_AB(theta_matrix(m, n));
    CHECK(r.transpose_residual == 0);
    CHECK(r.intertwine_residual == 0);
  }
}

TEST_CASE("supermatrix json round trip") {
  std::mt19937_64 rng(4);
  auto x = random_super(rng, 2, 1, 5, false);
  CHECK(supermatrix_from_json<Q>(json::parse(to_json(x).dump())) == x);
}
