#include <doctest.h>

#include "superhaar/groups.hpp"

using namespace superhaar;

namespace {

// Defining-representation generator K_ij e_a = g_aj e_i - (-1)^{[i][j]} g_ai e_j (1-based indices).
Matrix<C> k_matrix(const GroupSpec& s, int i, int j) {
  Matrix<int> g = s.metric();
  const int d = s.size(), m = s.even_dim();
  auto par = [m](int idx) { return idx > m ? 1 : 0; };
  Matrix<C> k(d, d);
  for (int a = 1; a <= d; ++a) {
    k(i - 1, a - 1) += double(g(a - 1, j - 1));
    k(j - 1, a - 1) -= double((par(i) * par(j)) ? -g(a - 1, i - 1) : g(a - 1, i - 1));
  }
  return k;
}

Matrix<C> random_member(const GroupSpec& s, int parity, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  const int k = s.even_dim(), l = s.odd_dim();
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(k + l, k + l);
  const C iu(0, 1);
  auto rnd = [&](int r, int c, bool cx) {
    Eigen::MatrixXcd m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = C(nd(rng), cx ? nd(rng) : 0.0);
    return m;
  };
  if (s.orthosymplectic()) {
    Eigen::MatrixXcd J = to_eigen(as_ring<C>(symplectic_J(s.b)));
    if (parity == 0) {
      Eigen::MatrixXcd a = rnd(k, k, false), sy = rnd(l, l, false);
      y.topLeftCorner(k, k) = a - a.transpose();
      y.bottomRightCorner(l, l) = J * (sy + sy.transpose());
    } else {
      Eigen::MatrixXcd c = rnd(k, l, false);
      y.topRightCorner(k, l) = c;
      y.bottomLeftCorner(l, k) = J * c.transpose();
    }
  } else {
    if (parity == 0) {
      Eigen::MatrixXcd a = rnd(k, k, true), b = rnd(l, l, true);
      y.topLeftCorner(k, k) = a - a.adjoint();
      y.bottomRightCorner(l, l) = b - b.adjoint();
    } else {
      Eigen::MatrixXcd c = rnd(k, l, true);
      y.topRightCorner(k, l) = c;
      y.bottomLeftCorner(l, k) = -iu * c.adjoint();
    }
  }
  return from_eigen(y);
}

}  // namespace

TEST_CASE("parse_spec") {
  GroupSpec u = parse_spec("u:p=1,q=1");
  CHECK(u.kind == GroupKind::U);
  CHECK(u.grassmann_count() == 2);
  GroupSpec o = parse_spec("osp:m=1,n=2");
  CHECK(o.kind == GroupKind::OSp);
  CHECK(o.grassmann_count() == 4);
  CHECK(o.size() == 5);
  CHECK(parse_spec("uosp:m=2,n=1").kind == GroupKind::UOSp);
  CHECK(parse_spec(o.str()) == o);
  CHECK_THROWS(parse_spec("osp:m=0,n=1"));
  CHECK_THROWS(parse_spec("osp:p=1,q=1"));
  CHECK_THROWS(parse_spec("sp:m=1,n=1"));
  CHECK_THROWS(parse_spec("osp:m=4,n=4"));
  CHECK(o.conjugation() == Conjugation::None);
  CHECK(u.conjugation() == Conjugation::RealGenerators);
}

TEST_CASE("sampled points satisfy the group constraints") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    Eigen::MatrixXd x = haar_orthogonal(2, rng);
    CHECK((x.transpose() * x - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-13);
    Eigen::MatrixXcd z = haar_usp(1, rng);
    Eigen::MatrixXcd J(2, 2);
    J << 0, 1, -1, 0;
    CHECK((z.transpose() * J * z - J).cwiseAbs().maxCoeff() < 1e-12);
  }
  for (auto s : {GroupSpec::osp(3, 2), GroupSpec::u(3, 2), GroupSpec::uosp(2, 3)})
    for (int t = 0; t < 20; ++t) CHECK(classical_residual(s, sample(s, rng)) < 1e-12);
}

TEST_CASE("sampling is reproducible per (seed, index)") {
  GroupSpec s = GroupSpec::u(2, 1);
  Point a = sample_indexed(s, 42, 7), b = sample_indexed(s, 42, 7), c = sample_indexed(s, 42, 8);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(!(a.x == c.x));
}

TEST_CASE("Haar moments") {
  const int n = 100000;
  std::vector<C> u2(n), o3(n), usp4(n), o2_det(n), usp_sq(n);
  for (int i = 0; i < n; ++i) {
    auto rng = sample_stream(2026, i);
    Eigen::MatrixXcd u = haar_unitary(2, rng);
    u2[i] = std::norm(u(0, 0));
    Eigen::MatrixXd o = haar_orthogonal(3, rng);
    o3[i] = o(1, 2) * o(1, 2);
    Eigen::MatrixXcd z = haar_usp(2, rng);
    usp4[i] = std::norm(z(0, 3));
    usp_sq[i] = z(0, 0) * z(0, 0);
    o2_det[i] = haar_orthogonal(2, rng).determinant();
  }
  auto within = [](const Estimate& e, C expect) { return std::abs(e.mean - expect) <= 3 * e.stderr_; };
  CHECK(within(summarize(u2), 0.5));
  CHECK(within(summarize(o3), 1.0 / 3.0));
  CHECK(within(summarize(usp4), 0.25));
  CHECK(within(summarize(usp_sq), 0.0));
  // both components of O(2) are covered
  CHECK(within(summarize(o2_det), 0.0));
}

TEST_CASE("exact Cayley points") {
  std::mt19937_64 rng(3);
  for (auto s : {GroupSpec::osp(3, 2), GroupSpec::u(2, 2), GroupSpec::uosp(2, 1)}) {
    for (int t = 0; t < 5; ++t) {
      auto p = cayley_point(s, rng);
      auto adj = [](const Matrix<Q>& m) { return m.transpose().map([](const Q& v) { return conj(v); }); };
      CHECK(adj(p.x) * p.x == Matrix<Q>::identity(s.a, Q(1)));
      CHECK(adj(p.y) * p.y == Matrix<Q>::identity(p.y.rows(), Q(1)));
      if (s.orthosymplectic()) {
        Matrix<Q> J = as_ring<Q>(symplectic_J(s.b));
        CHECK(p.y.transpose() * J * p.y == J);
        for (const auto& v : p.x.data()) CHECK(v.im == 0);
      }
    }
  }
}

TEST_CASE("exact U(1) moments") {
  CHECK(exact_u1_moment({{3, 3}}) == Q(1));
  CHECK(exact_u1_moment({{2, 1}}) == Q(0));
  CHECK(exact_u1_moment({}) == Q(1));
  CHECK(exact_u1_moment({{1, 1}, {0, 2}}) == Q(0));
}

TEST_CASE("algebra membership") {
  GroupSpec s = GroupSpec::osp(3, 1);
  CHECK(check_membership_algebra(s, k_matrix(s, 1, 2)));
  for (int i = 1; i <= 5; ++i)
    for (int j = i; j <= 5; ++j) CHECK(check_membership_algebra(s, k_matrix(s, i, j)));
  CHECK_FALSE(check_membership_algebra(s, Matrix<C>::identity(5, C(1))));
  CHECK_FALSE(check_membership_algebra(GroupSpec::u(2, 1), Matrix<C>::identity(3, C(1))));

  std::mt19937_64 rng(4);
  for (auto g : {GroupSpec::osp(2, 1), GroupSpec::osp(3, 2), GroupSpec::u(2, 1), GroupSpec::u(1, 2)})
    for (int pa : {0, 1})
      for (int pb : {0, 1}) {
        Matrix<C> a = random_member(g, pa, rng), b = random_member(g, pb, rng);
        CHECK(check_membership_algebra(g, a));
        CHECK(check_membership_algebra(g, supercommutator(a, pa, b, pb), 1e-10));
      }
}
