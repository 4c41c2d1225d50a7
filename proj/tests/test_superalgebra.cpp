#include <doctest.h>

#include <iostream>

#include "superhaar/superalgebra.hpp"

using namespace superhaar;

namespace {

SuperPoint<C> random_point(const GroupSpec& s, std::mt19937_64& rng) {
  return point_from(sample(s, rng), universal_odd<C>(s));
}

void show(const CheckReport& r) {
  if (!r.pass()) std::cout << to_json(r).dump(1).substr(0, 2000) << "\n";
}

}  // namespace

TEST_CASE("basis dimensions") {
  CHECK(algebra_basis(GroupSpec::osp(2, 1)).size() == 1 + 3 + 4);
  CHECK(algebra_basis(GroupSpec::osp(3, 1)).size() == 3 + 3 + 6);
  CHECK(algebra_basis(GroupSpec::osp(1, 2)).size() == 0 + 10 + 4);
  CHECK(algebra_basis(GroupSpec::u(2, 1)).size() == 9);
  for (const auto& s : {GroupSpec::osp(2, 1), GroupSpec::osp(1, 2), GroupSpec::u(2, 1), GroupSpec::u(1, 2)})
    for (const auto& e : algebra_basis(s)) {
      CAPTURE(e.label);
      Matrix<C> m = e.matrix.map([](const Q& q) { return to_complex(q); });
      CHECK(check_membership_algebra(s, m));
    }
}

TEST_CASE("K on an even symbol") {
  const auto s = GroupSpec::osp(3, 1);
  auto K = konx(s, 0, 1);
  auto img = K.apply(SuperPolynomial::symbol(s, {false, 1, 2}));
  CHECK(img == SuperPolynomial::symbol(s, {false, 0, 2}));
  CHECK(K.apply(SuperPolynomial::constant(s, Q(1))).is_zero());
}

TEST_CASE("graded Leibniz rule") {
  std::mt19937_64 rng(21);
  for (const auto& s : {GroupSpec::osp(2, 1), GroupSpec::u(2, 1)}) {
    for (const auto& e : algebra_basis(s)) {
      Derivation D = derivation_of(s, e);
      for (int t = 0; t < 3; ++t) {
        auto f = random_polynomial(s, rng, 2, 1), g = random_polynomial(s, rng, 2, 3);
        const int pf = f.parity();
        auto rhs = D.apply(f) * g + f * D.apply(g) * Q((D.parity() * pf) % 2 ? -1 : 1);
        CHECK(D.apply(f * g) == rhs);
      }
    }
  }
}

TEST_CASE("bracket reports") {
  for (const auto& s : {GroupSpec::osp(2, 1), GroupSpec::osp(3, 1), GroupSpec::u(2, 1), GroupSpec::u(1, 1)}) {
    CAPTURE(s.name());
    auto r = verify_bracket(s);
    show(r);
    CHECK(r.pass());
    auto c = verify_matrix_consistency(s);
    show(c);
    CHECK(c.pass());
  }
}

TEST_CASE("realizations") {
  std::mt19937_64 rng(22);
  for (const auto& s : {GroupSpec::osp(1, 1), GroupSpec::osp(2, 1), GroupSpec::osp(3, 1), GroupSpec::osp(1, 2),
                        GroupSpec::u(1, 1), GroupSpec::u(2, 1), GroupSpec::u(1, 2), GroupSpec::u(2, 2)}) {
    CAPTURE(s.name());
    auto r = verify_realization(s, {random_point(s, rng), random_point(s, rng)});
    show(r);
    CHECK(r.pass());
  }
}

TEST_CASE("Jacobi identity on all basis triples") {
  for (const auto& s : {GroupSpec::osp(2, 1), GroupSpec::osp(3, 1), GroupSpec::u(2, 1)}) {
    CAPTURE(s.name());
    auto r = verify_jacobi(s);
    show(r);
    CHECK(r.pass());
    const std::size_t n = algebra_basis(s).size();
    CHECK(r.lines.size() == n * n * n);
  }
}

TEST_CASE("even realized derivations preserve theta-hat theta") {
  std::mt19937_64 rng(23);
  for (const auto& s : {GroupSpec::osp(2, 1), GroupSpec::osp(1, 2), GroupSpec::osp(2, 2)}) {
    CAPTURE(s.name());
    const int m = s.a, n2 = 2 * s.b;
    auto p = random_point(s, rng);
    GMatrix<C> J = lift(as_ring<C>(symplectic_J(s.b)), s.grassmann_count());
    for (int a = 0; a < n2; ++a)
      for (int b = a; b < n2; ++b) {
        auto blocks = coordinate_realization_osp_even(s, m + a, m + b, p);
        GMatrix<C> dt = blocks.odd;
        GMatrix<C> d = dt.transpose() * J * p.odd + p.odd.transpose() * J * dt;
        CHECK(norm_inf(d) < 1e-12);
      }
  }
}
