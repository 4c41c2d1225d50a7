#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "superhaar/charts.hpp"
#include "superhaar/symbols.hpp"

using namespace superhaar;

TEST_CASE("normalize: odd symbols anticommute") {
  Alphabet a(GroupSpec::osp(2, 1));
  const int x13 = a.id({false, 0, 2}), x31 = a.id({false, 2, 0}), x11 = a.id({false, 0, 0});
  CHECK(a.parity(x13) == 1);
  CHECK(a.parity(x31) == 1);
  CHECK(a.parity(x11) == 0);
  auto [s1, m1] = normalize(a, {x13, x31});
  auto [s2, m2] = normalize(a, {x31, x13});
  CHECK(m1 == m2);
  CHECK(s1 == -s2);
  CHECK(normalize(a, {x13, x13}).first == 0);
  auto [s3, m3] = normalize(a, {x11, x13, x11});
  CHECK(s3 == 1);
  CHECK(m3[x11] == 2);
}

TEST_CASE("normalize is consistent under permutations") {
  Alphabet a(GroupSpec::u(2, 1));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, a.size() - 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> seq;
    for (int k = 0; k < 5; ++k) seq.push_back(pick(rng));
    auto [s, m] = normalize(a, seq);
    auto perm = seq;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto [sp, mp] = normalize(a, perm);
    if (s == 0) {
      CHECK(sp == 0);
      continue;
    }
    // Koszul sign of the permutation, counted on odd symbols only
    std::vector<int> odd_seq, odd_perm;
    for (int id : seq)
      if (a.parity(id)) odd_seq.push_back(id);
    for (int id : perm)
      if (a.parity(id)) odd_perm.push_back(id);
    oracle::Word w1(odd_seq.begin(), odd_seq.end()), w2(odd_perm.begin(), odd_perm.end());
    const int k1 = oracle::sort_word(w1), k2 = oracle::sort_word(w2);
    CHECK(mp == m);
    CHECK(sp * k2 == s * k1);
    auto [s2, m2] = normalize(a, monomial_sequence(m));
    CHECK(s2 == 1);
    CHECK(m2 == m);
  }
}

TEST_CASE("polynomial products match sequence normalization") {
  const auto spec = GroupSpec::osp(2, 1);
  Alphabet a(spec);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, a.size() - 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> s1, s2;
    for (int k = 0; k < 3; ++k) s1.push_back(pick(rng));
    for (int k = 0; k < 2; ++k) s2.push_back(pick(rng));
    auto both = s1;
    both.insert(both.end(), s2.begin(), s2.end());
    auto lhs = SuperPolynomial::from_sequence(spec, s1, Q(1)) * SuperPolynomial::from_sequence(spec, s2, Q(1));
    CHECK(lhs == SuperPolynomial::from_sequence(spec, both, Q(1)));
  }
}

TEST_CASE("parse_monomial") {
  const auto spec = GroupSpec::u(1, 1);
  auto f = parse_monomial(spec, "X[1,1]^2 * Xs[2,1] * X[1,2]");
  CHECK(f.degree() == 4);
  CHECK(f.terms().size() == 1);
  // Xs[2,1] and X[1,2] are both odd and appear out of canonical order
  auto g = parse_monomial(spec, "X[1,1]^2 * X[1,2] * Xs[2,1]");
  CHECK(f == -g);
  CHECK(parse_monomial(spec, "X[1,2]*X[1,2]").is_zero());
  CHECK(parse_monomial(spec, "3/2 * i * X[1,1]") == SuperPolynomial::symbol(spec, {false, 0, 0}) * Q(0, mpq_class(3, 2)));
  CHECK(parse_monomial(spec, "1") == SuperPolynomial::constant(spec, Q(1)));
  CHECK_THROWS(parse_monomial(spec, "X[3,1]"));
  CHECK_THROWS(parse_monomial(spec, "Y[1,1]"));
  CHECK_THROWS(parse_monomial(GroupSpec::osp(1, 1), "Xs[1,1]"));
}

TEST_CASE("monomial enumeration") {
  Alphabet a(GroupSpec::u(1, 1));
  CHECK(monomials_up_to(a, 1).size() == 9);
  // degree <= 3 over 4 even and 4 odd symbols
  std::size_t count = 0;
  for (int e = 0; e <= 3; ++e)
    for (int o = 0; o <= std::min(3 - e, 4); ++o) {
      const int stars_bars[] = {1, 4, 10, 20};
      const int choose4[] = {1, 4, 6, 4, 1};
      count += std::size_t(stars_bars[e]) * choose4[o];
    }
  CHECK(monomials_up_to(a, 3).size() == count);
}

TEST_CASE("evaluate is a superalgebra morphism") {
  std::mt19937_64 rng(5);
  for (const auto& s : {GroupSpec::osp(1, 1), GroupSpec::osp(2, 1), GroupSpec::u(1, 1), GroupSpec::u(2, 1),
                        GroupSpec::uosp(2, 1)}) {
    CAPTURE(s.name());
    auto X = embed(s, point_from(cayley_point(s, rng), universal_odd<Q>(s)));
    CHECK(evaluate(SuperPolynomial::constant(s, Q(1)), X) == GQ(s.grassmann_count(), Q(1)));
    CHECK(evaluate(SuperPolynomial::symbol(s, {false, 0, 0}), X) == X(0, 0));
    for (int t = 0; t < 5; ++t) {
      auto f = random_polynomial(s, rng, 2, 4), g = random_polynomial(s, rng, 2, 4);
      CHECK(evaluate(f * g, X) == evaluate(f, X) * evaluate(g, X));
      CHECK(evaluate(f + g, X) == evaluate(f, X) + evaluate(g, X));
    }
  }
}

TEST_CASE("Xs symbols evaluate to superadjoint entries") {
  const auto s = GroupSpec::u(1, 1);
  std::mt19937_64 rng(6);
  auto X = embed(s, point_from(cayley_point(s, rng), universal_odd<Q>(s)));
  auto Xs = X.superadjoint(Conjugation::RealGenerators);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(evaluate(SuperPolynomial::symbol(s, {true, i, j}), X) == Xs(i, j));
}
