#include "superhaar/verify.hpp"

#include <stdexcept>

namespace superhaar {

namespace {

SuperPoint<C> haar_super_point(const GroupSpec& s, std::mt19937_64& rng, int gens = -1, int shift = 0) {
  return point_from(sample(s, rng), universal_odd<C>(s, gens, shift));
}

double diff(const SuperMatrix<C>& a, const SuperMatrix<C>& b) { return norm_inf(GMatrix<C>((a - b).matrix())); }

}  // namespace

CheckReport verify_charts(const GroupSpec& spec, const VerifyOptions& o) {
  CheckReport rep;
  rep.suite = "charts";
  const double tol = 1e-10;
  std::mt19937_64 rng(sample_stream(o.seed, 0x636861727473ULL)());
  double rel = 0, anti = 0, round = 0;
  auto I = SuperMatrix<C>::identity(spec.even_dim(), spec.odd_dim());
  for (int t = 0; t < o.points; ++t) {
    auto X = embed(spec, haar_super_point(spec, rng));
    rel = std::max(rel, check_defining_relations(spec, X).max());
    auto nu = antipode(spec, X);
    anti = std::max({anti, diff(group_product(nu, X), I), diff(group_product(X, nu), I)});
    round = std::max(round, diff(embed(spec, decompose(spec, X)), X));
  }
  const std::string n = " (" + std::to_string(o.points) + " points)";
  rep.add("defining relations" + n, rel, tol);
  rep.add("antipode: nu(X) X = X nu(X) = I" + n, anti, tol);
  rep.add("decompose(embed(p)) round trip" + n, round, tol);
  return rep;
}

CheckReport verify_closure(const GroupSpec& spec, const VerifyOptions& o) {
  CheckReport rep;
  rep.suite = "closure";
  const double tol = 1e-10;
  const int N = spec.grassmann_count();
  std::mt19937_64 rng(sample_stream(o.seed, 0x636c6f73ULL)());
  double closure = 0, closure_rel = 0;
  for (int t = 0; t < o.points; ++t) {
    // independent odd coordinates for the two factors
    auto X1 = embed(spec, haar_super_point(spec, rng, 2 * N, 0));
    auto X2 = embed(spec, haar_super_point(spec, rng, 2 * N, N));
    auto P = group_product(X1, X2);
    closure_rel = std::max(closure_rel, check_defining_relations(spec, P).max());
    try {
      closure = std::max(closure, diff(embed(spec, decompose(spec, P)), P));
    } catch (const std::domain_error&) {
      closure = std::max(closure, 1.0);
    }
  }
  const std::string n = " (" + std::to_string(o.points) + " pairs)";
  rep.add("product of two points satisfies the relations" + n, closure_rel, tol);
  rep.add("decompose(product) round trip" + n, closure, tol);
  return rep;
}

std::vector<CheckReport> verify_algebra(const GroupSpec& spec, const VerifyOptions& o) {
  std::vector<CheckReport> out;
  out.push_back(verify_bracket(spec));
  out.push_back(verify_matrix_consistency(spec));
  if (spec.kind != GroupKind::UOSp) {
    std::mt19937_64 rng(sample_stream(o.seed, 0x616c67ULL)());
    std::vector<SuperPoint<C>> pts;
    for (int t = 0; t < o.points; ++t) pts.push_back(haar_super_point(spec, rng));
    out.push_back(verify_realization(spec, pts));
  }
  if (o.exhaustive) out.push_back(verify_jacobi(spec));
  return out;
}

CheckReport verify_density(const GroupSpec& spec, const VerifyOptions& o) {
  return verify_density_pde(spec, o.corrupt_density);
}

CheckReport verify_invariance_suite(const GroupSpec& spec, const VerifyOptions& o) {
  std::mt19937_64 rng(sample_stream(o.seed, 0x696e76ULL)());
  std::vector<ClassicalPoint<Q>> gs{cayley_point(spec, rng), cayley_point(spec, rng)};
  Strategy st;
  st.samples = o.samples;
  st.seed = o.seed;
  CheckReport rep;
  rep.suite = "invariance";
  auto merge = [&](const CheckReport& r, const std::string& tag) {
    for (const auto& l : r.lines) rep.lines.push_back({tag + ": " + l.name, l.residual, l.pass});
  };
  if (spec.kind == GroupKind::U && spec.a == 1 && spec.b == 1) {
    Alphabet alpha(spec);
    for (const auto& m : monomials_up_to(alpha, o.exhaustive ? 3 : 2)) {
      SuperPolynomial f(spec);
      f.add_term(m, Q(1));
      merge(verify_invariance(spec, f, st, gs), f.str());
    }
    return rep;
  }
  for (int k = 0; k < o.polynomials; ++k) {
    auto f = random_polynomial(spec, rng, 2, 4);
    merge(verify_invariance(spec, f, st, gs), "f" + std::to_string(k + 1));
  }
  return rep;
}

json run_verify(const GroupSpec& spec, const std::string& suite, const VerifyOptions& o, bool* pass) {
  static const char* kSuites[] = {"charts", "algebra", "density", "invariance", "all"};
  bool known = false;
  for (const char* s : kSuites) known = known || suite == s;
  if (!known) throw std::invalid_argument("unknown suite '" + suite + "'");
  std::vector<CheckReport> reps;
  const bool all = suite == "all";
  if (all || suite == "charts") {
    reps.push_back(verify_charts(spec, o));
    reps.push_back(verify_closure(spec, o));
  }
  if (all || suite == "algebra")
    for (auto& r : verify_algebra(spec, o)) reps.push_back(std::move(r));
  if (all || suite == "density") reps.push_back(verify_density(spec, o));
  if (all || suite == "invariance") reps.push_back(verify_invariance_suite(spec, o));
  bool ok = true;
  json arr = json::array();
  for (const auto& r : reps) {
    ok = ok && r.pass();
    arr.push_back(to_json(r, o.exhaustive || !r.pass() || r.lines.size() <= 40));
  }
  if (pass) *pass = ok;
  return {{"spec", spec.str()}, {"seed", o.seed}, {"pass", ok}, {"suites", arr}};
}

}  // namespace superhaar
