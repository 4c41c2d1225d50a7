#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "superhaar/verify.hpp"

using namespace superhaar;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SUPERHAAR_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("SUPERHAAR_SEED is not an unsigned integer: ") + env);
  }
  return 1;
}

GroupSpec spec_arg(const std::string& s) {
  try {
    return parse_spec(s);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

json matrix_json(const Matrix<C>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(scalar_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant integration on OSp(m|2n), U(p|q) and UOSp(m|2n)"};
  app.require_subcommand(1);

  std::string spec_s, monomial, mode_s = "auto", out, table_kind, suite;
  long samples = 100000;
  int max_exp = 2, points = 20, count = 1, polys = 5;
  std::optional<std::uint64_t> seed;
  bool exhaustive = false, corrupt = false;

  auto* integ = app.add_subcommand("integrate", "integrate a monomial over the supergroup");
  integ->add_option("--spec", spec_s, "osp:m=M,n=N | u:p=P,q=Q | uosp:m=M,n=N")->required();
  integ->add_option("--monomial", monomial, "e.g. \"X[1,1]*Xs[1,1]\"")->required();
  integ->add_option("--mode", mode_s, "auto | exact | exact-phase | mc");
  integ->add_option("--samples", samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  integ->add_option("--seed", seed);
  integ->add_option("--out", out);

  auto* table = app.add_subcommand("table", "tabulate monomial integrals");
  table->add_option("kind", table_kind, "u11")->required()->check(CLI::IsMember({"u11"}));
  table->add_option("--max-exp", max_exp, "largest exponent of the even entries")->check(CLI::NonNegativeNumber);
  table->add_option("--out", out);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", suite, "charts | algebra | density | invariance | all")
      ->required()
      ->check(CLI::IsMember({"charts", "algebra", "density", "invariance", "all"}));
  verify->add_option("--spec", spec_s)->required();
  verify->add_option("--seed", seed);
  verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
  verify->add_option("--points", points)->check(CLI::PositiveNumber);
  verify->add_option("--polynomials", polys)->check(CLI::PositiveNumber);
  verify->add_flag("--exhaustive", exhaustive, "all lines, Jacobi on every basis triple, degree-3 monomials");
  verify->add_flag("--corrupt-density", corrupt, "negative control: perturb the density");
  verify->add_option("--out", out);

  auto* samp = app.add_subcommand("sample", "sample Haar points and their supermatrices");
  samp->add_option("--spec", spec_s)->required();
  samp->add_option("--seed", seed);
  samp->add_option("--count", count)->check(CLI::PositiveNumber);
  samp->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*integ) {
      const GroupSpec spec = spec_arg(spec_s);
      SuperPolynomial f(spec);
      Strategy st;
      try {
        f = parse_monomial(spec, monomial);
        st.mode = parse_mode(mode_s);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      st.samples = samples;
      st.seed = resolve_seed(seed);
      IntegralResult r;
      try {
        r = integrator(spec).integrate(f, st);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      } catch (const std::domain_error& e) {
        throw UsageError(e.what());
      }
      json j = to_json(r);
      j["spec"] = spec.str();
      j["monomial"] = f.str();
      j["seed"] = st.seed;
      emit(j, out);
      return kPass;
    }
    if (*table) {
      auto t = u11_table(max_exp);
      json j = to_json(t);
      emit(j, out);
      return j["mismatches"].get<std::size_t>() == 0 ? kPass : kFail;
    }
    if (*verify) {
      const GroupSpec spec = spec_arg(spec_s);
      VerifyOptions o;
      o.seed = resolve_seed(seed);
      o.points = points;
      o.samples = samples;
      o.polynomials = polys;
      o.exhaustive = exhaustive;
      o.corrupt_density = corrupt;
      bool pass = false;
      json j = run_verify(spec, suite, o, &pass);
      emit(j, out);
      return pass ? kPass : kFail;
    }
    if (*samp) {
      const GroupSpec spec = spec_arg(spec_s);
      const std::uint64_t s = resolve_seed(seed);
      json pts = json::array();
      for (int i = 0; i < count; ++i) {
        Point p = sample_indexed(spec, s, std::uint64_t(i));
        auto X = embed(spec, point_from(p, universal_odd<C>(spec)));
        pts.push_back({{"x", matrix_json(p.x)},
                       {"y", matrix_json(p.y)},
                       {"classical_residual", classical_residual(spec, p)},
                       {"X", to_json(X)}});
      }
      emit({{"spec", spec.str()}, {"seed", s}, {"points", pts}}, out);
      return kPass;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
