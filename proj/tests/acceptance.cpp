// One PASS/FAIL line per acceptance criterion. Usage: acceptance [N ...]
#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "superhaar/verify.hpp"

using namespace superhaar;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", v);
  return b;
}

std::string qstr(const Q& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

GroupSpec osp(int m, int n) { return GroupSpec::osp(m, n); }

// ---- oracles ----

// The U(1|1) closed formula, written out from the two Kronecker-delta terms.
mpq_class u11_formula(const std::array<int, 8>& e) {
  auto d = [](int a, int b) { return a == b ? 1 : 0; };
  const int a11 = e[0], a12 = e[1], a21 = e[2], a22 = e[3], b11 = e[4], b12 = e[5], b21 = e[6], b22 = e[7];
  int v = d(a12 + a21 + b12 + b21, 0) * d(a11, b11) * d(a22, b22) * 2 * (a11 - a22);
  v += d(a12 + b12, 1) * d(a21 + b21, 1) * d(a11 + a12, b11 + b21) * d(a12 + a22, b21 + b22) * 2 *
       ((a21 * b12) % 2 ? -1 : 1);
  return v;
}

// Letters of U(1|1) in the formula's order X11 X12 X21 X22 Xs11 Xs12 Xs21 Xs22.
const char* kLetters[8] = {"X[1,1]", "X[1,2]", "X[2,1]", "X[2,2]", "Xs[1,1]", "Xs[1,2]", "Xs[2,1]", "Xs[2,2]"};
bool odd_letter(int s) { return s == 1 || s == 2 || s == 5 || s == 6; }

// Sorts a word of letters into formula order; returns the sign (0 if an odd letter repeats).
int sort_letters(std::vector<int>& w, std::array<int, 8>& e) {
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        if (odd_letter(w[j]) && odd_letter(w[j + 1])) sign = -sign;
        std::swap(w[j], w[j + 1]);
      }
  e.fill(0);
  for (int s : w) {
    if (odd_letter(s) && e[s]) return 0;
    ++e[s];
  }
  return sign;
}

int rational_rank(std::vector<std::vector<mpq_class>> a) {
  int r = 0;
  const int rows = int(a.size()), cols = rows ? int(a[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (int i = 0; i < rows; ++i)
      if (i != r && a[i][c] != 0) {
        mpq_class f = a[i][c] / a[r][c];
        for (int k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      }
    ++r;
  }
  return r;
}

// Gamma(1/2 + n) / Gamma(1/2)
Q half_gamma_ratio(int n) {
  Q v(1);
  for (int k = 1; k <= n; ++k) v *= Q::frac(2 * k - 1, 2);
  return v;
}

// ---- criteria ----

Outcome c1() {
  const auto s = GroupSpec::u(1, 1);
  Strategy st;
  st.mode = Mode::Exact;
  const Integrator& I = integrator(s);
  int cells = 0, bad = 0;
  std::string first;
  std::array<int, 8> e{};
  std::function<void(int)> rec = [&](int slot) {
    if (slot == 8) {
      ++cells;
      std::vector<int> seq;
      for (int k = 0; k < 8; ++k)
        for (int r = 0; r < e[k]; ++r) seq.push_back(Alphabet(s).id({k >= 4, (k % 4) / 2, k % 2}));
      Q got = I.integrate(SuperPolynomial::from_sequence(s, seq, Q(1)), st).exact;
      Q want(u11_formula(e));
      if (!(got == want)) {
        if (!bad) {
          first = "e.g. exponents (";
          for (int k = 0; k < 8; ++k) first += std::to_string(e[k]) + (k < 7 ? "," : ")");
          first += " computed " + qstr(got) + " formula " + qstr(want);
        }
        ++bad;
      }
      return;
    }
    for (e[slot] = 0; e[slot] <= (odd_letter(slot) ? 1 : 2); ++e[slot]) rec(slot + 1);
    e[slot] = 0;
  };
  rec(0);
  auto val = [&](const char* m) { return I.integrate(parse_monomial(s, m), st).exact; };
  const Q s1 = val("X[1,1]*Xs[1,1]"), s2 = val("X[2,2]*Xs[2,2]"), s3 = val("X[1,2]*Xs[2,1]");
  const bool spots = s1 == Q(2) && s2 == Q(-2) && s3 == Q(2);
  return {bad == 0 && spots, std::to_string(cells - bad) + "/" + std::to_string(cells) + " cells match; spots " +
                                 qstr(s1) + ", " + qstr(s2) + ", " + qstr(s3) + " (want 2, -2, 2)" +
                                 (bad ? "; " + first : "")};
}

Outcome c2() {
  std::vector<std::pair<GroupSpec, Q>> cases;
  for (int n = 1; n <= 3; ++n) cases.push_back({osp(1, n), half_gamma_ratio(n)});
  for (const auto& s : {osp(2, 1), osp(3, 1), GroupSpec::u(1, 1), GroupSpec::u(2, 1)}) cases.push_back({s, Q(0)});
  bool ok = true;
  std::string d;
  for (const auto& [s, want] : cases) {
    auto r = integrator(s).integrate(SuperPolynomial::constant(s, Q(1)));
    const bool good = r.is_exact() && r.exact == want;
    ok = ok && good;
    d += s.name() + "=" + (r.is_exact() ? qstr(r.exact) : "mc") + (good ? "" : "(want " + qstr(want) + ")") + " ";
  }
  return {ok, d};
}

Outcome c3() {
  bool ok = true;
  std::string d;
  for (const auto& s : {osp(1, 1), osp(2, 1), osp(1, 2), osp(2, 2)}) {
    auto r = verify_density_pde(s);
    ok = ok && r.pass();
    d += s.name() + " " + std::to_string(r.lines.size() - r.failures()) + "/" + std::to_string(r.lines.size()) + "; ";
  }
  for (const auto& s : {osp(1, 1), osp(2, 1)}) {
    const int k = density_pde_nullity(s);
    ok = ok && k == 1;
    d += "nullity " + s.name() + "=" + std::to_string(k) + " ";
  }
  return {ok, d};
}

const std::vector<GroupSpec>& chart_specs() {
  static const std::vector<GroupSpec> v{osp(1, 1), osp(2, 1), osp(3, 1), GroupSpec::u(1, 1), GroupSpec::u(2, 1),
                                        GroupSpec::uosp(2, 1)};
  return v;
}

Outcome charts(CheckReport (*check)(const GroupSpec&, const VerifyOptions&)) {
  VerifyOptions o;
  o.points = 100;
  bool ok = true;
  double worst = 0;
  std::string bad;
  for (const auto& s : chart_specs()) {
    auto r = check(s, o);
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
      worst = std::max(worst, r.lines[i].residual);
      if (!r.lines[i].pass) {
        ok = false;
        bad += " " + s.name() + ": " + r.lines[i].name;
      }
    }
  }
  return {ok, std::to_string(chart_specs().size()) + " specs x 100, max residual " + fmt(worst) + bad};
}

Outcome c4() { return charts(verify_charts); }
Outcome c5() { return charts(verify_closure); }

Outcome c6() {
  std::vector<CheckReport> reps;
  for (const auto& s : {osp(2, 1), osp(3, 1)}) reps.push_back(verify_bracket(s));
  reps.push_back(verify_matrix_consistency(GroupSpec::u(2, 1)));
  std::mt19937_64 rng(sample_stream(1, 0x616363ULL)());
  for (const auto& s : {osp(1, 1), osp(2, 1), osp(3, 1), osp(1, 2), GroupSpec::u(1, 1), GroupSpec::u(2, 1),
                        GroupSpec::u(1, 2)}) {
    std::vector<SuperPoint<C>> pts;
    for (int t = 0; t < 20; ++t) pts.push_back(point_from(sample(s, rng), universal_odd<C>(s)));
    reps.push_back(verify_realization(s, pts, 1e-10));
  }
  bool ok = true;
  std::size_t lines = 0, fails = 0;
  double worst = 0;
  for (const auto& r : reps) {
    ok = ok && r.pass();
    lines += r.lines.size();
    fails += r.failures();
    worst = std::max(worst, r.max_residual());
  }
  return {ok, std::to_string(lines - fails) + "/" + std::to_string(lines) + " lines, max residual " + fmt(worst)};
}

Outcome c7() {
  VerifyOptions o;
  o.samples = 100000;
  o.polynomials = 20;
  std::string d;
  bool ok = true;
  auto run = [&](const GroupSpec& s, bool exhaustive) {
    o.exhaustive = exhaustive;
    auto r = verify_invariance_suite(s, o);
    ok = ok && r.pass();
    d += s.name() + " " + std::to_string(r.lines.size() - r.failures()) + "/" + std::to_string(r.lines.size()) + "; ";
    for (const auto& l : r.lines)
      if (!l.pass) d += "[" + l.name + " " + fmt(l.residual) + "] ";
  };
  run(GroupSpec::u(1, 1), true);
  run(osp(1, 1), false);
  run(GroupSpec::u(2, 1), false);
  return {ok, d};
}

Outcome c8() {
  const auto s = GroupSpec::u(1, 1);
  auto g = gram_matrix(s, 1);
  Alphabet alpha(s);
  std::map<std::string, int> slot;
  for (int k = 0; k < 8; ++k) slot[kLetters[k]] = k;
  auto word = [&](const Monomial& m) {
    std::vector<int> w;
    for (std::size_t id = 0; id < m.size(); ++id)
      for (int r = 0; r < m[id]; ++r) w.push_back(slot.at(alpha.name(int(id))));
    return w;
  };
  const int n = int(g.basis.size());
  std::vector<std::vector<mpq_class>> formula(n, std::vector<mpq_class>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto w = word(g.basis[a]);
      auto wb = word(g.basis[b]);
      w.insert(w.end(), wb.begin(), wb.end());
      std::array<int, 8> e{};
      int sign = sort_letters(w, e);
      formula[a][b] = sign ? mpq_class(sign * u11_formula(e)) : mpq_class(0);
    }
  const int want = rational_rank(formula);
  return {g.exact && g.rank == want, "basis " + std::to_string(n) + ", computed rank " + std::to_string(g.rank) +
                                         ", formula rank " + std::to_string(want)};
}

Outcome c9() {
  long checks = 0;
  bool ok = true;
  auto check = [&](bool c) {
    ++checks;
    ok = ok && c;
  };
  for (int n = 0; n <= 4; ++n) {
    const Blade full = Blade(1) << n;
    for (Blade a = 0; a < full; ++a)
      for (Blade b = 0; b < full; ++b) {
        GQ x = GQ::blade(n, a, Q(1)), y = GQ::blade(n, b, Q(1));
        const int s = (std::popcount(a) * std::popcount(b)) % 2 ? -1 : 1;
        check(x * y == (y * x) * Q(s));
        check(oracle::from_naive(n, oracle::mul(oracle::to_naive(x), oracle::to_naive(y))) == x * y);
        for (Blade c = 0; c < full; ++c) {
          GQ z = GQ::blade(n, c, Q(1));
          check((x * y) * z == x * (y * z));
        }
      }
  }
  std::mt19937_64 rng(9);
  for (int n : {4, 8, 12}) {
    const GQ one(n, Q(1));
    for (int t = 0; t < 4; ++t) {
      const bool odd = t % 2;
      GQ f = oracle::random_element(rng, n, 10, odd ? oracle::Kind::Odd : oracle::Kind::Even);
      GQ g = oracle::random_element(rng, n, 10);
      for (int i = 1; i <= n; ++i) {
        check((partial(i, f * g) - partial(i, f) * g - f * partial(i, g) * Q(odd ? -1 : 1)).is_zero());
        check(oracle::from_naive(n, oracle::derivative(i, oracle::to_naive(g))) == partial(i, g));
        for (int j = 1; j <= n; ++j) check((partial(i, partial(j, g)) + partial(j, partial(i, g))).is_zero());
      }
      GQ h = one * Q((t + 1) * (t + 1)) + oracle::random_element(rng, n, n == 12 ? 6 : 10, oracle::Kind::Even).soul();
      GQ r = superhaar::sqrt(h);
      check(r * r == h);
      check(h * inverse(h) == one);
    }
  }
  return {ok, std::to_string(checks) + " checks"};
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "U(1|1) monomial table against the closed formula", 10, c1},
    {2, "integral of 1", 5, c2},
    {3, "density identities and uniqueness", 30, c3},
    {4, "defining relations and antipode", 60, c4},
    {5, "group-law closure", 60, c5},
    {6, "Lie superalgebra brackets and realizations", 120, c6},
    {7, "invariance of the integral", 600, c7},
    {8, "U(1|1) Gram rank", 10, c8},
    {9, "Grassmann kernel properties", 60, c9},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> want;
  for (int i = 1; i < argc; ++i) want.push_back(std::atoi(argv[i]));
  bool all = true;
  for (const auto& c : kCriteria) {
    if (!want.empty() && std::find(want.begin(), want.end(), c.id) == want.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.limit;
    all = all && pass;
    std::printf("criterion %d: %s  %s  [%.2fs, limit %.0fs]  %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                c.limit, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
