#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "superhaar/superalgebra.hpp"

namespace superhaar {

// det(I - theta^ theta)^{-1/2} (OSp), det(I - theta^dag theta)^{-1/2} (UOSp), 1 (U).
template <class T>
Grassmann<T> density(const GroupSpec& spec, const GMatrix<T>& odd);

// Generators in the order the derivatives act: theta_11 first for OSp/UOSp; psi^2 before psi^1 for U.
std::vector<int> berezin_ordering(const GroupSpec& spec);
// Factor c with c * int_B prod_k (theta^ theta)_kk^n / n! = 1 (OSp, UOSp); 1 for U.
Q berezin_normalization(const GroupSpec& spec);

// Classical coordinates: x entries, y entries, then conj(x), conj(y) for U.
struct ClassicalLayout {
  GroupSpec spec;
  int m = 0, k = 0;
  explicit ClassicalLayout(const GroupSpec& s);
  int count() const { return spec.kind == GroupKind::U ? 2 * (m * m + k * k) : m * m + k * k; }
  int x(int a, int b) const { return a * m + b; }
  int y(int a, int b) const { return m * m + a * k + b; }
  int xbar(int a, int b) const { return m * m + k * k + a * m + b; }
  int ybar(int a, int b) const { return 2 * m * m + k * k + a * k + b; }
  std::string name(int id) const;
  template <class T>
  std::vector<T> values(const ClassicalPoint<T>& p) const;
};

// Exponent vector over the classical coordinates, trailing zeros trimmed.
using ClassicalMonomial = std::vector<std::uint8_t>;

ClassicalMonomial monomial_times(const ClassicalMonomial& a, const ClassicalMonomial& b);

class ClassicalPolynomial {
 public:
  using Map = std::map<ClassicalMonomial, Q>;
  const Map& terms() const { return terms_; }
  void add(const ClassicalMonomial& m, const Q& c);
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  Q constant_term() const;
  template <class T>
  T evaluate(const std::vector<T>& values) const;
  ClassicalPolynomial& operator+=(const ClassicalPolynomial& o);
  friend ClassicalPolynomial operator*(const Q& c, const ClassicalPolynomial& p);
  friend bool operator==(const ClassicalPolynomial& a, const ClassicalPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

// Polynomial in the classical coordinates with Grassmann coefficients; the ring in which X(x, y, theta) lives.
class Superfunction {
 public:
  using Map = std::map<ClassicalMonomial, GQ>;
  Superfunction() = default;
  explicit Superfunction(const GQ& constant);
  static Superfunction variable(int id, const GQ& coeff);

  const Map& terms() const { return terms_; }
  void add(const ClassicalMonomial& m, const GQ& g);

  friend Superfunction operator+(const Superfunction& a, const Superfunction& b);
  friend Superfunction operator-(const Superfunction& a, const Superfunction& b);
  friend Superfunction operator*(const Superfunction& a, const Superfunction& b);
  friend Superfunction operator*(const Superfunction& a, const Q& c);
  Superfunction conj(const ClassicalLayout& layout, Conjugation conv) const;

 private:
  Map terms_;
};

enum class Mode { Auto, Exact, ExactPhase, MonteCarlo };
enum class ResultMode { ExactPhase, ExactBerezinOnly, MonteCarlo };

std::string mode_name(ResultMode m);
Mode parse_mode(const std::string& s);

struct Strategy {
  Mode mode = Mode::Auto;
  long samples = 100000;
  std::uint64_t seed = 1;
};

struct IntegralResult {
  ResultMode mode = ResultMode::ExactBerezinOnly;
  Q exact;  // meaningful for exact modes
  C estimate;
  double stderr_ = 0;
  long samples = 0;
  Q normalization;
  bool is_exact() const { return mode != ResultMode::MonteCarlo; }
};

json to_json(const IntegralResult& r);

// Symbolic integration engine for one spec. f(X(x, y, theta)) is expanded with Grassmann
// coefficients, multiplied by the density and Berezin integrated, leaving a polynomial in the
// classical coordinates that is integrated exactly (U(1) phases, constants) or by Monte Carlo.
class Integrator {
 public:
  explicit Integrator(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  const ClassicalLayout& layout() const { return layout_; }
  const Matrix<Superfunction>& X() const { return X_; }
  const Matrix<Superfunction>& Xs() const { return Xs_; }

  // int_B density * f(X), as a polynomial in the classical coordinates.
  ClassicalPolynomial reduce(const SuperPolynomial& f) const;

  IntegralResult integrate(const SuperPolynomial& f, const Strategy& s = {}) const;
  IntegralResult integrate_reduced(const ClassicalPolynomial& p, const Strategy& s = {}) const;

  // Exact Haar integral over U(1) x U(1); U(1|1) only.
  Q phase_integral(const ClassicalPolynomial& p) const;
  // Exact value if p is constant on the classical group, judged at exact rational points.
  std::optional<Q> constant_value(const ClassicalPolynomial& p) const;
  // Coordinates of the Monte-Carlo points (seeded per sample index).
  std::shared_ptr<const std::vector<std::vector<C>>> sample_values(std::uint64_t seed, long samples) const;

 private:
  GroupSpec spec_;
  ClassicalLayout layout_;
  Matrix<Superfunction> X_, Xs_;
  std::vector<Q> weight_;  // int_B density * e_b, per blade
  Q norm_;
  mutable std::mutex mu_;
  mutable std::map<Monomial, ClassicalPolynomial> cache_;
  mutable std::map<std::pair<std::uint64_t, long>, std::shared_ptr<const std::vector<std::vector<C>>>> samples_;
};

// Shared engines, one per spec.
const Integrator& integrator(const GroupSpec& spec);

// f(g X): X -> diag(g_x, g_y) X and X* -> X* diag(g_x, g_y)^dag.
SuperPolynomial left_translate(const SuperPolynomial& f, const ClassicalPoint<Q>& g);

// Checks of the density characterization on Lambda_{2mn}.
CheckReport verify_density_pde(const GroupSpec& spec, bool corrupt = false);
// Dimension of the solution space of sum_t A^2_lt d_{theta_jt} f = -theta^_lj f over Lambda_{2mn}.
int density_pde_nullity(const GroupSpec& spec);

// Algebra part (int D(f) = 0 for odd D) and group part (int f = int f(gX)).
CheckReport verify_invariance(const GroupSpec& spec, const SuperPolynomial& f, const Strategy& s,
                              const std::vector<ClassicalPoint<Q>>& translations);

// U(1|1): exponents (a11, a12, a21, a22, b11, b12, b21, b22) of X and X*.
using U11Exponents = std::array<int, 8>;
SuperPolynomial u11_monomial(const U11Exponents& e);
Q u11_closed_formula(const U11Exponents& e);

struct U11Cell {
  U11Exponents exponents;
  Q computed;
  Q formula;
  bool match = false;
};
std::vector<U11Cell> u11_table(int max_exp);
json to_json(const std::vector<U11Cell>& table);

int exact_rank(Matrix<Q> m);
int numeric_rank(const Matrix<C>& m, double tol = 1e-8);

struct GramResult {
  std::vector<Monomial> basis;
  bool exact = true;
  Matrix<Q> exact_matrix;
  Matrix<C> numeric;
  int rank = 0;
};
GramResult gram_matrix(const GroupSpec& spec, int degree, const Strategy& s = {});

}  // namespace superhaar
