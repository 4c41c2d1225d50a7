#pragma once

#include <string>
#include <utility>
#include <vector>

#include "superhaar/charts.hpp"
#include "superhaar/symbols.hpp"

namespace superhaar {

struct BasisElement {
  std::string label;
  int parity = 0;
  Matrix<Q> matrix;  // defining representation
  int i = -1, j = -1;  // K(i,j) indices (0-based) for OSp; Y/Ybar indices for U
};

// Defining-representation generator (K_ij)_{ga} = g_{aj} d_{gi} - (-1)^{[i][j]} g_{ai} d_{gj} (0-based).
Matrix<Q> osp_generator_matrix(const GroupSpec& spec, int i, int j);

// OSp/UOSp: K(i,j), i <= j, nonzero ones. U: real basis of u(p|q).
std::vector<BasisElement> algebra_basis(const GroupSpec& spec);
// U only: Y(i,j) from E_{j,p+i} and Ybar(i,j) from -i E_{p+i,j}.
std::vector<BasisElement> complex_odd_basis(const GroupSpec& spec);
// Odd derivations used by the invariance checks: odd K(i,j) or Y, Ybar.
std::vector<BasisElement> odd_basis(const GroupSpec& spec);

// A derivation of the symbol algebra, given by its values on the symbols and extended by the graded Leibniz rule.
class Derivation {
 public:
  Derivation(const GroupSpec& spec, int parity);

  const GroupSpec& spec() const { return spec_; }
  int parity() const { return parity_; }
  const SuperPolynomial& on_symbol(int id) const { return images_.at(id); }
  void set_symbol(int id, SuperPolynomial image);

  SuperPolynomial apply(const SuperPolynomial& f) const;

  friend Derivation operator+(const Derivation& a, const Derivation& b);
  friend Derivation operator*(const Q& c, const Derivation& d);
  friend bool operator==(const Derivation& a, const Derivation& b) { return a.images_ == b.images_; }

 private:
  GroupSpec spec_;
  int parity_;
  std::vector<SuperPolynomial> images_;
};

inline SuperPolynomial act_on_polynomial(const Derivation& d, const SuperPolynomial& f) { return d.apply(f); }

// [D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1.
Derivation supercommutator(const Derivation& a, const Derivation& b);

// K_{ab}(X_{cd}) = (-1)^{(1+[d])([a]+[b])} (g_{cb} X_{ad} - (-1)^{[a][b]} g_{ca} X_{bd}), 0-based.
Derivation konx(const GroupSpec& spec, int a, int b);

// D~(X_{ab}) = sum_c (-1)^{[b]([a]+[c])} D_{ca} X_{cb}; on Xs symbols via D~(conj f) = conj((-D*)~ f).
Derivation tilde(const GroupSpec& spec, const Matrix<Q>& D, int parity);

Derivation derivation_of(const GroupSpec& spec, const BasisElement& e);

// Graded matrix bracket of homogeneous matrices.
Matrix<Q> matrix_bracket(const Matrix<Q>& a, int pa, const Matrix<Q>& b, int pb);

struct CheckLine {
  std::string name;
  double residual = 0;
  bool pass = true;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckLine> lines;
  bool pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& l : lines) n += !l.pass;
    return n;
  }
  double max_residual() const {
    double m = 0;
    for (const auto& l : lines) m = std::max(m, l.residual);
    return m;
  }
  void add(std::string name, double residual, double tol) {
    lines.push_back({std::move(name), residual, residual <= tol});
  }
};

json to_json(const CheckReport& r, bool all_lines = false);

// Structure constants of the realized derivations against the standard relations (OSp) or the
// matrix bracket transported by D -> D~ (U), on every symbol and every basis pair.
CheckReport verify_bracket(const GroupSpec& spec);
CheckReport verify_jacobi(const GroupSpec& spec);
// act_on_polynomial on X symbols versus the signed matrix action of the defining matrices.
CheckReport verify_matrix_consistency(const GroupSpec& spec);

// Values of a derivation on the chart functions theta (psi), xA, x theta^ y (i x psi^dag y), By.
template <class T>
struct ChartBlocks {
  GMatrix<T> xA, upper, odd, By;
  GMatrix<T> odd_bar;  // U only: conjugate of psi
};

// Right-hand side of the coordinate expression for K_{i,j+m} (i < m, j < 2n, 0-based), evaluated
// on the chart functions at a point with numeric classical part.
ChartBlocks<C> coordinate_realization_osp(const GroupSpec& spec, int i, int j, const SuperPoint<C>& p);
// Even generators: K_{ab} = L_{ab} (a < b < m) and K_{a+m,b+m} = L + sum (theta J + theta J) d_theta.
ChartBlocks<C> coordinate_realization_osp_even(const GroupSpec& spec, int a, int b, const SuperPoint<C>& p);
// Direct form of Y_{ij} (i < q, j < p); `divergence_form` selects the reordered expression.
ChartBlocks<C> coordinate_realization_u(const GroupSpec& spec, int i, int j, const SuperPoint<C>& p,
                                        bool divergence_form = false);

// Compares the realizations with the symbol actions at the given points.
CheckReport verify_realization(const GroupSpec& spec, const std::vector<SuperPoint<C>>& points, double tol = 1e-10);

}  // namespace superhaar
