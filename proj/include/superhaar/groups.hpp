#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "superhaar/matrix.hpp"

namespace superhaar {

enum class GroupKind { OSp, U, UOSp };

// OSp(m|2n), U(p|q) or UOSp(m|2n). For OSp/UOSp a = m, b = n; for U a = p, b = q.
struct GroupSpec {
  GroupKind kind = GroupKind::OSp;
  int a = 1;
  int b = 1;

  static GroupSpec osp(int m, int n);
  static GroupSpec u(int p, int q);
  static GroupSpec uosp(int m, int n);

  int even_dim() const { return a; }
  int odd_dim() const { return kind == GroupKind::U ? b : 2 * b; }
  int size() const { return even_dim() + odd_dim(); }
  int grassmann_count() const { return 2 * a * b; }
  bool orthosymplectic() const { return kind != GroupKind::U; }
  Conjugation conjugation() const;
  Matrix<int> metric() const;  // g for OSp/UOSp
  Matrix<Q> hermitian_metric() const;  // h for U
  std::string str() const;
  std::string name() const;  // human readable, e.g. OSp(1|2)

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// "osp:m=3,n=1", "u:p=2,q=1", "uosp:m=2,n=1".
GroupSpec parse_spec(const std::string& s);

// Classical factors: (x in O(m), y in USp(2n)) or (x in U(p), y in U(q)).
template <class T>
struct ClassicalPoint {
  Matrix<T> x;
  Matrix<T> y;
};

using Point = ClassicalPoint<C>;

std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

Eigen::MatrixXcd haar_unitary(int p, std::mt19937_64& rng);
Eigen::MatrixXd haar_orthogonal(int m, std::mt19937_64& rng);
Eigen::MatrixXcd haar_usp(int n, std::mt19937_64& rng);  // 2n x 2n

Matrix<C> from_eigen(const Eigen::MatrixXcd& m);
Matrix<C> from_eigen(const Eigen::MatrixXd& m);
Eigen::MatrixXcd to_eigen(const Matrix<C>& m);

Point sample(const GroupSpec& spec, std::mt19937_64& rng);
Point sample_indexed(const GroupSpec& spec, std::uint64_t seed, std::uint64_t index);

// Exact rational group elements via the Cayley transform (I - S)(I + S)^{-1}.
ClassicalPoint<Q> cayley_point(const GroupSpec& spec, std::mt19937_64& rng, int range = 3);

// Residuals of the classical group constraints.
double classical_residual(const GroupSpec& spec, const Point& p);

// prod over factors of int_{U(1)} x^k conj(x)^l = delta_{kl}.
Q exact_u1_moment(const std::vector<std::pair<int, int>>& exponents);

// Block conditions for the defining-representation matrices of the algebra.
bool check_membership_algebra(const GroupSpec& spec, const Matrix<C>& y, double tol = 1e-12);

// Graded commutator of homogeneous matrices of the given parities.
template <class T>
Matrix<T> supercommutator(const Matrix<T>& a, int pa, const Matrix<T>& b, int pb) {
  Matrix<T> ab = a * b, ba = b * a;
  return (pa * pb) % 2 ? ab + ba : ab - ba;
}

// Monte-Carlo bookkeeping.
struct Estimate {
  C mean;
  double stderr_ = 0;
  long samples = 0;
};

C pairwise_sum(const C* v, std::size_t n);
Estimate summarize(const std::vector<C>& values);

}  // namespace superhaar
