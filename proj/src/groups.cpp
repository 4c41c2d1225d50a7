#include "superhaar/groups.hpp"

#include <regex>
#include <stdexcept>

namespace superhaar {

GroupSpec GroupSpec::osp(int m, int n) { return {GroupKind::OSp, m, n}; }
GroupSpec GroupSpec::u(int p, int q) { return {GroupKind::U, p, q}; }
GroupSpec GroupSpec::uosp(int m, int n) { return {GroupKind::UOSp, m, n}; }

Conjugation GroupSpec::conjugation() const {
  switch (kind) {
    case GroupKind::OSp:
      return Conjugation::None;
    case GroupKind::U:
      return Conjugation::RealGenerators;
    case GroupKind::UOSp:
      return Conjugation::SecondKind;
  }
  return Conjugation::None;
}

Matrix<int> GroupSpec::metric() const {
  if (kind == GroupKind::U) throw std::logic_error("U(p|q) has no orthosymplectic metric");
  return osp_metric(a, b);
}

Matrix<Q> GroupSpec::hermitian_metric() const {
  if (kind != GroupKind::U) throw std::logic_error("hermitian metric only for U(p|q)");
  return u_metric(a, b);
}

std::string GroupSpec::str() const {
  switch (kind) {
    case GroupKind::OSp:
      return "osp:m=" + std::to_string(a) + ",n=" + std::to_string(b);
    case GroupKind::U:
      return "u:p=" + std::to_string(a) + ",q=" + std::to_string(b);
    case GroupKind::UOSp:
      return "uosp:m=" + std::to_string(a) + ",n=" + std::to_string(b);
  }
  return {};
}

std::string GroupSpec::name() const {
  switch (kind) {
    case GroupKind::OSp:
      return "OSp(" + std::to_string(a) + "|" + std::to_string(2 * b) + ")";
    case GroupKind::U:
      return "U(" + std::to_string(a) + "|" + std::to_string(b) + ")";
    case GroupKind::UOSp:
      return "UOSp(" + std::to_string(a) + "|" + std::to_string(2 * b) + ")";
  }
  return {};
}

GroupSpec parse_spec(const std::string& s) {
  static const std::regex re(R"(^\s*(osp|uosp|u)\s*:\s*([a-z])\s*=\s*(\d+)\s*,\s*([a-z])\s*=\s*(\d+)\s*$)");
  std::smatch mt;
  if (!std::regex_match(s, mt, re)) throw std::invalid_argument("malformed group spec: " + s);
  const std::string kind = mt[1], k1 = mt[2], k2 = mt[4];
  const int v1 = std::stoi(mt[3]), v2 = std::stoi(mt[5]);
  GroupSpec g;
  if (kind == "u") {
    if (k1 != "p" || k2 != "q") throw std::invalid_argument("expected u:p=P,q=Q");
    g = GroupSpec::u(v1, v2);
  } else {
    if (k1 != "m" || k2 != "n") throw std::invalid_argument("expected " + kind + ":m=M,n=N");
    g = kind == "osp" ? GroupSpec::osp(v1, v2) : GroupSpec::uosp(v1, v2);
  }
  if (g.a < 1 || g.b < 1) throw std::invalid_argument("group dimensions must be positive: " + s);
  if (g.grassmann_count() > kMaxGenerators)
    throw std::invalid_argument("too many Grassmann generators for " + s);
  return g;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

Eigen::MatrixXcd haar_unitary(int p, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd z(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) z(i, j) = C(nd(rng), nd(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < p; ++j) {
    C d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0 ? d / a : C(1.0));
  }
  return q;
}

Eigen::MatrixXd haar_orthogonal(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd z(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) z(i, j) = nd(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  for (int j = 0; j < m; ++j)
    if (qr.matrixQR()(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

// Quaternionic Gram-Schmidt: column n+k is -J conj(column k), which keeps
// z^T J z = J while the first n columns are orthonormalized.
Eigen::MatrixXcd haar_usp(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const int d = 2 * n;
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    J(i, n + i) = 1.0;
    J(n + i, i) = -1.0;
  }
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = C(nd(rng), nd(rng));
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < k; ++j) {
        v -= z.col(j) * z.col(j).dot(v);
        v -= z.col(n + j) * z.col(n + j).dot(v);
      }
    v.normalize();
    z.col(k) = v;
    z.col(n + k) = -J * v.conjugate();
  }
  return z;
}

Matrix<C> from_eigen(const Eigen::MatrixXcd& m) {
  Matrix<C> r(int(m.rows()), int(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

Matrix<C> from_eigen(const Eigen::MatrixXd& m) { return from_eigen(Eigen::MatrixXcd(m.cast<C>())); }

Eigen::MatrixXcd to_eigen(const Matrix<C>& m) {
  Eigen::MatrixXcd r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

Point sample(const GroupSpec& spec, std::mt19937_64& rng) {
  if (spec.kind == GroupKind::U) return {from_eigen(haar_unitary(spec.a, rng)), from_eigen(haar_unitary(spec.b, rng))};
  return {from_eigen(haar_orthogonal(spec.a, rng)), from_eigen(haar_usp(spec.b, rng))};
}

Point sample_indexed(const GroupSpec& spec, std::uint64_t seed, std::uint64_t index) {
  auto rng = sample_stream(seed, index);
  return sample(spec, rng);
}

namespace {

Matrix<Q> cayley(const Matrix<Q>& s) {
  Matrix<Q> id = Matrix<Q>::identity(s.rows(), Q(1));
  return (id - s) * scalar_inverse(Matrix<Q>(id + s));
}

Q small(std::mt19937_64& rng, int range, bool complex) {
  std::uniform_int_distribution<int> d(-range, range);
  std::uniform_int_distribution<int> den(1, 3);
  return Q(mpq_class(d(rng), den(rng)), complex ? mpq_class(d(rng), den(rng)) : mpq_class(0));
}

Matrix<Q> adjoint(const Matrix<Q>& m) { return m.transpose().map([](const Q& v) { return conj(v); }); }

}  // namespace

ClassicalPoint<Q> cayley_point(const GroupSpec& spec, std::mt19937_64& rng, int range) {
  auto anti_hermitian = [&](int d, bool complex) {
    Matrix<Q> h(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) h(i, j) = small(rng, range, complex);
    return Matrix<Q>(h - (complex ? adjoint(h) : h.transpose()));
  };
  ClassicalPoint<Q> p;
  if (spec.kind == GroupKind::U) {
    p.x = cayley(anti_hermitian(spec.a, true));
    p.y = cayley(anti_hermitian(spec.b, true));
    return p;
  }
  p.x = cayley(anti_hermitian(spec.a, false));
  if (std::uniform_int_distribution<int>(0, 1)(rng)) {
    for (int j = 0; j < spec.a; ++j) p.x(0, j) = -p.x(0, j);
  }
  // usp(2n): [[a, b], [-conj(b), conj(a)]], a anti-hermitian, b symmetric.
  const int n = spec.b;
  Matrix<Q> a = anti_hermitian(n, true);
  Matrix<Q> b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) b(i, j) = b(j, i) = small(rng, range, true);
  Matrix<Q> bc = b.map([](const Q& v) { return Q(-conj(v)); });
  Matrix<Q> ac = a.map([](const Q& v) { return conj(v); });
  p.y = cayley(Matrix<Q>::from_blocks(a, b, bc, ac));
  return p;
}

double classical_residual(const GroupSpec& spec, const Point& p) {
  Eigen::MatrixXcd x = to_eigen(p.x), y = to_eigen(p.y);
  double r = (x.adjoint() * x - Eigen::MatrixXcd::Identity(x.rows(), x.cols())).cwiseAbs().maxCoeff();
  r = std::max(r, (y.adjoint() * y - Eigen::MatrixXcd::Identity(y.rows(), y.cols())).cwiseAbs().maxCoeff());
  if (spec.orthosymplectic()) {
    r = std::max(r, x.imag().cwiseAbs().maxCoeff());
    Eigen::MatrixXcd J = to_eigen(as_ring<C>(symplectic_J(spec.b)));
    r = std::max(r, (y.transpose() * J * y - J).cwiseAbs().maxCoeff());
  }
  return r;
}

Q exact_u1_moment(const std::vector<std::pair<int, int>>& exponents) {
  for (auto [k, l] : exponents)
    if (k != l) return Q(0);
  return Q(1);
}

bool check_membership_algebra(const GroupSpec& spec, const Matrix<C>& y, double tol) {
  const int k = spec.even_dim(), l = spec.odd_dim();
  if (y.rows() != k + l || y.cols() != k + l) return false;
  Eigen::MatrixXcd Y = to_eigen(y);
  Eigen::MatrixXcd A = Y.topLeftCorner(k, k), Cb = Y.topRightCorner(k, l), L = Y.bottomLeftCorner(l, k),
                   B = Y.bottomRightCorner(l, l);
  auto small_enough = [tol](const Eigen::MatrixXcd& m) { return m.size() == 0 || m.cwiseAbs().maxCoeff() <= tol; };
  if (spec.orthosymplectic()) {
    Eigen::MatrixXcd J = to_eigen(as_ring<C>(symplectic_J(spec.b)));
    return small_enough(A.transpose() + A) && small_enough(B.transpose() - J * B * J) &&
           small_enough(L - J * Cb.transpose());
  }
  const C iu(0.0, 1.0);
  return small_enough(A.adjoint() + A) && small_enough(B.adjoint() + B) && small_enough(L + iu * Cb.adjoint());
}

C pairwise_sum(const C* v, std::size_t n) {
  if (n <= 8) {
    C s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

Estimate summarize(const std::vector<C>& values) {
  Estimate e;
  e.samples = long(values.size());
  if (values.empty()) return e;
  e.mean = pairwise_sum(values.data(), values.size()) / double(values.size());
  if (values.size() < 2) return e;
  std::vector<C> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = std::norm(values[i] - e.mean);
  const double ss = pairwise_sum(sq.data(), sq.size()).real();
  e.stderr_ = std::sqrt(ss / (double(values.size()) * double(values.size() - 1)));
  return e;
}

}  // namespace superhaar
