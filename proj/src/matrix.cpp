#include "superhaar/matrix.hpp"

namespace superhaar {

Matrix<int> symplectic_J(int n) {
  Matrix<int> j(2 * n, 2 * n, 0);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return j;
}

Matrix<int> osp_metric(int m, int n) {
  Matrix<int> g(m + 2 * n, m + 2 * n, 0);
  for (int i = 0; i < m; ++i) g(i, i) = 1;
  g.set_block(m, m, symplectic_J(n));
  return g;
}

Matrix<Q> u_metric(int p, int q) {
  Matrix<Q> h(p + q, p + q);
  for (int i = 0; i < p; ++i) h(i, i) = Q(1);
  for (int i = 0; i < q; ++i) h(p + i, p + i) = Q::unit_i();
  return h;
}

}  // namespace superhaar
