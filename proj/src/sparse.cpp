#include "hvac/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace hvac {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_inf(const Vec& a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

void axpy(double s, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Vec scaled(const Vec& x, double s) {
  Vec out(x);
  for (double& v : out) v *= s;
  return out;
}

void Triplets::add(int row, int col, double value) {
  if (row < 0 || row >= nrows || col < 0 || col >= ncols) {
    throw std::out_of_range("Triplets::add: index (" + std::to_string(row) +
                            ", " + std::to_string(col) + ") outside " +
                            std::to_string(nrows) + "x" + std::to_string(ncols));
  }
  entries.push_back({row, col, value});
}

CsrMatrix CsrMatrix::from_triplets(const Triplets& t) {
  for (const auto& e : t.entries) {
    if (e.row < 0 || e.row >= t.nrows || e.col < 0 || e.col >= t.ncols) {
      throw std::out_of_range("CsrMatrix::from_triplets: entry out of bounds");
    }
  }
  std::vector<Triplets::Entry> sorted = t.entries;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  CsrMatrix m;
  m.nrows = t.nrows;
  m.ncols = t.ncols;
  m.row_ptr.assign(t.nrows + 1, 0);
  m.col_idx.reserve(sorted.size());
  m.values.reserve(sorted.size());

  std::size_t i = 0;
  for (int row = 0; row < t.nrows; ++row) {
    while (i < sorted.size() && sorted[i].row == row) {
      int col = sorted[i].col;
      double sum = 0.0;
      while (i < sorted.size() && sorted[i].row == row && sorted[i].col == col) {
        sum += sorted[i].value;
        ++i;
      }
      m.col_idx.push_back(col);
      m.values.push_back(sum);
    }
    m.row_ptr[row + 1] = static_cast<int>(m.col_idx.size());
  }
  return m;
}

CsrMatrix CsrMatrix::identity(int n) {
  CsrMatrix m;
  m.nrows = m.ncols = n;
  m.row_ptr.resize(n + 1);
  m.col_idx.resize(n);
  m.values.assign(n, 1.0);
  for (int i = 0; i <= n; ++i) m.row_ptr[i] = i;
  for (int i = 0; i < n; ++i) m.col_idx[i] = i;
  return m;
}

Vec CsrMatrix::multiply(const Vec& x) const {
  if (static_cast<int>(x.size()) != ncols) {
    throw std::invalid_argument("CsrMatrix::multiply: dimension mismatch");
  }
  Vec y(nrows, 0.0);
  for (int i = 0; i < nrows; ++i) {
    double s = 0.0;
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += values[p] * x[col_idx[p]];
    y[i] = s;
  }
  return y;
}

Vec CsrMatrix::multiply_transpose(const Vec& x) const {
  if (static_cast<int>(x.size()) != nrows) {
    throw std::invalid_argument("CsrMatrix::multiply_transpose: dimension mismatch");
  }
  Vec y(ncols, 0.0);
  for (int i = 0; i < nrows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) y[col_idx[p]] += values[p] * xi;
  }
  return y;
}

CsrMatrix CsrMatrix::transpose() const {
  CsrMatrix t;
  t.nrows = ncols;
  t.ncols = nrows;
  t.row_ptr.assign(ncols + 1, 0);
  t.col_idx.resize(values.size());
  t.values.resize(values.size());
  for (int c : col_idx) ++t.row_ptr[c + 1];
  for (int i = 0; i < ncols; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
  std::vector<int> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (int i = 0; i < nrows; ++i) {
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      int pos = next[col_idx[p]]++;
      t.col_idx[pos] = i;
      t.values[pos] = values[p];
    }
  }
  return t;
}

double CsrMatrix::coeff(int i, int j) const {
  auto lo = col_idx.begin() + row_ptr[i];
  auto hi = col_idx.begin() + row_ptr[i + 1];
  auto it = std::lower_bound(lo, hi, j);
  if (it != hi && *it == j) return values[it - col_idx.begin()];
  return 0.0;
}

CsrMatrix to_csr(const Triplets& t) { return CsrMatrix::from_triplets(t); }

Vec spmv(const CsrMatrix& a, const Vec& x) { return a.multiply(x); }

namespace {

// Reverse Cuthill-McKee on the symmetrized pattern; keeps the LU profile
// narrow for the mesh-structured systems this kernel is used on.
std::vector<int> rcm_ordering(const CsrMatrix& a) {
  const int n = a.nrows;
  // adjacency of A + A^T, deduplicated
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      int j = a.col_idx[p];
      if (j == i) continue;
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  std::vector<int> order;
  order.reserve(n);
  std::vector<char> visited(n, 0);
  std::vector<int> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(), [&](int x, int y) {
    return adj[x].size() < adj[y].size();
  });

  for (int start : by_degree) {
    if (visited[start]) continue;
    std::queue<int> q;
    q.push(start);
    visited[start] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      order.push_back(u);
      std::vector<int> nb;
      for (int v : adj[u])
        if (!visited[v]) nb.push_back(v);
      std::stable_sort(nb.begin(), nb.end(), [&](int x, int y) {
        return adj[x].size() < adj[y].size();
      });
      for (int v : nb) {
        visited[v] = 1;
        q.push(v);
      }
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

struct CscMatrix {
  int n = 0;
  std::vector<int> col_ptr, row_idx;
  std::vector<double> values;
};

CscMatrix csc_from_csr(const CsrMatrix& a) {
  CsrMatrix t = a.transpose();  // CSR of A^T == CSC of A
  CscMatrix c;
  c.n = a.nrows;
  c.col_ptr = std::move(t.row_ptr);
  c.row_idx = std::move(t.col_idx);
  c.values = std::move(t.values);
  return c;
}

}  // namespace

LuFactorization::LuFactorization(const CsrMatrix& a, double pivot_tol) {
  if (a.nrows != a.ncols) throw SolverError("LuFactorization: matrix not square");
  n_ = a.nrows;
  const CscMatrix acsc = csc_from_csr(a);
  q_ = rcm_ordering(a);

  pinv_.assign(n_, -1);
  l_ptr_.assign(n_ + 1, 0);
  u_ptr_.assign(n_ + 1, 0);
  const std::size_t guess = 8 * a.nnz() + n_;
  l_idx_.reserve(guess);
  l_val_.reserve(guess);
  u_idx_.reserve(guess);
  u_val_.reserve(guess);

  Vec x(n_, 0.0);
  std::vector<int> xi;          // pattern of x, topological order
  std::vector<char> mark(n_, 0);
  std::vector<int> dfs_stack, path_pos;

  for (int k = 0; k < n_; ++k) {
    const int col = q_[k];

    // Symbolic: reach of A(:, col) through the columns of L built so far.
    xi.clear();
    for (int p = acsc.col_ptr[col]; p < acsc.col_ptr[col + 1]; ++p) {
      int root = acsc.row_idx[p];
      if (mark[root]) continue;
      // iterative DFS
      dfs_stack.assign(1, root);
      path_pos.assign(1, -1);
      while (!dfs_stack.empty()) {
        int node = dfs_stack.back();
        if (!mark[node]) {
          mark[node] = 1;
          path_pos.back() = (pinv_[node] >= 0) ? l_ptr_[pinv_[node]] + 1 : -1;
        }
        bool descended = false;
        if (pinv_[node] >= 0) {
          int lcol = pinv_[node];
          int& pp = path_pos.back();
          while (pp < l_ptr_[lcol + 1]) {
            int child = l_idx_[pp];
            ++pp;
            if (!mark[child]) {
              dfs_stack.push_back(child);
              path_pos.push_back(-1);
              descended = true;
              break;
            }
          }
        }
        if (!descended) {
          xi.push_back(node);
          dfs_stack.pop_back();
          path_pos.pop_back();
        }
      }
    }
    // xi is in reverse topological order; process from the back.
    for (int p = acsc.col_ptr[col]; p < acsc.col_ptr[col + 1]; ++p) {
      x[acsc.row_idx[p]] = acsc.values[p];
    }
    double col_max = 0.0;
    for (int p = acsc.col_ptr[col]; p < acsc.col_ptr[col + 1]; ++p) {
      col_max = std::max(col_max, std::abs(acsc.values[p]));
    }

    // Numeric sparse triangular solve L x = A(:, col).
    for (auto it = xi.rbegin(); it != xi.rend(); ++it) {
      int node = *it;
      int lcol = pinv_[node];
      if (lcol < 0) continue;
      const double xj = x[node];  // L has unit diagonal (stored first)
      if (xj == 0.0) continue;
      for (int p = l_ptr_[lcol] + 1; p < l_ptr_[lcol + 1]; ++p) {
        x[l_idx_[p]] -= l_val_[p] * xj;
      }
    }

    // Partial pivoting: largest entry among not-yet-pivotal rows.
    int ipiv = -1;
    double pmax = -1.0;
    for (int node : xi) {
      if (pinv_[node] >= 0) continue;
      double av = std::abs(x[node]);
      if (av > pmax) {
        pmax = av;
        ipiv = node;
      }
    }
    if (ipiv < 0 || pmax <= pivot_tol * std::max(col_max, 1e-300)) {
      throw SolverError("LuFactorization: singular matrix (no acceptable pivot in column " +
                        std::to_string(col) + ")");
    }
    const double pivot = x[ipiv];

    // U(:, k): pivotal rows, diagonal appended last.
    for (auto it = xi.rbegin(); it != xi.rend(); ++it) {
      int node = *it;
      if (pinv_[node] >= 0) {
        u_idx_.push_back(pinv_[node]);
        u_val_.push_back(x[node]);
      }
    }
    u_idx_.push_back(k);
    u_val_.push_back(pivot);
    u_ptr_[k + 1] = static_cast<int>(u_idx_.size());

    // L(:, k): pivot row first with unit value, then the rest scaled.
    l_idx_.push_back(ipiv);
    l_val_.push_back(1.0);
    for (int node : xi) {
      if (pinv_[node] < 0 && node != ipiv) {
        l_idx_.push_back(node);
        l_val_.push_back(x[node] / pivot);
      }
    }
    pinv_[ipiv] = k;
    l_ptr_[k + 1] = static_cast<int>(l_idx_.size());

    for (int node : xi) {
      mark[node] = 0;
      x[node] = 0.0;
    }
  }

  // Remap L's row indices into pivot order so the triangular solves are plain.
  for (auto& idx : l_idx_) idx = pinv_[idx];
}

Vec LuFactorization::solve(const Vec& b) const {
  if (static_cast<int>(b.size()) != n_) throw SolverError("LuFactorization::solve: size mismatch");
  Vec w(n_);
  for (int i = 0; i < n_; ++i) w[pinv_[i]] = b[i];
  // L w = P b  (unit diagonal stored first in each column)
  for (int k = 0; k < n_; ++k) {
    const double xk = w[k];
    if (xk == 0.0) continue;
    for (int p = l_ptr_[k] + 1; p < l_ptr_[k + 1]; ++p) w[l_idx_[p]] -= l_val_[p] * xk;
  }
  // U z = w  (diagonal stored last in each column)
  for (int k = n_ - 1; k >= 0; --k) {
    const int dpos = u_ptr_[k + 1] - 1;
    w[k] /= u_val_[dpos];
    const double xk = w[k];
    if (xk == 0.0) continue;
    for (int p = u_ptr_[k]; p < dpos; ++p) w[u_idx_[p]] -= u_val_[p] * xk;
  }
  Vec out(n_);
  for (int k = 0; k < n_; ++k) out[q_[k]] = w[k];
  return out;
}

Vec LuFactorization::solve_transpose(const Vec& b) const {
  if (static_cast<int>(b.size()) != n_) {
    throw SolverError("LuFactorization::solve_transpose: size mismatch");
  }
  Vec w(n_);
  for (int k = 0; k < n_; ++k) w[k] = b[q_[k]];
  // U^T v = c: column k of U holds row k of U^T, diagonal last.
  for (int k = 0; k < n_; ++k) {
    const int dpos = u_ptr_[k + 1] - 1;
    double s = w[k];
    for (int p = u_ptr_[k]; p < dpos; ++p) s -= u_val_[p] * w[u_idx_[p]];
    w[k] = s / u_val_[dpos];
  }
  // L^T v = w: unit diagonal first in each column.
  for (int k = n_ - 1; k >= 0; --k) {
    double s = w[k];
    for (int p = l_ptr_[k] + 1; p < l_ptr_[k + 1]; ++p) s -= l_val_[p] * w[l_idx_[p]];
    w[k] = s;
  }
  Vec out(n_);
  for (int i = 0; i < n_; ++i) out[i] = w[pinv_[i]];
  return out;
}

Vec lu_solve(const CsrMatrix& a, const Vec& b) {
  return LuFactorization(a).solve(b);
}

}  // namespace hvac
