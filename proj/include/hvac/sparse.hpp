// Minimal sparse linear algebra kernel: triplet assembly, CSR storage,
// sparse LU with partial pivoting, and the handful of dense-vector helpers
// the solvers need. Everything here is deterministic and single-threaded;
// factorizations are immutable after construction and safe to share.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hvac {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm_inf(const Vec& a);
double norm2(const Vec& a);
// y += s * x
void axpy(double s, const Vec& x, Vec& y);
Vec scaled(const Vec& x, double s);

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Unassembled (row, col, value) entries. Duplicates are allowed and are
// summed when converting to CSR.
struct Triplets {
  struct Entry {
    int row;
    int col;
    double value;
  };

  int nrows = 0;
  int ncols = 0;
  std::vector<Entry> entries;

  Triplets() = default;
  Triplets(int nrows_, int ncols_) : nrows(nrows_), ncols(ncols_) {}

  void add(int row, int col, double value);
  void reserve(std::size_t n) { entries.reserve(n); }
};

// Compressed sparse row matrix. Column indices are strictly increasing
// within each row; row_ptr[nrows] == nnz.
struct CsrMatrix {
  int nrows = 0;
  int ncols = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> values;

  static CsrMatrix from_triplets(const Triplets& t);
  static CsrMatrix identity(int n);

  std::size_t nnz() const { return values.size(); }
  Vec multiply(const Vec& x) const;
  Vec multiply_transpose(const Vec& x) const;
  CsrMatrix transpose() const;
  // Stored value at (i, j), 0.0 when the entry is structurally absent.
  double coeff(int i, int j) const;
};

CsrMatrix to_csr(const Triplets& t);
Vec spmv(const CsrMatrix& a, const Vec& x);

// Sparse LU factorization with partial pivoting, left-looking a column at a
// time over a reverse Cuthill-McKee column ordering. The factors are reused
// across arbitrarily many solve / solve_transpose calls, which is what the
// time stepper and the adjoint sweep rely on.
class LuFactorization {
 public:
  explicit LuFactorization(const CsrMatrix& a, double pivot_tol = 1e-12);

  Vec solve(const Vec& b) const;
  Vec solve_transpose(const Vec& b) const;
  int size() const { return n_; }

 private:
  int n_ = 0;
  // L and U in compressed-column form. L is unit lower triangular with the
  // diagonal stored first in each column; U stores its diagonal last.
  std::vector<int> l_ptr_, l_idx_;
  std::vector<double> l_val_;
  std::vector<int> u_ptr_, u_idx_;
  std::vector<double> u_val_;
  std::vector<int> pinv_;  // row i of A is pivot row pinv_[i]
  std::vector<int> q_;     // column k of the factorization is column q_[k] of A
};

// One-shot factor-and-solve for A x = b.
Vec lu_solve(const CsrMatrix& a, const Vec& b);

}  // namespace hvac
