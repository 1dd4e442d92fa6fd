#include "cybel/linalg.hpp"

#include <algorithm>

namespace cybel {

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) throw Error("matrix dimension mismatch");
  RatMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

RatMat RatMat::transposed() const {
  RatMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

RatMat rat_inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  int n = m.rows();
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Error("matrix is singular");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(pivot, j), a.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    Rat lead = a.at(col, col);
    for (int j = 0; j < n; ++j) {
      a.at(col, j) /= lead;
      inv.at(col, j) /= lead;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a.at(r, col) == 0) continue;
      Rat f = a.at(r, col);
      for (int j = 0; j < n; ++j) {
        a.at(r, j) -= f * a.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

AffineSolution solve_affine(RatMat a, std::vector<Rat> b) {
  int rows = a.rows(), cols = a.cols();
  if (static_cast<int>(b.size()) != rows) throw Error("rhs size mismatch");

  std::vector<int> pivot_col;  // pivot column of each rank row
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pr = -1;
    for (int r = rank; r < rows; ++r)
      if (a.at(r, col) != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != rank) {
      for (int j = 0; j < cols; ++j) std::swap(a.at(pr, j), a.at(rank, j));
      std::swap(b[pr], b[rank]);
    }
    Rat lead = a.at(rank, col);
    for (int j = 0; j < cols; ++j) a.at(rank, j) /= lead;
    b[rank] /= lead;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a.at(r, col) == 0) continue;
      Rat f = a.at(r, col);
      for (int j = 0; j < cols; ++j) a.at(r, j) -= f * a.at(rank, j);
      b[r] -= f * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  AffineSolution sol;
  sol.consistent = true;
  for (int r = rank; r < rows; ++r)
    if (b[r] != 0) {
      sol.consistent = false;
      return sol;
    }

  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;

  sol.particular.assign(cols, Rat(0));
  for (int r = 0; r < rank; ++r) sol.particular[pivot_col[r]] = b[r];

  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> basis(cols, Rat(0));
    basis[c] = 1;
    for (int r = 0; r < rank; ++r) basis[pivot_col[r]] = -a.at(r, c);
    sol.nullspace.push_back(std::move(basis));
  }
  return sol;
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols_ != o.rows_) throw Error("matrix dimension mismatch");
  IntMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

IntMat IntMat::transposed() const {
  IntMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Int int_det(const IntMat& m) {
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (a.at(r, k) != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

int SmithForm::rank() const {
  int r = 0;
  for (int i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d.at(i, i) != 0) ++r;
  return r;
}

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> out;
  for (int i = 0; i < std::min(d.rows(), d.cols()); ++i)
    out.push_back(d.at(i, i));
  return out;
}

std::vector<Int> SmithForm::nontrivial_divisors() const {
  std::vector<Int> out;
  for (const Int& v : diagonal())
    if (v > 1) out.push_back(v);
  return out;
}

namespace {

struct SnfWorker {
  IntMat m, u, v, v_inv;

  explicit SnfWorker(IntMat mm)
      : m(std::move(mm)),
        u(IntMat::identity(m.rows())),
        v(IntMat::identity(m.cols())),
        v_inv(IntMat::identity(m.cols())) {}

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
    for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
  }

  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
    for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
    for (int c = 0; c < v_inv.cols(); ++c)
      std::swap(v_inv.at(i, c), v_inv.at(j, c));
  }

  // row_i += k * row_j
  void add_row(int i, int j, const Int& k) {
    for (int c = 0; c < m.cols(); ++c) m.at(i, c) += k * m.at(j, c);
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) += k * u.at(j, c);
  }

  // col_j += k * col_i   (v_inv: row_i -= k * row_j)
  void add_col(int j, int i, const Int& k) {
    for (int r = 0; r < m.rows(); ++r) m.at(r, j) += k * m.at(r, i);
    for (int r = 0; r < v.rows(); ++r) v.at(r, j) += k * v.at(r, i);
    for (int c = 0; c < v_inv.cols(); ++c)
      v_inv.at(i, c) -= k * v_inv.at(j, c);
  }

  void negate_row(int i) {
    for (int c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
  }

  bool find_pivot(int s, int& pr, int& pc) const {
    bool found = false;
    Int best;
    for (int r = s; r < m.rows(); ++r)
      for (int c = s; c < m.cols(); ++c) {
        const Int& x = m.at(r, c);
        if (x == 0) continue;
        Int a = abs(x);
        if (!found || a < best) {
          found = true;
          best = a;
          pr = r;
          pc = c;
        }
      }
    return found;
  }

  void run() {
    int n = std::min(m.rows(), m.cols());
    for (int s = 0; s < n; ++s) {
      int pr, pc;
      if (!find_pivot(s, pr, pc)) break;
      swap_rows(s, pr);
      swap_cols(s, pc);

      bool dirty = true;
      while (dirty) {
        dirty = false;
        // Clear the pivot column with Euclidean steps.
        for (int r = s + 1; r < m.rows(); ++r) {
          if (m.at(r, s) == 0) continue;
          Int q = m.at(r, s) / m.at(s, s);  // truncated division
          if (q != 0) add_row(r, s, -q);
          if (m.at(r, s) != 0) {  // smaller remainder becomes the pivot
            swap_rows(s, r);
            dirty = true;
          }
        }
        for (int c = s + 1; c < m.cols(); ++c) {
          if (m.at(s, c) == 0) continue;
          Int q = m.at(s, c) / m.at(s, s);
          if (q != 0) add_col(c, s, -q);
          if (m.at(s, c) != 0) {
            swap_cols(s, c);
            dirty = true;
          }
        }
      }

      // Divisibility: fold any non-multiple into the pivot's row and retry.
      bool fixed = true;
      for (int r = s + 1; r < m.rows() && fixed; ++r)
        for (int c = s + 1; c < m.cols() && fixed; ++c)
          if (m.at(r, c) % m.at(s, s) != 0) {
            add_row(s, r, Int(1));
            fixed = false;
          }
      if (!fixed) {
        --s;
        continue;
      }
      if (m.at(s, s) < 0) negate_row(s);
    }
  }
};

}  // namespace

SmithForm smith_normal_form(IntMat m) {
  SnfWorker w(std::move(m));
  w.run();
  return SmithForm{std::move(w.u), std::move(w.m), std::move(w.v),
                   std::move(w.v_inv)};
}

}  // namespace cybel
