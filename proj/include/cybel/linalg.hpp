#pragma once

#include <vector>

#include "cybel/scalar.hpp"

namespace cybel {

/// Dense rational matrix, row-major.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static RatMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return a_[r * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[r * cols_ + c]; }

  RatMat operator*(const RatMat& o) const;
  RatMat transposed() const;
  bool operator==(const RatMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

/// Inverse of a nonsingular rational matrix; throws Error when singular.
RatMat rat_inverse(const RatMat& m);

/// Exact solution set of A x = b. The particular solution assigns zero to
/// every free variable; pivoting scans columns left to right and picks the
/// first nonzero entry, so results are reproducible.
struct AffineSolution {
  bool consistent = false;
  std::vector<Rat> particular;
  std::vector<std::vector<Rat>> nullspace;
};

AffineSolution solve_affine(RatMat a, std::vector<Rat> b);

/// Dense integer matrix, row-major.
class IntMat {
 public:
  IntMat() = default;
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static IntMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int r, int c) { return a_[r * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[r * cols_ + c]; }

  IntMat operator*(const IntMat& o) const;
  IntMat transposed() const;
  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// Exact determinant (Bareiss fraction-free elimination).
Int int_det(const IntMat& m);

/// Smith normal form u*m*v = d with u, v unimodular and d diagonal with
/// each diagonal entry dividing the next. v_inv is maintained alongside v;
/// its rows give the character basis adapted to the row lattice of m.
struct SmithForm {
  IntMat u, d, v, v_inv;

  int rank() const;
  std::vector<Int> diagonal() const;
  /// Elementary divisors greater than 1, in divisibility order.
  std::vector<Int> nontrivial_divisors() const;
};

SmithForm smith_normal_form(IntMat m);

}  // namespace cybel
