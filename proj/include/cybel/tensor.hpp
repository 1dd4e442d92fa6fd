#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "cybel/rootsys.hpp"
#include "cybel/scalar.hpp"

namespace cybel {

class ChevalleyAlgebra;
struct AlgebraAutomorphism;

/// Sparse algebra element: sorted (basis index, coefficient) pairs.
using SparseElem = std::vector<std::pair<int, Scalar>>;

/// Sparse element of g (x) g over a fixed algebra basis. Terms are kept in
/// lexicographic key order, so iteration, printing and equality are
/// deterministic. All coefficients live in one scalar tower.
class Tensor2 {
 public:
  using Key = std::pair<int, int>;

  Tensor2() : tower_(ScalarTower::rationals()) {}
  explicit Tensor2(TowerPtr tower) : tower_(std::move(tower)) {}

  const TowerPtr& tower() const { return tower_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int support_size() const { return static_cast<int>(terms_.size()); }

  void add_term(int i, int j, const Scalar& c);
  Scalar coeff(int i, int j) const;

  Tensor2 operator+(const Tensor2& o) const;
  Tensor2 operator-(const Tensor2& o) const;
  Tensor2 operator-() const;
  Tensor2 scaled(const Scalar& c) const;
  bool operator==(const Tensor2& o) const;
  bool operator!=(const Tensor2& o) const { return !(*this == o); }

  /// r^21: legs exchanged.
  Tensor2 swapped() const;

  Tensor2 promoted_to(TowerPtr target) const;

 private:
  std::map<Key, Scalar> terms_;
  TowerPtr tower_;
};

/// Sparse element of g (x) g (x) g; same conventions as Tensor2.
class Tensor3 {
 public:
  using Key = std::tuple<int, int, int>;

  Tensor3() : tower_(ScalarTower::rationals()) {}
  explicit Tensor3(TowerPtr tower) : tower_(std::move(tower)) {}

  const TowerPtr& tower() const { return tower_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int i, int j, int k, const Scalar& c);
  bool operator==(const Tensor3& o) const;

 private:
  std::map<Key, Scalar> terms_;
  TowerPtr tower_;
};

/// CYB(r) = [r12, r13] + [r12, r23] + [r13, r23].
Tensor3 cyb(const ChevalleyAlgebra& alg, const Tensor2& r);

/// (phi (x) phi)(r) for a linear map phi on g.
Tensor2 ad_action(const AlgebraAutomorphism& phi, const Tensor2& r);

/// delta_r(a) = [a (x) 1 + 1 (x) a, r].
Tensor2 cobracket(const ChevalleyAlgebra& alg, const Tensor2& r,
                  const SparseElem& a);

/// Character by which the torus scales the term x_i (x) x_j: the sum of the
/// two leg weights, as a vector in the simple-root basis.
RootVec term_character(const ChevalleyAlgebra& alg, int i, int j);

/// True iff every supported term of r has character zero.
bool is_torus_fixed(const ChevalleyAlgebra& alg, const Tensor2& r);

}  // namespace cybel
