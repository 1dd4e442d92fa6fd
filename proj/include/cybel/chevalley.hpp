#pragma once

#include <string>
#include <vector>

#include "cybel/rootsys.hpp"
#include "cybel/tensor.hpp"

namespace cybel {

/// Linear map on g given by its dense matrix over a scalar tower; column b
/// holds the image of basis vector b. Flags record certified properties.
struct AlgebraAutomorphism {
  int dim = 0;
  std::vector<Scalar> entries;  // row-major dim x dim
  TowerPtr tower;
  bool involution = false;
  bool stabilizes_cartan = false;
  bool stabilizes_borel = false;

  static AlgebraAutomorphism identity(int dim, TowerPtr tower);

  Scalar& at(int r, int c) { return entries[r * dim + c]; }
  const Scalar& at(int r, int c) const { return entries[r * dim + c]; }

  /// Nonzero entries of column b.
  SparseElem apply_basis(int b) const;
  SparseElem apply(const SparseElem& v) const;

  /// Matrix product: (*this) after `inner`.
  AlgebraAutomorphism compose(const AlgebraAutomorphism& inner) const;
  AlgebraAutomorphism inverse() const;
  /// Entrywise Galois conjugation.
  AlgebraAutomorphism conjugated() const;
  AlgebraAutomorphism promoted_to(TowerPtr target) const;

  bool operator==(const AlgebraAutomorphism& o) const;
  bool is_identity() const;
  /// Checks M*M = 1 on the matrix level.
  bool squares_to_identity() const;
};

/// The Casimir element and its Cartan part.
struct Casimir {
  Tensor2 omega;
  Tensor2 cartan_part;
};

/// Split simple Lie algebra in a Chevalley basis {e_a} u {f_a} u {h_i}.
/// Structure constants are exact rationals; signs come from the
/// extraspecial-pair convention over the fixed root order, certified by the
/// Jacobi/invariance test suite rather than by an external table.
class ChevalleyAlgebra {
 public:
  using SparseVec = std::vector<std::pair<int, Rat>>;

  static ChevalleyAlgebra build(RootSystem rs);

  const RootSystem& root_system() const { return rs_; }
  int dim() const { return dim_; }
  int num_positive() const { return num_pos_; }
  int rank() const { return rs_.rank(); }

  int e_index(int root_idx) const { return root_idx; }
  int f_index(int root_idx) const { return num_pos_ + root_idx; }
  int h_index(int i) const { return 2 * num_pos_ + i; }
  bool is_e(int b) const { return b < num_pos_; }
  bool is_f(int b) const { return b >= num_pos_ && b < 2 * num_pos_; }
  bool is_h(int b) const { return b >= 2 * num_pos_; }
  /// Positive-root index of an e/f basis vector.
  int root_of(int b) const { return is_e(b) ? b : b - num_pos_; }

  /// Weight of the basis vector: the root for e, its negative for f, zero
  /// for Cartan elements.
  const RootVec& weight_of(int b) const { return weights_[b]; }
  std::string basis_name(int b) const;
  /// Inverse of basis_name (used by the JSON/CLI surfaces).
  int basis_index_from_name(const std::string& name) const;

  const SparseVec& bracket_basis(int a, int b) const {
    return table_[a * dim_ + b];
  }
  SparseVec bracket(const SparseVec& x, const SparseVec& y) const;

  /// Invariant bilinear form on basis pairs (long roots have length^2 = 2).
  Rat form_basis(int a, int b) const;
  /// e_{-a} := dual_scale(a) * f_a satisfies <e_a, e_{-a}> = 1.
  Rat dual_scale(int root_idx) const { return dual_scale_[root_idx]; }

  /// Structure constant N_{x,y} for arbitrary roots x, y with x+y a root.
  Rat structure_constant(const RootVec& x, const RootVec& y) const;

  Casimir casimir() const;

  /// The Chevalley involution c: e -> -f, f -> -e, h -> -h.
  AlgebraAutomorphism chevalley_involution() const;
  /// Lift d of the diagram automorphism -w0, +1 on simple generators.
  AlgebraAutomorphism diagram_lift() const;
  /// S = c * d, satisfying S(g^alpha) = g^{w0(alpha)} and S^2 = 1.
  AlgebraAutomorphism w0_involution() const;

 private:
  ChevalleyAlgebra() = default;
  void build_structure_constants();
  Rat n_pos(int a, int b) const;  // table of positive-pair constants

  RootSystem rs_;
  int num_pos_ = 0;
  int dim_ = 0;
  std::vector<RootVec> weights_;
  std::vector<Rat> dual_scale_;
  std::map<std::pair<int, int>, Rat> npos_;
  std::vector<SparseVec> table_;
  std::vector<std::pair<int, int>> extraspecial_;  // per positive root index
};

/// Exact check that phi([x,y]) = [phi(x), phi(y)] on every basis pair.
bool preserves_bracket(const ChevalleyAlgebra& alg,
                       const AlgebraAutomorphism& phi);

}  // namespace cybel
