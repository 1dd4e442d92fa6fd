#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cybel/linalg.hpp"

namespace cybel {

enum class LieType { A, B, C, D, E, F, G };

LieType lie_type_from_string(const std::string& s);
char lie_type_char(LieType t);

/// Root coordinates in the simple-root basis.
using RootVec = std::vector<int>;

struct WeylElement {
  /// Integer matrix on root coordinates; column j is the image of alpha_j.
  std::vector<std::vector<int>> matrix;
  /// Reduced word in simple reflections, first letter applied first.
  std::vector<int> word;

  RootVec apply(const RootVec& v) const;
};

/// Reduced root system of a given type and rank. The bilinear form is
/// normalized so long roots have squared length 2; positive roots are listed
/// by height, then lexicographically, and that order is fixed everywhere.
class RootSystem {
 public:
  static RootSystem build(LieType type, int rank);

  LieType type() const { return type_; }
  int rank() const { return rank_; }
  std::string label() const;

  /// Cartan integers A[i][j] = 2(alpha_i, alpha_j)/(alpha_j, alpha_j).
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  /// Symmetrizer d_j = (alpha_j, alpha_j)/2, so (alpha_i,alpha_j) = d_j*A[i][j].
  const Rat& symmetrizer(int j) const { return sym_[j]; }

  int num_positive() const { return static_cast<int>(positive_.size()); }
  const RootVec& positive_root(int idx) const { return positive_[idx]; }
  const std::vector<RootVec>& positive_roots() const { return positive_; }
  std::optional<int> positive_index(const RootVec& v) const;
  bool is_positive_root(const RootVec& v) const;
  bool is_root(const RootVec& v) const;

  RootVec simple_root(int i) const;
  int height(const RootVec& v) const;

  Rat form(const RootVec& x, const RootVec& y) const;
  Rat length_sq(const RootVec& v) const { return form(v, v); }
  /// 2(beta, alpha_i)/(alpha_i, alpha_i); an integer for beta in the lattice.
  int pairing(const RootVec& beta, int i) const;

  RootVec reflect(int i, const RootVec& v) const;

  const WeylElement& longest_weyl() const { return w0_; }
  /// The permutation pi of simple roots with -w0(alpha_i) = alpha_{pi(i)}.
  const std::vector<int>& diagram_involution() const { return minus_w0_; }

  /// True iff the bijection src->dst preserves all pairwise form values.
  /// Throws Error if tau is not a bijection from src onto dst.
  bool is_isometry(const std::vector<int>& src, const std::vector<int>& dst,
                   const std::map<int, int>& tau) const;

 private:
  RootSystem() = default;
  void generate_positive_roots();
  void compute_longest_weyl();

  LieType type_;
  int rank_ = 0;
  RatMat gram_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Rat> sym_;
  std::vector<RootVec> positive_;
  std::map<RootVec, int> index_;
  WeylElement w0_;
  std::vector<int> minus_w0_;
};

}  // namespace cybel
