#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cybel/error.hpp"

namespace cybel {

using Int = mpz_class;
using Rat = mpq_class;

/// Generator w of the optional quadratic number-field layer, a root of the
/// monic integer polynomial x^2 + lin*x + cst (required irreducible over Q).
struct NumberFieldSpec {
  Int lin;
  Int cst;
  std::string symbol = "w";

  bool operator==(const NumberFieldSpec& o) const {
    return lin == o.lin && cst == o.cst;
  }
};

/// Kind of the topmost quadratic layer F(t)(theta).
enum class TopExtension {
  none,        // tower stops at F(t)
  sqrt_t,      // theta^2 = t, printed as "j"
  sqrt_const,  // theta^2 = d for a rational constant d, printed "sqrt(d)"
};

class ScalarTower;
using TowerPtr = std::shared_ptr<const ScalarTower>;

/// Immutable description of a scalar tower F c F(t) c F(t)(theta).
/// F is Q or Q(w) for one quadratic irreducible. Shared by every Scalar
/// built over it; arithmetic across distinct towers is rejected unless one
/// embeds in the other (see Scalar::promoted_to).
class ScalarTower {
 public:
  /// Plain rationals: no number field, no top extension (cached singleton).
  static const TowerPtr& rationals();

  static TowerPtr make(std::optional<NumberFieldSpec> nf, TopExtension top,
                       Rat top_square = Rat(0));

  bool has_number_field() const { return nf_.has_value(); }
  const NumberFieldSpec& number_field() const;
  TopExtension top() const { return top_; }
  /// The designated d with theta^2 = d (only for TopExtension::sqrt_const).
  const Rat& top_square() const;

  bool same_as(const ScalarTower& o) const;
  /// True if every element of this tower embeds verbatim into `target`.
  bool embeds_in(const ScalarTower& target) const;

  std::string describe() const;

 private:
  ScalarTower(std::optional<NumberFieldSpec> nf, TopExtension top, Rat d);

  std::optional<NumberFieldSpec> nf_;
  TopExtension top_;
  Rat top_square_;
};

namespace detail {

/// Element a + b*w of the base field F (b = 0 when F = Q).
struct FElem {
  Rat a, b;

  FElem() = default;
  FElem(Rat av) : a(std::move(av)), b(0) {}
  FElem(Rat av, Rat bv) : a(std::move(av)), b(std::move(bv)) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
  bool operator==(const FElem& o) const { return a == o.a && b == o.b; }
};

/// Dense polynomial over F in the variable t; no trailing zero coefficients.
struct FPoly {
  std::vector<FElem> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const FPoly& o) const { return c == o.c; }
};

/// Reduced fraction of polynomials with monic denominator.
struct FRatFunc {
  FPoly num;
  FPoly den;  // monic, coprime to num

  bool is_zero() const { return num.is_zero(); }
  bool operator==(const FRatFunc& o) const {
    return num == o.num && den == o.den;
  }
};

}  // namespace detail

/// One exact element of the configured tower: base + ext * theta with
/// base, ext in F(t). Values are immutable in spirit: every operation
/// returns a new canonical Scalar.
class Scalar {
 public:
  Scalar();  // 0 over ScalarTower::rationals()
  Scalar(long v);
  Scalar(const Rat& v);

  static Scalar zero(TowerPtr tower);
  static Scalar one(TowerPtr tower);
  static Scalar from_rational(Rat v, TowerPtr tower);
  /// The transcendental t of the function-field layer.
  static Scalar t(TowerPtr tower);
  /// theta of the top quadratic layer; throws if the tower has none.
  static Scalar theta(TowerPtr tower);
  /// Generator w of the number-field layer; throws if the tower has none.
  static Scalar nf_generator(TowerPtr tower);

  const TowerPtr& tower() const { return tower_; }

  bool is_zero() const { return base_.is_zero() && ext_.is_zero(); }
  bool is_one() const;
  /// True when the theta-part vanishes (value lies in F(t)).
  bool in_base_layer() const { return ext_.is_zero(); }
  /// True when the value is a constant of F (degree 0, no t).
  bool in_constant_layer() const;
  /// Extracts the value as a plain rational if it is one.
  bool is_rational_constant(Rat* out = nullptr) const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws NonInvertibleError
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;  // throws NonInvertibleError on zero/zero divisor
  Scalar pow(long k) const;
  /// Image under the Galois conjugation theta -> -theta (identity when the
  /// tower has no top layer).
  Scalar conjugated() const;

  /// Re-expresses the value over a larger tower; throws TowerMismatchError
  /// if this value's tower does not embed.
  Scalar promoted_to(TowerPtr target) const;

  /// Canonical literal; parse(str()) reproduces the value exactly.
  std::string str() const;
  static Scalar parse(const std::string& text, TowerPtr tower);

  // Internal representation accessors (used by kummer_class and tests).
  const detail::FRatFunc& base_part() const { return base_; }
  const detail::FRatFunc& ext_part() const { return ext_; }

 private:
  Scalar(detail::FRatFunc base, detail::FRatFunc ext, TowerPtr tower);

  detail::FRatFunc base_;
  detail::FRatFunc ext_;
  TowerPtr tower_;
};

/// The nontrivial automorphism of the top quadratic layer.
struct GaloisAction {
  TowerPtr tower;
  Scalar operator()(const Scalar& x) const { return x.conjugated(); }
};

/// Designated base layer for square-class computations.
enum class KummerLayer {
  rationals,       // classes of Q^x modulo squares
  function_field,  // classes of F(t)^x modulo squares
};

/// Canonical representative of x modulo squares of the designated layer:
/// the square-free integer kernel over Q, the square-free part of
/// numerator*denominator over F(t). Throws on zero input or when x does
/// not lie in the designated layer.
Scalar kummer_class(const Scalar& x, KummerLayer layer);

/// Square-free kernel of a nonzero integer, sign preserved.
Int squarefree_kernel(const Int& n);

}  // namespace cybel
