#include "cybel/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cybel {

namespace {

// ---------------------------------------------------------------------------
// Number-field coefficient arithmetic: elements a + b*w with w^2 = -lin*w-cst.
// When the tower has no number-field layer all b components are zero and the
// lin/cst values are never consulted.
// ---------------------------------------------------------------------------

struct NfCtx {
  Rat lin{0};
  Rat cst{0};
};

using detail::FElem;
using detail::FPoly;
using detail::FRatFunc;

FElem fe_add(const FElem& x, const FElem& y) { return {x.a + y.a, x.b + y.b}; }
FElem fe_sub(const FElem& x, const FElem& y) { return {x.a - y.a, x.b - y.b}; }
FElem fe_neg(const FElem& x) { return {-x.a, -x.b}; }

FElem fe_mul(const FElem& x, const FElem& y, const NfCtx& nf) {
  Rat cross = x.b * y.b;
  return {x.a * y.a - nf.cst * cross, x.a * y.b + x.b * y.a - nf.lin * cross};
}

FElem fe_inv(const FElem& x, const NfCtx& nf) {
  Rat norm = x.a * x.a - nf.lin * x.a * x.b + nf.cst * x.b * x.b;
  if (norm == 0)
    throw NonInvertibleError("division by a non-invertible field element");
  return {(x.a - nf.lin * x.b) / norm, -x.b / norm};
}


// ---------------------------------------------------------------------------
// Dense polynomials over F in t.
// ---------------------------------------------------------------------------

void poly_trim(FPoly& p) {
  while (!p.c.empty() && p.c.back().is_zero()) p.c.pop_back();
}

FPoly poly_const(FElem v) {
  FPoly p;
  if (!v.is_zero()) p.c.push_back(std::move(v));
  return p;
}

FPoly poly_one() { return poly_const(FElem(Rat(1))); }

bool felem_is_one(const FElem& v) { return v.a == 1 && v.b == 0; }

const FElem& poly_lc(const FPoly& p) { return p.c.back(); }

FPoly poly_add(const FPoly& x, const FPoly& y) {
  FPoly r;
  r.c.resize(std::max(x.c.size(), y.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (i < x.c.size()) r.c[i] = fe_add(r.c[i], x.c[i]);
    if (i < y.c.size()) r.c[i] = fe_add(r.c[i], y.c[i]);
  }
  poly_trim(r);
  return r;
}

FPoly poly_neg(const FPoly& x) {
  FPoly r = x;
  for (auto& v : r.c) v = fe_neg(v);
  return r;
}

FPoly poly_sub(const FPoly& x, const FPoly& y) {
  return poly_add(x, poly_neg(y));
}

FPoly poly_mul(const FPoly& x, const FPoly& y, const NfCtx& nf) {
  FPoly r;
  if (x.is_zero() || y.is_zero()) return r;
  r.c.assign(x.c.size() + y.c.size() - 1, FElem(Rat(0)));
  for (size_t i = 0; i < x.c.size(); ++i)
    for (size_t j = 0; j < y.c.size(); ++j)
      r.c[i + j] = fe_add(r.c[i + j], fe_mul(x.c[i], y.c[j], nf));
  poly_trim(r);
  return r;
}

FPoly poly_scale(const FPoly& x, const FElem& s, const NfCtx& nf) {
  return poly_mul(x, poly_const(s), nf);
}

// Long division over the coefficient field; b must be nonzero.
void poly_divmod(const FPoly& a, const FPoly& b, const NfCtx& nf, FPoly& q,
                 FPoly& r) {
  q = FPoly{};
  r = a;
  FElem lead_inv = fe_inv(poly_lc(b), nf);
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    int shift = r.degree() - db;
    FElem coef = fe_mul(poly_lc(r), lead_inv, nf);
    if (static_cast<int>(q.c.size()) < shift + 1)
      q.c.resize(shift + 1, FElem(Rat(0)));
    q.c[shift] = fe_add(q.c[shift], coef);
    for (int i = 0; i <= db; ++i)
      r.c[shift + i] = fe_sub(r.c[shift + i], fe_mul(coef, b.c[i], nf));
    poly_trim(r);
  }
  poly_trim(q);
}

FPoly poly_div_exact(const FPoly& a, const FPoly& b, const NfCtx& nf) {
  FPoly q, r;
  poly_divmod(a, b, nf, q, r);
  if (!r.is_zero()) throw Error("internal: inexact polynomial division");
  return q;
}

FPoly poly_monic(const FPoly& p, const NfCtx& nf) {
  if (p.is_zero()) return p;
  return poly_scale(p, fe_inv(poly_lc(p), nf), nf);
}

FPoly poly_gcd(FPoly a, FPoly b, const NfCtx& nf) {
  while (!b.is_zero()) {
    FPoly q, r;
    poly_divmod(a, b, nf, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a, nf);
}

FPoly poly_derivative(const FPoly& p, const NfCtx& nf) {
  FPoly r;
  for (size_t i = 1; i < p.c.size(); ++i)
    r.c.push_back(fe_mul(p.c[i], FElem(Rat(static_cast<long>(i))), nf));
  poly_trim(r);
  return r;
}

// ---------------------------------------------------------------------------
// Rational functions: reduced, monic denominator.
// ---------------------------------------------------------------------------

FRatFunc rf_make(FPoly num, FPoly den, const NfCtx& nf) {
  if (den.is_zero()) throw NonInvertibleError("division by zero");
  if (num.is_zero()) return {FPoly{}, poly_one()};
  FPoly g = poly_gcd(num, den, nf);
  if (g.degree() > 0) {
    num = poly_div_exact(num, g, nf);
    den = poly_div_exact(den, g, nf);
  }
  FElem scale = fe_inv(poly_lc(den), nf);
  return {poly_scale(num, scale, nf), poly_scale(den, scale, nf)};
}

FRatFunc rf_zero() { return {FPoly{}, poly_one()}; }
FRatFunc rf_const(FElem v) { return {poly_const(std::move(v)), poly_one()}; }

FRatFunc rf_add(const FRatFunc& x, const FRatFunc& y, const NfCtx& nf) {
  FPoly num = poly_add(poly_mul(x.num, y.den, nf), poly_mul(y.num, x.den, nf));
  return rf_make(std::move(num), poly_mul(x.den, y.den, nf), nf);
}

FRatFunc rf_neg(const FRatFunc& x) { return {poly_neg(x.num), x.den}; }

FRatFunc rf_sub(const FRatFunc& x, const FRatFunc& y, const NfCtx& nf) {
  return rf_add(x, rf_neg(y), nf);
}

FRatFunc rf_mul(const FRatFunc& x, const FRatFunc& y, const NfCtx& nf) {
  return rf_make(poly_mul(x.num, y.num, nf), poly_mul(x.den, y.den, nf), nf);
}

FRatFunc rf_inv(const FRatFunc& x, const NfCtx& nf) {
  if (x.is_zero()) throw NonInvertibleError("division by zero");
  return rf_make(x.den, x.num, nf);
}

}  // namespace

// ---------------------------------------------------------------------------
// ScalarTower
// ---------------------------------------------------------------------------

ScalarTower::ScalarTower(std::optional<NumberFieldSpec> nf, TopExtension top,
                         Rat d)
    : nf_(std::move(nf)), top_(top), top_square_(std::move(d)) {}

const TowerPtr& ScalarTower::rationals() {
  static const TowerPtr instance(
      new ScalarTower(std::nullopt, TopExtension::none, Rat(0)));
  return instance;
}

TowerPtr ScalarTower::make(std::optional<NumberFieldSpec> nf, TopExtension top,
                           Rat top_square) {
  if (nf) {
    Int disc = nf->lin * nf->lin - 4 * nf->cst;
    if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t()))
      throw Error("number-field polynomial x^2+" + nf->lin.get_str() + "x+" +
                  nf->cst.get_str() + " is reducible over Q");
    if (nf->symbol.empty() || nf->symbol == "t" || nf->symbol == "j" ||
        nf->symbol == "sqrt")
      throw Error("reserved number-field symbol");
  }
  if (top == TopExtension::sqrt_const && top_square == 0)
    throw Error("sqrt_const tower requires a nonzero d");
  top_square.canonicalize();
  return TowerPtr(new ScalarTower(std::move(nf), top, std::move(top_square)));
}

const NumberFieldSpec& ScalarTower::number_field() const {
  if (!nf_) throw Error("tower has no number-field layer");
  return *nf_;
}

const Rat& ScalarTower::top_square() const {
  if (top_ != TopExtension::sqrt_const)
    throw Error("tower top layer is not sqrt of a constant");
  return top_square_;
}

bool ScalarTower::same_as(const ScalarTower& o) const {
  if (nf_.has_value() != o.nf_.has_value()) return false;
  if (nf_ && !(*nf_ == *o.nf_)) return false;
  if (top_ != o.top_) return false;
  if (top_ == TopExtension::sqrt_const && top_square_ != o.top_square_)
    return false;
  return true;
}

bool ScalarTower::embeds_in(const ScalarTower& target) const {
  if (nf_ && (!target.nf_ || !(*nf_ == *target.nf_))) return false;
  if (top_ != TopExtension::none) {
    if (top_ != target.top_) return false;
    if (top_ == TopExtension::sqrt_const && top_square_ != target.top_square_)
      return false;
  }
  return true;
}

std::string ScalarTower::describe() const {
  std::string f = nf_ ? "Q(" + nf_->symbol + ")" : "Q";
  std::string s = f + "(t)";
  switch (top_) {
    case TopExtension::none:
      break;
    case TopExtension::sqrt_t:
      s += "(j), j^2 = t";
      break;
    case TopExtension::sqrt_const:
      s += "(sqrt(" + top_square_.get_str() + "))";
      break;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

namespace {

NfCtx ctx_of(const ScalarTower& tw) {
  NfCtx nf;
  if (tw.has_number_field()) {
    nf.lin = Rat(tw.number_field().lin);
    nf.cst = Rat(tw.number_field().cst);
  }
  return nf;
}

// theta^2 as an element of F(t).
FRatFunc top_square_rf(const ScalarTower& tw) {
  switch (tw.top()) {
    case TopExtension::sqrt_t: {
      FPoly t;
      t.c = {FElem(Rat(0)), FElem(Rat(1))};
      return {t, poly_one()};
    }
    case TopExtension::sqrt_const:
      return rf_const(FElem(tw.top_square()));
    case TopExtension::none:
      break;
  }
  throw Error("tower has no top quadratic layer");
}

}  // namespace

namespace {

// mpq_class arithmetic keeps values canonical, but the (num, den) constructor
// does not; normalize every externally supplied rational.
Rat canonical_rat(Rat v) {
  v.canonicalize();
  return v;
}

}  // namespace

Scalar::Scalar() : Scalar(Rat(0)) {}
Scalar::Scalar(long v) : Scalar(Rat(v)) {}
Scalar::Scalar(const Rat& v)
    : base_(rf_const(FElem(canonical_rat(v)))), ext_(rf_zero()),
      tower_(ScalarTower::rationals()) {}

Scalar::Scalar(detail::FRatFunc base, detail::FRatFunc ext, TowerPtr tower)
    : base_(std::move(base)), ext_(std::move(ext)), tower_(std::move(tower)) {}

Scalar Scalar::zero(TowerPtr tower) {
  return Scalar(rf_zero(), rf_zero(), std::move(tower));
}

Scalar Scalar::one(TowerPtr tower) {
  return Scalar(rf_const(FElem(Rat(1))), rf_zero(), std::move(tower));
}

Scalar Scalar::from_rational(Rat v, TowerPtr tower) {
  return Scalar(rf_const(FElem(canonical_rat(std::move(v)))), rf_zero(),
                std::move(tower));
}

Scalar Scalar::t(TowerPtr tower) {
  FPoly t;
  t.c = {FElem(Rat(0)), FElem(Rat(1))};
  return Scalar({t, poly_one()}, rf_zero(), std::move(tower));
}

Scalar Scalar::theta(TowerPtr tower) {
  if (tower->top() == TopExtension::none)
    throw Error("tower has no top quadratic layer");
  return Scalar(rf_zero(), rf_const(FElem(Rat(1))), std::move(tower));
}

Scalar Scalar::nf_generator(TowerPtr tower) {
  tower->number_field();  // validates presence
  return Scalar(rf_const(FElem(Rat(0), Rat(1))), rf_zero(), std::move(tower));
}

bool Scalar::is_one() const {
  return ext_.is_zero() && base_.den.degree() == 0 &&
         base_.num.c.size() == 1 && felem_is_one(base_.num.c[0]);
}

bool Scalar::in_constant_layer() const {
  return ext_.is_zero() && base_.num.degree() <= 0 && base_.den.degree() == 0;
}

bool Scalar::is_rational_constant(Rat* out) const {
  if (!in_constant_layer()) return false;
  if (base_.is_zero()) {
    if (out) *out = 0;
    return true;
  }
  if (!base_.num.c[0].is_rational()) return false;
  if (out) *out = base_.num.c[0].a;
  return true;
}

namespace {

// Resolves a common tower for a binary operation, promoting one side when it
// embeds in the other.
std::pair<const Scalar*, const Scalar*> align(const Scalar& x, const Scalar& y,
                                              Scalar& xs, Scalar& ys) {
  if (x.tower()->same_as(*y.tower())) return {&x, &y};
  if (x.tower()->embeds_in(*y.tower())) {
    xs = x.promoted_to(y.tower());
    return {&xs, &y};
  }
  if (y.tower()->embeds_in(*x.tower())) {
    ys = y.promoted_to(x.tower());
    return {&x, &ys};
  }
  throw TowerMismatchError("scalars from incompatible towers: " +
                           x.tower()->describe() + " vs " +
                           y.tower()->describe());
}

}  // namespace

Scalar Scalar::operator-() const {
  return Scalar(rf_neg(base_), rf_neg(ext_), tower_);
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar xs, ys;
  auto [x, y] = align(*this, o, xs, ys);
  NfCtx nf = ctx_of(*x->tower_);
  return Scalar(rf_add(x->base_, y->base_, nf), rf_add(x->ext_, y->ext_, nf),
                x->tower_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar xs, ys;
  auto [x, y] = align(*this, o, xs, ys);
  NfCtx nf = ctx_of(*x->tower_);
  FRatFunc base = rf_mul(x->base_, y->base_, nf);
  if (!x->ext_.is_zero() && !y->ext_.is_zero()) {
    FRatFunc u = top_square_rf(*x->tower_);
    base = rf_add(base, rf_mul(u, rf_mul(x->ext_, y->ext_, nf), nf), nf);
  }
  FRatFunc ext = rf_add(rf_mul(x->base_, y->ext_, nf),
                        rf_mul(x->ext_, y->base_, nf), nf);
  return Scalar(std::move(base), std::move(ext), x->tower_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  Scalar xs, ys;
  auto [x, y] = align(*this, o, xs, ys);
  return x->base_ == y->base_ && x->ext_ == y->ext_;
}

Scalar Scalar::inverse() const {
  NfCtx nf = ctx_of(*tower_);
  if (ext_.is_zero())
    return Scalar(rf_inv(base_, nf), rf_zero(), tower_);
  // (B + E*theta)^(-1) = (B - E*theta) / (B^2 - u*E^2)
  FRatFunc u = top_square_rf(*tower_);
  FRatFunc norm = rf_sub(rf_mul(base_, base_, nf),
                         rf_mul(u, rf_mul(ext_, ext_, nf), nf), nf);
  if (norm.is_zero())
    throw NonInvertibleError(
        "element is a zero divisor of the degenerate quadratic layer");
  FRatFunc ninv = rf_inv(norm, nf);
  return Scalar(rf_mul(base_, ninv, nf), rf_neg(rf_mul(ext_, ninv, nf)),
                tower_);
}

Scalar Scalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar acc = Scalar::one(tower_);
  Scalar b = *this;
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

Scalar Scalar::conjugated() const {
  return Scalar(base_, rf_neg(ext_), tower_);
}

Scalar Scalar::promoted_to(TowerPtr target) const {
  if (tower_->same_as(*target)) return Scalar(base_, ext_, std::move(target));
  if (!tower_->embeds_in(*target))
    throw TowerMismatchError("cannot promote " + tower_->describe() + " into " +
                             target->describe());
  return Scalar(base_, ext_, std::move(target));
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string rat_str(const Rat& r) { return r.get_str(); }

bool felem_is(const FElem& v, long a, long b) {
  return v.a == a && v.b == b;
}

// One polynomial term "coeff * t^k"; returns a string that may begin with '-'.
std::string term_str(const FElem& c, int k, const std::string& wsym) {
  std::string tpart;
  if (k == 1) tpart = "t";
  else if (k > 1) tpart = "t^" + std::to_string(k);

  std::string cpart;
  bool unit = false;  // coefficient is +-1 (rational one), foldable into tpart
  bool negunit = false;
  if (c.is_rational()) {
    if (c.a == 1) unit = true;
    else if (c.a == -1) negunit = true;
    else cpart = rat_str(c.a);
  } else if (c.a == 0) {
    if (c.b == 1) cpart = wsym;
    else if (c.b == -1) cpart = "-" + wsym;
    else cpart = rat_str(c.b) + "*" + wsym;
  } else {
    std::string inner = rat_str(c.a);
    if (c.b == 1) inner += "+" + wsym;
    else if (c.b == -1) inner += "-" + wsym;
    else if (c.b > 0) inner += "+" + rat_str(c.b) + "*" + wsym;
    else inner += rat_str(c.b) + "*" + wsym;
    cpart = "(" + inner + ")";
  }

  if (tpart.empty()) {
    if (unit) return "1";
    if (negunit) return "-1";
    return cpart;
  }
  if (unit) return tpart;
  if (negunit) return "-" + tpart;
  return cpart + "*" + tpart;
}

std::string poly_str(const FPoly& p, const std::string& wsym) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const FElem& c = p.c[k];
    if (c.is_zero()) continue;
    std::string term = term_str(c, k, wsym);
    if (out.empty()) out = term;
    else if (term[0] == '-') out += term;
    else out += "+" + term;
  }
  return out;
}

// True when s contains a top-level '+' or '-' after the first character.
bool has_toplevel_sum(const std::string& s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    else if (ch == ')') --depth;
    else if (depth == 0 && i > 0 && (ch == '+' || ch == '-')) return true;
  }
  return false;
}

bool poly_is_monomial(const FPoly& p) {
  if (p.is_zero()) return false;
  for (int k = 0; k < p.degree(); ++k)
    if (!p.c[k].is_zero()) return false;
  return true;
}

std::string theta_symbol(const ScalarTower& tw) {
  if (tw.top() == TopExtension::sqrt_t) return "j";
  return "sqrt(" + tw.top_square().get_str() + ")";
}

}  // namespace

std::string Scalar::str() const {
  NfCtx nf = ctx_of(*tower_);
  std::string wsym =
      tower_->has_number_field() ? tower_->number_field().symbol : "w";

  // Common monic denominator D; numerator P + Q*theta.
  FPoly g = poly_gcd(base_.den, ext_.den, nf);
  FPoly d_over_g = poly_div_exact(ext_.den, g, nf);
  FPoly den = poly_mul(base_.den, d_over_g, nf);
  FPoly p_num = poly_mul(base_.num, d_over_g, nf);
  FPoly q_num = poly_mul(ext_.num, poly_div_exact(base_.den, g, nf), nf);

  if (p_num.is_zero() && q_num.is_zero()) return "0";

  std::string numerator;
  if (!p_num.is_zero()) numerator = poly_str(p_num, wsym);
  if (!q_num.is_zero()) {
    std::string th = theta_symbol(*tower_);
    std::string qs;
    if (q_num.c.size() == 1 && felem_is(q_num.c[0], 1, 0)) qs = th;
    else if (q_num.c.size() == 1 && felem_is(q_num.c[0], -1, 0)) qs = "-" + th;
    else if (poly_is_monomial(q_num) &&
             (poly_lc(q_num).is_rational() || poly_lc(q_num).a == 0))
      qs = term_str(poly_lc(q_num), q_num.degree(), wsym) + "*" + th;
    else
      qs = "(" + poly_str(q_num, wsym) + ")*" + th;
    if (numerator.empty()) numerator = qs;
    else if (qs[0] == '-') numerator += qs;
    else numerator += "+" + qs;
  }

  if (den.degree() == 0) return numerator;

  std::string ds;
  if (poly_is_monomial(den))
    ds = den.degree() == 1 ? "t" : "t^" + std::to_string(den.degree());
  else
    ds = "(" + poly_str(den, wsym) + ")";
  if (has_toplevel_sum(numerator)) numerator = "(" + numerator + ")";
  return numerator + "/" + ds;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  // Token kinds: end, number, ident, op (single char).
  struct Token {
    enum Kind { end, number, ident, op } kind = end;
    std::string text;
  };

  const Token& peek() {
    if (!cached_) {
      cur_ = lex();
      cached_ = true;
    }
    return cur_;
  }

  Token next() {
    Token t = peek();
    cached_ = false;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("scalar literal: " + msg + " near position " +
                     std::to_string(pos_) + " in \"" + s_ + "\"");
  }

 private:
  Token lex() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ >= s_.size()) return {};
    char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return {Token::number, s_.substr(start, pos_ - start)};
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             std::isalnum(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return {Token::ident, s_.substr(start, pos_ - start)};
    }
    if (std::string("+-*/^()").find(ch) != std::string::npos) {
      ++pos_;
      return {Token::op, std::string(1, ch)};
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
  Token cur_;
  bool cached_ = false;
};

class ScalarExprParser {
 public:
  ScalarExprParser(const std::string& text, TowerPtr tower)
      : lex_(text), tower_(std::move(tower)) {}

  Scalar parse() {
    Scalar v = expr();
    if (lex_.peek().kind != Lexer::Token::end)
      lex_.fail("trailing input '" + lex_.peek().text + "'");
    return v;
  }

 private:
  bool is_op(const Lexer::Token& t, char c) {
    return t.kind == Lexer::Token::op && t.text[0] == c;
  }

  Scalar expr() {
    Scalar v = term();
    while (is_op(lex_.peek(), '+') || is_op(lex_.peek(), '-')) {
      char op = lex_.next().text[0];
      Scalar rhs = term();
      v = (op == '+') ? v + rhs : v - rhs;
    }
    return v;
  }

  Scalar term() {
    Scalar v = unary();
    while (is_op(lex_.peek(), '*') || is_op(lex_.peek(), '/')) {
      char op = lex_.next().text[0];
      Scalar rhs = unary();
      v = (op == '*') ? v * rhs : v / rhs;
    }
    return v;
  }

  Scalar unary() {
    if (is_op(lex_.peek(), '-')) {
      lex_.next();
      return -unary();
    }
    if (is_op(lex_.peek(), '+')) {
      lex_.next();
      return unary();
    }
    return power();
  }

  Scalar power() {
    Scalar base = atom();
    if (is_op(lex_.peek(), '^')) {
      lex_.next();
      Lexer::Token e = lex_.next();
      if (e.kind != Lexer::Token::number) lex_.fail("expected exponent");
      long k = std::stol(e.text);
      return base.pow(k);
    }
    return base;
  }

  Scalar atom() {
    Lexer::Token tok = lex_.next();
    if (tok.kind == Lexer::Token::number)
      return Scalar::from_rational(Rat(Int(tok.text)), tower_);
    if (is_op(tok, '(')) {
      Scalar v = expr();
      if (!is_op(lex_.next(), ')')) lex_.fail("expected ')'");
      return v;
    }
    if (tok.kind == Lexer::Token::ident) {
      if (tok.text == "t") return Scalar::t(tower_);
      if (tok.text == "j") {
        if (tower_->top() != TopExtension::sqrt_t)
          lex_.fail("'j' is only defined over a sqrt(t) tower");
        return Scalar::theta(tower_);
      }
      if (tok.text == "sqrt") {
        if (tower_->top() != TopExtension::sqrt_const)
          lex_.fail("'sqrt' is only defined over a sqrt(d) tower");
        if (is_op(lex_.peek(), '(')) {
          lex_.next();
          Scalar inner = expr();
          if (!is_op(lex_.next(), ')')) lex_.fail("expected ')'");
          Rat v;
          if (!inner.is_rational_constant(&v) || v != tower_->top_square())
            lex_.fail("sqrt argument must equal the tower constant d = " +
                      tower_->top_square().get_str());
        }
        return Scalar::theta(tower_);
      }
      if (tower_->has_number_field() &&
          tok.text == tower_->number_field().symbol)
        return Scalar::nf_generator(tower_);
      lex_.fail("unknown symbol '" + tok.text + "'");
    }
    lex_.fail("unexpected token");
  }

  Lexer lex_;
  TowerPtr tower_;
};

}  // namespace

Scalar Scalar::parse(const std::string& text, TowerPtr tower) {
  return ScalarExprParser(text, std::move(tower)).parse();
}

// ---------------------------------------------------------------------------
// Square classes
// ---------------------------------------------------------------------------

namespace {

// Brent's cycle-finding variant of Pollard rho; n odd composite > 1.
Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0xC0FFEEUL);
  while (true) {
    Int y = rng.get_z_range(n - 3) + 2;
    Int c = rng.get_z_range(n - 2) + 1;
    Int x = y, d = 1, q = 1, ys = y;
    unsigned long r = 1, m = 128;
    while (d == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && d == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          Int diff = x > y ? x - y : y - x;
          q = q * diff % n;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
      }
      r *= 2;
    }
    if (d == n) {
      d = 1;
      while (d == 1) {
        ys = (ys * ys + c) % n;
        Int diff = x > ys ? x - ys : ys - x;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (d != n) return d;
  }
}

void factor_into(Int n, std::vector<std::pair<Int, int>>& out) {
  if (n == 1) return;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(Int(p), e);
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    out.emplace_back(n, 1);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Int root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    std::vector<std::pair<Int, int>> sub;
    factor_into(root, sub);
    for (auto& [p, e] : sub) out.emplace_back(p, 2 * e);
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Int squarefree_kernel(const Int& n) {
  if (n == 0) throw Error("squarefree_kernel of zero");
  std::vector<std::pair<Int, int>> factors;
  factor_into(abs(n), factors);
  Int kernel = n < 0 ? -1 : 1;
  // Merge duplicate primes from recursive splits before parity check.
  std::sort(factors.begin(), factors.end());
  for (size_t i = 0; i < factors.size();) {
    size_t j = i;
    int e = 0;
    while (j < factors.size() && factors[j].first == factors[i].first)
      e += factors[j++].second;
    if (e % 2) kernel *= factors[i].first;
    i = j;
  }
  return kernel;
}

namespace {

Rat rational_squarefree_class(const Rat& v) {
  // p/q ~ p*q modulo squares.
  return Rat(squarefree_kernel(v.get_num() * v.get_den()));
}

// Yun's square-free decomposition of a monic polynomial; returns the product
// of the odd-multiplicity parts (monic).
FPoly yun_odd_part(FPoly f, const NfCtx& nf) {
  FPoly odd = poly_one();
  if (f.degree() <= 0) return odd;
  FPoly fp = poly_derivative(f, nf);
  FPoly g = poly_gcd(f, fp, nf);
  FPoly c = poly_div_exact(f, g, nf);
  FPoly d = poly_sub(poly_div_exact(fp, g, nf), poly_derivative(c, nf));
  int i = 1;
  while (c.degree() > 0) {
    FPoly a = poly_gcd(c, d, nf);
    if (i % 2 == 1 && a.degree() > 0) odd = poly_mul(odd, a, nf);
    c = poly_div_exact(c, a, nf);
    d = poly_sub(poly_div_exact(d, a, nf), poly_derivative(c, nf));
    ++i;
  }
  return odd;
}

}  // namespace

Scalar kummer_class(const Scalar& x, KummerLayer layer) {
  if (x.is_zero()) throw Error("kummer_class of zero");
  const TowerPtr& tw = x.tower();
  NfCtx nf = ctx_of(*tw);

  if (layer == KummerLayer::rationals) {
    Rat v;
    if (!x.is_rational_constant(&v))
      throw Error("kummer_class: value does not lie in Q");
    return Scalar::from_rational(rational_squarefree_class(v), tw);
  }

  if (!x.in_base_layer())
    throw Error("kummer_class: value does not lie in F(t)");
  const FRatFunc& rf = x.base_part();
  FPoly f = poly_mul(rf.num, rf.den, nf);
  FElem lead = poly_lc(f);
  FPoly monic = poly_monic(f, nf);
  FPoly odd = yun_odd_part(monic, nf);
  // Constant square class: resolved over Q; coarsened to 1 over a number
  // field (no integer factorization in Q(w) here).
  Scalar cls = lead.is_rational()
                   ? Scalar::from_rational(rational_squarefree_class(lead.a), tw)
                   : Scalar::one(tw);
  Scalar result = Scalar::zero(tw);
  Scalar tpow = Scalar::one(tw);
  Scalar tvar = Scalar::t(tw);
  for (size_t k = 0; k < odd.c.size(); ++k) {
    if (!odd.c[k].is_zero()) {
      Scalar c = Scalar::from_rational(odd.c[k].a, tw);
      if (odd.c[k].b != 0)
        c += Scalar::from_rational(odd.c[k].b, tw) * Scalar::nf_generator(tw);
      result += c * tpow;
    }
    tpow *= tvar;
  }
  return cls * result;
}

}  // namespace cybel
