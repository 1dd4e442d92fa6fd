#include "doctest.h"

#include <random>

#include "cybel/scalar.hpp"

using namespace cybel;

namespace {

TowerPtr qi_sqrt_t_tower() {
  return ScalarTower::make(NumberFieldSpec{Int(0), Int(1), "i"},
                           TopExtension::sqrt_t);
}

TowerPtr q_sqrt_t_tower() {
  return ScalarTower::make(std::nullopt, TopExtension::sqrt_t);
}

TowerPtr q_sqrt_d_tower(long d) {
  return ScalarTower::make(std::nullopt, TopExtension::sqrt_const, Rat(d));
}

// Random element exercising every layer of the given tower.
Scalar random_scalar(std::mt19937& rng, const TowerPtr& tw) {
  std::uniform_int_distribution<int> small(-6, 6);
  std::uniform_int_distribution<int> pos(1, 4);
  std::uniform_int_distribution<int> deg(0, 2);
  auto random_ratfunc_part = [&](bool allow_theta) {
    Scalar acc = Scalar::zero(tw);
    Scalar t = Scalar::t(tw);
    for (int k = deg(rng); k >= 0; --k) {
      Scalar coeff = Scalar::from_rational(Rat(small(rng), pos(rng)), tw);
      if (tw->has_number_field() && small(rng) > 2)
        coeff += Scalar::from_rational(Rat(small(rng)), tw) *
                 Scalar::nf_generator(tw);
      acc = acc * t + coeff;
    }
    if (allow_theta && tw->top() != TopExtension::none && small(rng) > 0)
      acc = acc * Scalar::theta(tw);
    return acc;
  };
  Scalar num = random_ratfunc_part(true) + random_ratfunc_part(true);
  Scalar den = Scalar::zero(tw);
  while (den.is_zero()) den = random_ratfunc_part(false);
  return num / den;
}

}  // namespace

TEST_CASE("conjugation fixes the base layer and negates theta") {
  auto tw = q_sqrt_t_tower();
  Scalar j = Scalar::theta(tw);
  CHECK(j.conjugated() == -j);

  Scalar three = Scalar::from_rational(Rat(3), tw);
  CHECK(three.conjugated() == three);
  CHECK(three.in_base_layer());

  // (1+j)(1-j) is Galois-stable and equals 1 - t.
  Scalar one = Scalar::one(tw);
  Scalar prod = (one + j) * (one - j);
  CHECK(prod.conjugated() == prod);
  CHECK(prod == one - Scalar::t(tw));
  CHECK(prod.in_base_layer());
}

TEST_CASE("conjugation is a field automorphism of order 2") {
  std::mt19937 rng(20240817);
  for (const auto& tw : {q_sqrt_t_tower(), qi_sqrt_t_tower(),
                         q_sqrt_d_tower(2)}) {
    for (int it = 0; it < 40; ++it) {
      Scalar x = random_scalar(rng, tw);
      Scalar y = random_scalar(rng, tw);
      CHECK((x * y).conjugated() == x.conjugated() * y.conjugated());
      CHECK((x + y).conjugated() == x.conjugated() + y.conjugated());
      CHECK(x.conjugated().conjugated() == x);
      // Fixed points are exactly the sub-layer elements.
      CHECK((x.conjugated() == x) == x.in_base_layer());
    }
  }
}

TEST_CASE("field axioms hold on random elements") {
  std::mt19937 rng(7);
  auto tw = qi_sqrt_t_tower();
  for (int it = 0; it < 30; ++it) {
    Scalar x = random_scalar(rng, tw);
    Scalar y = random_scalar(rng, tw);
    Scalar z = random_scalar(rng, tw);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y * z) == (x * y) * z);
    if (!x.is_zero()) {
      CHECK(x * x.inverse() == Scalar::one(tw));
      CHECK(x.inverse().inverse() == x);
    }
  }
}

TEST_CASE("theta squared reduces to the designated element") {
  auto tw = q_sqrt_t_tower();
  CHECK(Scalar::theta(tw) * Scalar::theta(tw) == Scalar::t(tw));

  auto td = q_sqrt_d_tower(2);
  CHECK(Scalar::theta(td) * Scalar::theta(td) ==
        Scalar::from_rational(Rat(2), td));

  auto ti = qi_sqrt_t_tower();
  Scalar i = Scalar::nf_generator(ti);
  CHECK(i * i == -Scalar::one(ti));
}

TEST_CASE("degenerate quadratic layer rejects zero-divisor inversion") {
  auto tw = q_sqrt_d_tower(9);  // theta^2 = 9, so (theta-3)(theta+3) = 0
  Scalar z = Scalar::theta(tw) - Scalar::from_rational(Rat(3), tw);
  CHECK(!z.is_zero());
  CHECK_THROWS_AS(z.inverse(), NonInvertibleError);
  // Units still invert.
  Scalar th = Scalar::theta(tw);
  CHECK(th * th.inverse() == Scalar::one(tw));
}

TEST_CASE("kummer classes over Q") {
  auto tw = ScalarTower::rationals();
  CHECK(kummer_class(Scalar(Rat(8)), KummerLayer::rationals) ==
        Scalar(Rat(2)));
  CHECK(kummer_class(Scalar(Rat(9)), KummerLayer::rationals) ==
        Scalar(Rat(1)));
  CHECK(kummer_class(Scalar(Rat(-4)), KummerLayer::rationals) ==
        Scalar(Rat(-1)));
  CHECK(kummer_class(Scalar(Rat(3, 4)), KummerLayer::rationals) ==
        Scalar(Rat(3)));
  CHECK_THROWS_AS(kummer_class(Scalar(), KummerLayer::rationals), Error);
  (void)tw;
}

TEST_CASE("kummer classes over Q(t)") {
  auto tw = ScalarTower::rationals();
  Scalar t = Scalar::t(tw);
  CHECK(kummer_class(t * t * t, KummerLayer::function_field) == t);
  CHECK(kummer_class(t * t, KummerLayer::function_field) == Scalar(Rat(1)));
  // 2t^3/(t+1): class 2t(t+1).
  Scalar one = Scalar::one(tw);
  Scalar x = Scalar(Rat(2)) * t.pow(3) / (t + one);
  CHECK(kummer_class(x, KummerLayer::function_field) ==
        Scalar(Rat(2)) * t * (t + one));
}

TEST_CASE("kummer class is invariant under multiplication by squares") {
  std::mt19937 rng(99);
  auto tw = ScalarTower::rationals();
  for (int it = 0; it < 25; ++it) {
    Scalar x = Scalar::zero(tw), s = Scalar::zero(tw);
    while (x.is_zero()) x = random_scalar(rng, tw);
    while (s.is_zero()) s = random_scalar(rng, tw);
    CHECK(kummer_class(x * s * s, KummerLayer::function_field) ==
          kummer_class(x, KummerLayer::function_field));
  }
}

TEST_CASE("squarefree kernel handles composite inputs") {
  CHECK(squarefree_kernel(Int(1)) == 1);
  CHECK(squarefree_kernel(Int(8)) == 2);
  CHECK(squarefree_kernel(Int(360)) == 10);  // 2^3*3^2*5
  CHECK(squarefree_kernel(Int(-360)) == -10);
  CHECK(squarefree_kernel(Int("1000003000002000001")) != 0);  // no crash
}

TEST_CASE("canonical literals parse and print byte-exactly") {
  auto tw = q_sqrt_t_tower();
  for (const char* text : {"3/4", "t^2+1", "j", "(1+2*j)/t", "0", "-j",
                           "-3/4", "t", "2*j", "(t^2+1)*j", "1/(t+1)",
                           "t^3+2*t-5"}) {
    Scalar v = Scalar::parse(text, tw);
    CHECK(v.str() == text);
  }
  auto ti = qi_sqrt_t_tower();
  for (const char* text : {"i", "-i", "2*i", "(1+i)*t", "i*t^2", "(i*t+1)*j"}) {
    Scalar v = Scalar::parse(text, ti);
    CHECK(v.str() == text);
  }
  auto td = q_sqrt_d_tower(2);
  for (const char* text : {"sqrt(2)", "1+sqrt(2)", "-sqrt(2)/t"}) {
    Scalar v = Scalar::parse(text, td);
    CHECK(v.str() == text);
  }
}

TEST_CASE("print then parse is the identity on values") {
  std::mt19937 rng(31337);
  for (const auto& tw : {q_sqrt_t_tower(), qi_sqrt_t_tower(),
                         q_sqrt_d_tower(5)}) {
    for (int it = 0; it < 60; ++it) {
      Scalar x = random_scalar(rng, tw);
      Scalar back = Scalar::parse(x.str(), tw);
      CHECK(back == x);
      CHECK(back.str() == x.str());  // printing is a fixpoint
    }
  }
}

TEST_CASE("parser accepts the sqrt(d) literal with validation") {
  auto td = q_sqrt_d_tower(2);
  CHECK(Scalar::parse("sqrt", td) == Scalar::theta(td));
  CHECK(Scalar::parse("sqrt(2)", td) == Scalar::theta(td));
  CHECK_THROWS_AS(Scalar::parse("sqrt(3)", td), ParseError);
  CHECK_THROWS_AS(Scalar::parse("j", td), ParseError);
}

TEST_CASE("towers embed upward and reject incompatible mixing") {
  auto q = ScalarTower::rationals();
  auto tj = q_sqrt_t_tower();
  auto ti = qi_sqrt_t_tower();
  Scalar three(Rat(3));
  // Rational constants flow into any tower.
  CHECK(three.promoted_to(tj) == Scalar::from_rational(Rat(3), tj));
  CHECK((three + Scalar::theta(tj)) == (Scalar::theta(tj) + three));
  // sqrt(t) and sqrt(2) towers are incompatible.
  auto td = q_sqrt_d_tower(2);
  CHECK_THROWS_AS(Scalar::theta(tj) + Scalar::theta(td), TowerMismatchError);
  CHECK_THROWS_AS(Scalar::theta(tj).promoted_to(td), TowerMismatchError);
  // Q(t)(j) embeds into Q(i)(t)(j).
  Scalar promoted = Scalar::theta(tj).promoted_to(ti);
  CHECK(promoted == Scalar::theta(ti));
  (void)q;
}

TEST_CASE("reducible number-field polynomials are rejected") {
  CHECK_THROWS_AS(ScalarTower::make(NumberFieldSpec{Int(0), Int(-4), "w"},
                                    TopExtension::none),
                  Error);
  CHECK_NOTHROW(ScalarTower::make(NumberFieldSpec{Int(0), Int(-5), "w"},
                                  TopExtension::none));
}
