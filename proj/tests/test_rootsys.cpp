#include "doctest.h"

#include <set>

#include "cybel/rootsys.hpp"

using namespace cybel;

namespace {

long classical_positive_count(LieType t, int n) {
  switch (t) {
    case LieType::A: return static_cast<long>(n) * (n + 1) / 2;
    case LieType::B:
    case LieType::C: return static_cast<long>(n) * n;
    case LieType::D: return static_cast<long>(n) * (n - 1);
    case LieType::E: return n == 6 ? 36 : (n == 7 ? 63 : 120);
    case LieType::F: return 24;
    case LieType::G: return 6;
  }
  return -1;
}

// Full Weyl group closure by BFS over generator matrices (rank <= 4 only).
std::set<std::vector<std::vector<int>>> enumerate_weyl(const RootSystem& rs) {
  int n = rs.rank();
  std::vector<std::vector<std::vector<int>>> gens;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> s(n, std::vector<int>(n, 0));
    for (int j = 0; j < n; ++j) {
      RootVec img = rs.reflect(i, rs.simple_root(j));
      for (int r = 0; r < n; ++r) s[r][j] = img[r];
    }
    gens.push_back(std::move(s));
  }
  auto mul = [n](const auto& a, const auto& b) {
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  std::vector<std::vector<int>> id(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  std::set<std::vector<std::vector<int>>> seen{id};
  std::vector<std::vector<std::vector<int>>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<std::vector<int>>> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        auto wg = mul(g, w);
        if (seen.insert(wg).second) next.push_back(wg);
      }
    frontier = std::move(next);
  }
  return seen;
}

bool negates_all_positive(const RootSystem& rs,
                          const std::vector<std::vector<int>>& w) {
  WeylElement e{w, {}};
  for (const auto& alpha : rs.positive_roots()) {
    RootVec img = e.apply(alpha);
    for (int& c : img) c = -c;
    if (!rs.is_positive_root(img)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("positive root counts match the classical formulas") {
  struct Case { LieType t; int n; };
  for (auto [t, n] : {Case{LieType::A, 1}, {LieType::A, 2}, {LieType::A, 3},
                      {LieType::A, 4}, {LieType::B, 2}, {LieType::B, 3},
                      {LieType::C, 2}, {LieType::C, 3}, {LieType::D, 3},
                      {LieType::D, 4}, {LieType::G, 2}, {LieType::F, 4},
                      {LieType::E, 6}}) {
    RootSystem rs = RootSystem::build(t, n);
    CHECK_MESSAGE(rs.num_positive() == classical_positive_count(t, n),
                  rs.label());
  }
}

TEST_CASE("invalid type/rank pairs are rejected") {
  CHECK_THROWS_AS(RootSystem::build(LieType::B, 1), Error);
  CHECK_THROWS_AS(RootSystem::build(LieType::D, 2), Error);
  CHECK_THROWS_AS(RootSystem::build(LieType::E, 5), Error);
  CHECK_THROWS_AS(RootSystem::build(LieType::G, 3), Error);
  CHECK_THROWS_AS(RootSystem::build(LieType::A, 0), Error);
}

TEST_CASE("A2 positive roots") {
  RootSystem rs = RootSystem::build(LieType::A, 2);
  REQUIRE(rs.num_positive() == 3);
  CHECK(rs.is_positive_root({1, 0}));
  CHECK(rs.is_positive_root({0, 1}));
  CHECK(rs.is_positive_root({1, 1}));
}

TEST_CASE("G2 positive roots and highest root") {
  RootSystem rs = RootSystem::build(LieType::G, 2);
  REQUIRE(rs.num_positive() == 6);
  CHECK(rs.is_positive_root({3, 2}));  // highest root 3a1+2a2
  CHECK(rs.positive_root(rs.num_positive() - 1) == RootVec{3, 2});
  // alpha_1 short
  CHECK(rs.length_sq({1, 0}) < rs.length_sq({0, 1}));
  CHECK(rs.length_sq({0, 1}) == 2);
}

TEST_CASE("Cartan matrix axioms and form consistency") {
  for (auto [t, n] : {std::pair{LieType::A, 3}, {LieType::B, 3},
                      {LieType::C, 3}, {LieType::D, 4}, {LieType::G, 2},
                      {LieType::F, 4}}) {
    RootSystem rs = RootSystem::build(t, n);
    const auto& a = rs.cartan();
    for (int i = 0; i < n; ++i) {
      CHECK(a[i][i] == 2);
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        CHECK(a[i][j] <= 0);
        CHECK((a[i][j] == 0) == (a[j][i] == 0));
        // (alpha_i, alpha_j) = d_j * A_ij, and the form is symmetric.
        CHECK(rs.form(rs.simple_root(i), rs.simple_root(j)) ==
              rs.symmetrizer(j) * a[i][j]);
        CHECK(rs.form(rs.simple_root(i), rs.simple_root(j)) ==
              rs.form(rs.simple_root(j), rs.simple_root(i)));
      }
    }
    // Long roots have squared length 2.
    Rat longest = 0;
    for (const auto& r : rs.positive_roots())
      longest = std::max(longest, rs.length_sq(r));
    CHECK(longest == 2);
  }
}

TEST_CASE("roots split into positive and negative halves") {
  RootSystem rs = RootSystem::build(LieType::B, 3);
  for (const auto& r : rs.positive_roots()) {
    RootVec neg = r;
    for (int& c : neg) c = -c;
    CHECK(rs.is_root(neg));
    CHECK(!rs.is_positive_root(neg));
    bool nonneg = true;
    for (int c : r) nonneg = nonneg && c >= 0;
    CHECK(nonneg);
  }
}

TEST_CASE("longest element vs. brute-force enumeration") {
  for (auto [t, n] : {std::pair{LieType::A, 1}, {LieType::A, 2},
                      {LieType::A, 3}, {LieType::B, 2}, {LieType::C, 3},
                      {LieType::D, 4}, {LieType::G, 2}}) {
    RootSystem rs = RootSystem::build(t, n);
    auto group = enumerate_weyl(rs);
    std::vector<std::vector<std::vector<int>>> negating;
    for (const auto& w : group)
      if (negates_all_positive(rs, w)) negating.push_back(w);
    REQUIRE_MESSAGE(negating.size() == 1, rs.label());
    CHECK_MESSAGE(rs.longest_weyl().matrix == negating[0], rs.label());
    // Reduced word length equals the number of positive roots.
    CHECK(static_cast<int>(rs.longest_weyl().word.size()) ==
          rs.num_positive());
  }
}

TEST_CASE("longest element properties") {
  for (auto [t, n] : {std::pair{LieType::A, 3}, {LieType::B, 3},
                      {LieType::D, 4}, {LieType::G, 2}, {LieType::F, 4}}) {
    RootSystem rs = RootSystem::build(t, n);
    const WeylElement& w0 = rs.longest_weyl();
    // Involution on the root lattice.
    for (int j = 0; j < n; ++j) {
      RootVec e = rs.simple_root(j);
      CHECK(w0.apply(w0.apply(e)) == e);
    }
    // Form preservation and root permutation.
    for (const auto& a : rs.positive_roots()) {
      CHECK(rs.is_root(w0.apply(a)));
      for (const auto& b : rs.positive_roots())
        CHECK(rs.form(w0.apply(a), w0.apply(b)) == rs.form(a, b));
    }
    // -w0 is a diagram automorphism: Cartan entries are preserved.
    const auto& pi = rs.diagram_involution();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(rs.cartan()[pi[i]][pi[j]] == rs.cartan()[i][j]);
  }
}

TEST_CASE("expected -w0 permutations") {
  CHECK(RootSystem::build(LieType::A, 1).diagram_involution() ==
        std::vector<int>{0});
  CHECK(RootSystem::build(LieType::A, 2).diagram_involution() ==
        std::vector<int>{1, 0});
  CHECK(RootSystem::build(LieType::A, 3).diagram_involution() ==
        std::vector<int>{2, 1, 0});
  CHECK(RootSystem::build(LieType::D, 4).diagram_involution() ==
        std::vector<int>{0, 1, 2, 3});  // w0 = -1
  CHECK(RootSystem::build(LieType::B, 2).diagram_involution() ==
        std::vector<int>{0, 1});
  CHECK(RootSystem::build(LieType::G, 2).diagram_involution() ==
        std::vector<int>{0, 1});
  // A2: w0(alpha_1) = -alpha_2.
  RootSystem a2 = RootSystem::build(LieType::A, 2);
  CHECK(a2.longest_weyl().apply({1, 0}) == RootVec{0, -1});
}

TEST_CASE("isometry checks between simple-root subsets") {
  RootSystem a2 = RootSystem::build(LieType::A, 2);
  CHECK(a2.is_isometry({0}, {1}, {{0, 1}}));
  CHECK(a2.is_isometry({}, {}, {}));

  RootSystem b2 = RootSystem::build(LieType::B, 2);
  CHECK(!b2.is_isometry({0}, {1}, {{0, 1}}));  // long vs short

  CHECK_THROWS_AS(a2.is_isometry({0, 1}, {0, 1}, {{0, 0}, {1, 0}}), Error);
  CHECK_THROWS_AS(a2.is_isometry({0}, {1}, {{0, 0}}), Error);
}
