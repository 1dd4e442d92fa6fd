#include "cybel/rootsys.hpp"

#include <algorithm>

namespace cybel {

LieType lie_type_from_string(const std::string& s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'A': case 'a': return LieType::A;
      case 'B': case 'b': return LieType::B;
      case 'C': case 'c': return LieType::C;
      case 'D': case 'd': return LieType::D;
      case 'E': case 'e': return LieType::E;
      case 'F': case 'f': return LieType::F;
      case 'G': case 'g': return LieType::G;
    }
  }
  throw ParseError("unknown Lie type '" + s + "' (expected one of A..G)");
}

char lie_type_char(LieType t) {
  switch (t) {
    case LieType::A: return 'A';
    case LieType::B: return 'B';
    case LieType::C: return 'C';
    case LieType::D: return 'D';
    case LieType::E: return 'E';
    case LieType::F: return 'F';
    case LieType::G: return 'G';
  }
  return '?';
}

namespace {

bool valid_pair(LieType t, int n) {
  switch (t) {
    case LieType::A: return n >= 1;
    case LieType::B: return n >= 2;
    case LieType::C: return n >= 2;
    case LieType::D: return n >= 3;
    case LieType::E: return n >= 6 && n <= 8;
    case LieType::F: return n == 4;
    case LieType::G: return n == 2;
  }
  return false;
}

// Gram matrix of the simple roots, long roots normalized to length^2 = 2.
RatMat gram_matrix(LieType t, int n) {
  RatMat g(n, n);
  auto edge = [&](int i, int j, Rat v) {
    g.at(i, j) = v;
    g.at(j, i) = v;
  };
  switch (t) {
    case LieType::A:
      for (int i = 0; i < n; ++i) g.at(i, i) = 2;
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, Rat(-1));
      break;
    case LieType::B:  // alpha_n short
      for (int i = 0; i < n; ++i) g.at(i, i) = i == n - 1 ? Rat(1) : Rat(2);
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, Rat(-1));
      break;
    case LieType::C:  // alpha_n long
      for (int i = 0; i < n; ++i) g.at(i, i) = i == n - 1 ? Rat(2) : Rat(1);
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, Rat(-1, 2));
      edge(n - 2, n - 1, Rat(-1));
      break;
    case LieType::D:
      for (int i = 0; i < n; ++i) g.at(i, i) = 2;
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, Rat(-1));
      edge(n - 3, n - 1, Rat(-1));
      break;
    case LieType::E:
      for (int i = 0; i < n; ++i) g.at(i, i) = 2;
      // Bourbaki numbering: chain 1-3-4-5-6(-7)(-8), node 2 attached to 4.
      edge(0, 2, Rat(-1));
      edge(2, 3, Rat(-1));
      edge(3, 4, Rat(-1));
      edge(4, 5, Rat(-1));
      edge(1, 3, Rat(-1));
      if (n >= 7) edge(5, 6, Rat(-1));
      if (n >= 8) edge(6, 7, Rat(-1));
      break;
    case LieType::F:  // alpha_1, alpha_2 long; alpha_3, alpha_4 short
      g.at(0, 0) = 2;
      g.at(1, 1) = 2;
      g.at(2, 2) = 1;
      g.at(3, 3) = 1;
      edge(0, 1, Rat(-1));
      edge(1, 2, Rat(-1));
      edge(2, 3, Rat(-1, 2));
      break;
    case LieType::G:  // alpha_1 short
      g.at(0, 0) = Rat(2, 3);
      g.at(1, 1) = 2;
      edge(0, 1, Rat(-1));
      break;
  }
  return g;
}

int rat_to_int(const Rat& v, const char* what) {
  if (v.get_den() != 1)
    throw Error(std::string("internal: non-integer ") + what);
  return static_cast<int>(v.get_num().get_si());
}

}  // namespace

std::string RootSystem::label() const {
  return std::string(1, lie_type_char(type_)) + std::to_string(rank_);
}

std::optional<int> RootSystem::positive_index(const RootVec& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool RootSystem::is_positive_root(const RootVec& v) const {
  return index_.count(v) > 0;
}

bool RootSystem::is_root(const RootVec& v) const {
  if (is_positive_root(v)) return true;
  RootVec neg(v.size());
  for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
  return is_positive_root(neg);
}

RootVec RootSystem::simple_root(int i) const {
  RootVec v(rank_, 0);
  v[i] = 1;
  return v;
}

int RootSystem::height(const RootVec& v) const {
  int h = 0;
  for (int c : v) h += c;
  return h;
}

Rat RootSystem::form(const RootVec& x, const RootVec& y) const {
  Rat acc = 0;
  for (int i = 0; i < rank_; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (y[j] == 0) continue;
      acc += Rat(x[i]) * Rat(y[j]) * gram_.at(i, j);
    }
  }
  return acc;
}

int RootSystem::pairing(const RootVec& beta, int i) const {
  Rat v = 2 * form(beta, simple_root(i)) / gram_.at(i, i);
  return rat_to_int(v, "Cartan pairing");
}

RootVec RootSystem::reflect(int i, const RootVec& v) const {
  RootVec out = v;
  out[i] -= pairing(v, i);
  return out;
}

void RootSystem::generate_positive_roots() {
  std::vector<RootVec> current;
  for (int i = 0; i < rank_; ++i) current.push_back(simple_root(i));
  std::vector<RootVec> all = current;
  std::map<RootVec, bool> seen;
  for (const auto& r : current) seen[r] = true;

  while (!current.empty()) {
    std::vector<RootVec> next;
    for (const auto& alpha : current) {
      for (int i = 0; i < rank_; ++i) {
        RootVec cand = alpha;
        cand[i] += 1;
        if (seen.count(cand)) continue;
        // alpha + alpha_i is a root iff q >= 1 in the alpha_i-string
        // alpha - p*alpha_i ... alpha + q*alpha_i, where q = p - <alpha,
        // alpha_i^vee>. Roots below alpha are already known by height.
        int p = 0;
        RootVec down = alpha;
        while (true) {
          down[i] -= 1;
          if (!seen.count(down)) break;
          ++p;
        }
        int q = p - pairing(alpha, i);
        if (q >= 1) {
          seen[cand] = true;
          next.push_back(cand);
          all.push_back(cand);
        }
      }
    }
    current = std::move(next);
  }

  std::sort(all.begin(), all.end(),
            [this](const RootVec& a, const RootVec& b) {
              int ha = height(a), hb = height(b);
              if (ha != hb) return ha < hb;
              return a < b;
            });
  positive_ = std::move(all);
  for (int i = 0; i < static_cast<int>(positive_.size()); ++i)
    index_[positive_[i]] = i;
}

void RootSystem::compute_longest_weyl() {
  // Greedy descent of a strictly dominant weight: at a regular vector v,
  // reflecting in any wall with (v, alpha_i) > 0 moves one chamber closer to
  // the antidominant one; the accumulated word is reduced and ends at w0.
  RatMat ones(rank_, 1);
  for (int i = 0; i < rank_; ++i) ones.at(i, 0) = 1;
  RatMat lambda = rat_inverse(gram_) * ones;

  std::vector<Rat> v(rank_);
  for (int i = 0; i < rank_; ++i) v[i] = lambda.at(i, 0);

  auto pairing_with = [&](int i) -> Rat {
    Rat acc = 0;
    for (int j = 0; j < rank_; ++j) acc += v[j] * gram_.at(j, i);
    return 2 * acc / gram_.at(i, i);
  };

  std::vector<std::vector<int>> w(rank_, std::vector<int>(rank_, 0));
  for (int i = 0; i < rank_; ++i) w[i][i] = 1;
  std::vector<int> word;

  while (true) {
    int pick = -1;
    for (int i = 0; i < rank_; ++i)
      if (pairing_with(i) > 0) {
        pick = i;
        break;
      }
    if (pick < 0) break;
    v[pick] -= pairing_with(pick);
    // w <- S_pick * w. S_pick changes only coordinate `pick`:
    // c'_pick = c_pick - sum_k c_k * A[k][pick].
    std::vector<int> new_row(rank_, 0);
    for (int j = 0; j < rank_; ++j) {
      int acc = 0;
      for (int k = 0; k < rank_; ++k) acc += w[k][j] * cartan_[k][pick];
      new_row[j] = w[pick][j] - acc;
    }
    w[pick] = std::move(new_row);
    word.push_back(pick);
  }

  w0_.matrix = std::move(w);
  w0_.word = std::move(word);

  minus_w0_.assign(rank_, -1);
  for (int i = 0; i < rank_; ++i) {
    RootVec img = w0_.apply(simple_root(i));
    for (int& c : img) c = -c;
    auto idx = positive_index(img);
    if (!idx || height(img) != 1)
      throw Error("internal: -w0 does not permute simple roots");
    for (int j = 0; j < rank_; ++j)
      if (img == simple_root(j)) minus_w0_[i] = j;
  }
}

RootSystem RootSystem::build(LieType type, int rank) {
  if (!valid_pair(type, rank))
    throw Error("invalid (type, rank) pair " +
                std::string(1, lie_type_char(type)) + std::to_string(rank));
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  rs.gram_ = gram_matrix(type, rank);
  rs.sym_.resize(rank);
  for (int j = 0; j < rank; ++j) rs.sym_[j] = rs.gram_.at(j, j) / 2;
  rs.cartan_.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Rat v = 2 * rs.gram_.at(i, j) / rs.gram_.at(j, j);
      rs.cartan_[i][j] = rat_to_int(v, "Cartan entry");
    }
  rs.generate_positive_roots();
  rs.compute_longest_weyl();
  return rs;
}

RootVec WeylElement::apply(const RootVec& v) const {
  int n = static_cast<int>(matrix.size());
  RootVec out(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += matrix[i][j] * v[j];
  return out;
}

bool RootSystem::is_isometry(const std::vector<int>& src,
                             const std::vector<int>& dst,
                             const std::map<int, int>& tau) const {
  if (tau.size() != src.size() || src.size() != dst.size())
    throw Error("tau is not a bijection: size mismatch");
  std::vector<bool> hit(rank_, false);
  for (int s : src) {
    auto it = tau.find(s);
    if (it == tau.end()) throw Error("tau is not defined on the whole source");
    int d = it->second;
    if (std::find(dst.begin(), dst.end(), d) == dst.end())
      throw Error("tau image leaves the target set");
    if (hit[d]) throw Error("tau is not injective");
    hit[d] = true;
  }
  for (int a : src)
    for (int b : src) {
      if (form(simple_root(tau.at(a)), simple_root(tau.at(b))) !=
          form(simple_root(a), simple_root(b)))
        return false;
    }
  return true;
}

}  // namespace cybel
