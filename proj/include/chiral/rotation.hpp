#pragma once

// Rotation systems <s1,...,s{n-1}> and their polytopality, chirality and
// duality checks.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/fp.hpp"
#include "chiral/perm.hpp"

namespace chiral {

/// Orders p_i plus the relators s_i^{p_i} and (s_i ... s_j)^2 for i < j.
inline Presentation standard_presentation(const std::vector<std::uint64_t>& orders) {
  if (orders.empty()) throw InvalidArgument("at least one generator order is required");
  Presentation p;
  p.rank = static_cast<int>(orders.size()) + 1;
  p.orders = orders;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 1) throw InvalidArgument("generator orders must be positive");
    p.relators.push_back(Word::generator(static_cast<int>(i + 1), static_cast<std::int64_t>(orders[i])));
  }
  for (int i = 1; i < p.rank; ++i) {
    for (int j = i + 1; j < p.rank; ++j) {
      Word k;
      for (int t = i; t <= j; ++t) k *= Word::generator(t);
      p.relators.push_back(k.pow(2));
    }
  }
  return p;
}

/// sigma_i ... sigma_j as a word (1 <= i <= j <= n-1).
inline Word kappa_word(int i, int j) {
  Word w;
  for (int t = i; t <= j; ++t) w *= Word::generator(t);
  return w;
}

/// A group with an ordered tuple of marked generators sigma_1..sigma_{n-1}
/// satisfying (sigma_i ... sigma_j)^2 = 1.
class RotationSystem {
 public:
  /// Validates the relations and builds the group. `known_order`, when
  /// given, certifies the stabilizer chain.
  static RotationSystem from_generators(std::vector<Permutation> sigma,
                                        std::optional<Presentation> provenance = std::nullopt,
                                        std::optional<std::uint64_t> known_order = std::nullopt,
                                        std::optional<std::uint64_t> order_bound = std::nullopt) {
    if (sigma.empty()) throw InvalidArgument("a rotation system needs at least one generator");
    const std::size_t d = sigma.front().degree();
    for (const auto& s : sigma) {
      if (s.degree() != d) throw InvalidArgument("marked generators have different degrees");
    }
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      Permutation k = sigma[i];
      for (std::size_t j = i + 1; j < sigma.size(); ++j) {
        k *= sigma[j];
        if (!(k * k).is_identity()) {
          throw RelationError("(s" + std::to_string(i + 1) + " ... s" + std::to_string(j + 1) +
                              ")^2 is not the identity");
        }
      }
    }
    if (provenance && provenance->rank != static_cast<int>(sigma.size()) + 1) {
      throw InvalidArgument("provenance rank does not match the generator count");
    }
    RotationSystem r;
    r.sigma_ = std::move(sigma);
    GroupOptions opts;
    opts.known_order = known_order;
    opts.order_bound = order_bound;
    r.group_ = PermGroup::from_generators(r.sigma_, opts);
    r.provenance_ = std::move(provenance);
    for (const auto& s : r.sigma_) r.type_.push_back(element_order(s));
    return r;
  }

  int rank() const noexcept { return static_cast<int>(sigma_.size()) + 1; }
  const PermGroup& group() const noexcept { return group_; }
  std::uint64_t order() const { return group_.order(); }
  std::size_t degree() const noexcept { return group_.degree(); }
  const std::vector<Permutation>& sigma() const noexcept { return sigma_; }
  /// sigma_i, 1-based.
  const Permutation& s(int i) const { return sigma_.at(static_cast<std::size_t>(i - 1)); }
  const std::optional<Presentation>& provenance() const noexcept { return provenance_; }
  /// Orders of sigma_1..sigma_{n-1}.
  const std::vector<std::uint64_t>& type() const noexcept { return type_; }

  /// True when some sigma_i has smaller order than its nominal p_i.
  bool degenerate() const {
    if (!provenance_ || provenance_->orders.empty()) return false;
    for (std::size_t i = 0; i < type_.size(); ++i) {
      if (type_[i] != provenance_->orders[i]) return true;
    }
    return false;
  }

  Permutation evaluate(const Word& w) const { return chiral::evaluate(w, sigma_); }

  /// Subgroup generated by sigma_a..sigma_b (1-based, inclusive; empty when a > b).
  PermGroup section(int a, int b) const {
    std::vector<Permutation> gens;
    for (int i = a; i <= b; ++i) gens.push_back(s(i));
    return group_.subgroup(gens);
  }

 private:
  RotationSystem() = default;

  std::vector<Permutation> sigma_;
  PermGroup group_ = PermGroup::trivial(1);
  std::optional<Presentation> provenance_;
  std::vector<std::uint64_t> type_;
};

namespace detail {

// Above this order the regular representation is replaced by a smaller
// faithful coset action when one exists.
constexpr std::uint64_t kReduceDegreeAbove = 256;

inline std::vector<Permutation> smallest_faithful_action(const Presentation& p, std::uint64_t n,
                                                         std::vector<Permutation> regular,
                                                         std::size_t max_cosets) {
  const int r = p.rank - 1;
  std::vector<std::vector<Word>> candidates;
  auto range = [](int a, int b) {
    std::vector<Word> ws;
    for (int i = a; i <= b; ++i) ws.push_back(Word::generator(i));
    return ws;
  };
  if (r >= 2) {
    candidates.push_back(range(1, r - 1));
    candidates.push_back(range(2, r));
  }
  for (int i = 1; i <= r; ++i) candidates.push_back(range(i, i));

  std::vector<Permutation> best = std::move(regular);
  for (const auto& h : candidates) {
    CosetTable t;
    try {
      t = coset_enumerate(p, h, max_cosets);
    } catch (const ResourceError&) {
      continue;
    }
    if (t.index() >= best.front().degree() || t.index() < 2) continue;
    auto gens = perm_rep(t, p);
    GroupOptions opts;
    opts.order_bound = n;
    if (PermGroup::from_generators(gens, opts).order() == n) best = std::move(gens);
  }
  return best;
}

}  // namespace detail

/// The finite quotient of W+ presented by p plus `extra` relators.
inline RotationSystem rotation_system(const Presentation& p, const std::vector<Word>& extra = {},
                                      const Limits& limits = {}) {
  Presentation full = p;
  full.relators.insert(full.relators.end(), extra.begin(), extra.end());
  full.validate();
  auto table = coset_enumerate(full, {}, limits.max_cosets);
  const std::uint64_t n = table.index();
  auto gens = perm_rep(table, full);
  if (n > detail::kReduceDegreeAbove) {
    gens = detail::smallest_faithful_action(full, n, std::move(gens), limits.max_cosets);
  }
  return RotationSystem::from_generators(std::move(gens), full, n);
}

/// Generators of Gamma^I: kappa_{i,j} for i <= j with i-1, j in I, where
/// kappa_{0,j} = kappa_{i,n} = 1.
inline std::vector<Permutation> gamma_I_generators(const RotationSystem& sys,
                                                   const std::set<int>& I) {
  const int n = sys.rank();
  for (int x : I) {
    if (x < -1 || x > n) throw InvalidArgument("index set entry out of range -1..n");
  }
  std::vector<Permutation> gens;
  for (auto a = I.begin(); a != I.end(); ++a) {
    for (auto b = std::next(a); b != I.end(); ++b) {
      int i = *a + 1, j = *b;
      if (i >= 1 && j <= n - 1) gens.push_back(sys.evaluate(kappa_word(i, j)));
    }
  }
  return gens;
}

inline PermGroup gamma_I(const RotationSystem& sys, const std::set<int>& I) {
  return sys.group().subgroup(gamma_I_generators(sys, I));
}

/// {-1,...,n} without `i`.
inline std::set<int> all_but(int n, int i) {
  std::set<int> I;
  for (int x = -1; x <= n; ++x) {
    if (x != i) I.insert(x);
  }
  return I;
}

/// One checked equality <s_a..s_b> ∩ <s_c..s_d> = <s_e..s_f> (empty ranges
/// give the trivial group).
struct IntersectionCheck {
  std::pair<int, int> left, right, expected;
  std::uint64_t left_order = 0, right_order = 0, intersection_order = 0, expected_order = 0;
  bool intersection_abelian = true;

  bool holds() const { return intersection_order == expected_order; }

  static std::string range_name(std::pair<int, int> r) {
    if (r.first > r.second) return "<1>";
    std::string out = "<";
    for (int i = r.first; i <= r.second; ++i) {
      if (i > r.first) out += ",";
      out += "s" + std::to_string(i);
    }
    return out + ">";
  }

  /// Index set I with Gamma^I = <s_a..s_b>.
  static std::set<int> index_set(std::pair<int, int> r) {
    std::set<int> I;
    if (r.first > r.second) return I;
    for (int x = r.first - 1; x <= r.second; ++x) I.insert(x);
    return I;
  }

  std::string describe() const {
    return range_name(left) + " ∩ " + range_name(right) + " = " + range_name(expected);
  }
};

struct IntersectionVerdict {
  bool holds = true;
  std::optional<IntersectionCheck> witness;
  std::vector<IntersectionCheck> checks;
};

namespace detail {

inline IntersectionCheck run_check(const RotationSystem& sys, std::pair<int, int> l,
                                   std::pair<int, int> r, std::pair<int, int> e,
                                   std::uint64_t max_enum) {
  IntersectionCheck c{l, r, e};
  PermGroup a = sys.section(l.first, l.second);
  PermGroup b = sys.section(r.first, r.second);
  PermGroup x = intersection(a, b, max_enum);
  c.left_order = a.order();
  c.right_order = b.order();
  c.intersection_order = x.order();
  c.intersection_abelian = x.is_abelian();
  c.expected_order = sys.section(e.first, e.second).order();
  return c;
}

// Reduced checks on sigma_1..sigma_m.
inline void intersection_checks(const RotationSystem& sys, int m, std::uint64_t max_enum,
                                std::vector<IntersectionCheck>& out, bool stop_at_failure) {
  auto add = [&](std::pair<int, int> l, std::pair<int, int> r, std::pair<int, int> e) {
    if (stop_at_failure && !out.empty() && !out.back().holds()) return;
    out.push_back(run_check(sys, l, r, e, max_enum));
  };
  const std::pair<int, int> none{1, 0};
  if (m <= 1) return;
  if (m == 2) {
    add({1, 1}, {2, 2}, none);
  } else if (m == 3) {
    add({1, 1}, {2, 2}, none);
    add({2, 2}, {3, 3}, none);
    add({1, 2}, {2, 3}, {2, 2});
  } else if (m == 4) {
    intersection_checks(sys, 3, max_enum, out, stop_at_failure);
    add({1, 3}, {2, 4}, {2, 3});
    add({1, 3}, {3, 4}, {3, 3});
    add({1, 3}, {4, 4}, none);
  } else {
    intersection_checks(sys, m - 1, max_enum, out, stop_at_failure);
    for (int j = 2; j <= m; ++j) add({1, m - 1}, {j, m}, {j, m - 1});
  }
}

}  // namespace detail

/// Reduced intersection-property checks: rank 3, 4 and 5 use the standard
/// lists; higher ranks recurse on the facet plus
/// Gamma_{n-1} ∩ <s_j..s_{n-1}> = <s_j..s_{n-2}>.
inline IntersectionVerdict intersection_property(const RotationSystem& sys,
                                                 std::uint64_t max_enum = 1'000'000) {
  IntersectionVerdict v;
  detail::intersection_checks(sys, sys.rank() - 1, max_enum, v.checks, true);
  for (const auto& c : v.checks) {
    if (!c.holds()) {
      v.holds = false;
      v.witness = c;
      break;
    }
  }
  return v;
}

/// The image of a word under s1 -> s1^-1, s2 -> s1^2 s2, sj -> sj (j >= 3).
inline Word enantiomorph_word(const Word& w) {
  const int m = std::max(2, w.max_generator());
  std::vector<Word> images;
  images.push_back(Word::generator(1, -1));
  images.push_back(Word::generator(1, 2) * Word::generator(2));
  for (int j = 3; j <= m; ++j) images.push_back(Word::generator(j));
  return w.substitute(images);
}

/// The image of a word under s_j -> s_{n-j}^-1.
inline Word dual_word(const Word& w, int rank) {
  if (w.max_generator() > rank - 1) throw InvalidArgument("word exceeds the rank");
  std::vector<Word> images;
  for (int j = 1; j < rank; ++j) images.push_back(Word::generator(rank - j, -1));
  return w.substitute(images);
}

namespace detail {

inline std::optional<Presentation> map_provenance(const std::optional<Presentation>& p,
                                                  const std::function<Word(const Word&)>& f,
                                                  bool reverse_orders) {
  if (!p) return std::nullopt;
  Presentation q = *p;
  for (auto& r : q.relators) r = f(r);
  if (reverse_orders) std::reverse(q.orders.begin(), q.orders.end());
  return q;
}

inline std::uint64_t paired_order(const RotationSystem& sys, const std::vector<Permutation>& other) {
  GroupOptions opts;
  opts.order_bound = detail::checked_mul(sys.order(), sys.order());
  return paired_group(sys.sigma(), other, opts).order();
}

}  // namespace detail

/// Generators (s1^-1, s1^2 s2, s3, ..., s{n-1}) over the same group.
inline RotationSystem enantiomorph(const RotationSystem& sys) {
  if (sys.rank() < 3) throw InvalidArgument("enantiomorph needs rank at least 3");
  std::vector<Permutation> t = sys.sigma();
  t[0] = sys.s(1).inverse();
  t[1] = sys.s(1) * sys.s(1) * sys.s(2);
  return RotationSystem::from_generators(
      std::move(t), detail::map_provenance(sys.provenance(), enantiomorph_word, false), sys.order());
}

/// Generators (s{n-1}^-1, ..., s1^-1) over the same group.
inline RotationSystem dual(const RotationSystem& sys) {
  std::vector<Permutation> t;
  for (int j = sys.rank() - 1; j >= 1; --j) t.push_back(sys.s(j).inverse());
  const int n = sys.rank();
  return RotationSystem::from_generators(
      std::move(t),
      detail::map_provenance(sys.provenance(), [n](const Word& w) { return dual_word(w, n); }, true),
      sys.order());
}

/// True iff s_i -> enantiomorph generator extends to an automorphism:
/// the paired group has the order of the group. When a presentation is
/// attached, every transformed relator is also evaluated; disagreement
/// between the two methods is a ConsistencyError.
inline bool is_reflexible(const RotationSystem& sys) {
  RotationSystem e = enantiomorph(sys);
  const bool by_graph = detail::paired_order(sys, e.sigma()) == sys.order();
  if (sys.provenance()) {
    bool by_relators = true;
    for (const auto& r : sys.provenance()->relators) {
      if (!sys.evaluate(enantiomorph_word(r)).is_identity()) {
        by_relators = false;
        break;
      }
    }
    if (by_relators != by_graph) {
      throw ConsistencyError(std::string("reflexibility methods disagree: graph subgroup says ") +
                             (by_graph ? "reflexible" : "chiral") + ", relators say " +
                             (by_relators ? "reflexible" : "chiral"));
    }
  }
  return by_graph;
}

/// (order of w, order of its enantiomorphic image), both evaluated in sys.
inline std::pair<std::uint64_t, std::uint64_t> word_period_pair(const RotationSystem& sys,
                                                                 const Word& w) {
  return {element_order(sys.evaluate(w)), element_order(sys.evaluate(enantiomorph_word(w)))};
}

/// True iff s_j -> s_{n-j}^-1 extends to an automorphism.
inline bool is_self_dual(const RotationSystem& sys) {
  std::vector<Permutation> t;
  for (int j = sys.rank() - 1; j >= 1; --j) t.push_back(sys.s(j).inverse());
  return detail::paired_order(sys, t) == sys.order();
}

/// True iff the dual is equivalent to the enantiomorph (s_j -> the dual
/// generators of the mirror image extend to an automorphism).
inline bool is_improperly_self_dual(const RotationSystem& sys) {
  return detail::paired_order(sys, dual(enantiomorph(sys)).sigma()) == sys.order();
}

/// Section on sigma_1..sigma_{n-2}.
inline RotationSystem facet(const RotationSystem& sys) {
  if (sys.rank() < 3) throw InvalidArgument("facet needs rank at least 3");
  std::vector<Permutation> t(sys.sigma().begin(), sys.sigma().end() - 1);
  return RotationSystem::from_generators(std::move(t));
}

/// Section on sigma_2..sigma_{n-1}.
inline RotationSystem vertex_figure(const RotationSystem& sys) {
  if (sys.rank() < 3) throw InvalidArgument("vertex figure needs rank at least 3");
  std::vector<Permutation> t(sys.sigma().begin() + 1, sys.sigma().end());
  return RotationSystem::from_generators(std::move(t));
}

enum class Side { facet, vertex };

/// Whether the homomorphism s_j -> target s_j is one-to-one on the facet
/// subgroup <s1..s{n-2}> (or the vertex subgroup <s2..s{n-1}>). Throws
/// InvalidArgument if the map is not a homomorphism.
inline bool quotient_criterion(const RotationSystem& sys, const RotationSystem& target, Side side) {
  if (sys.rank() != target.rank()) throw InvalidArgument("systems have different ranks");
  if (sys.rank() < 3) throw InvalidArgument("quotient criterion needs rank at least 3");
  GroupOptions opts;
  opts.order_bound = detail::checked_mul(sys.order(), target.order());
  if (paired_group(sys.sigma(), target.sigma(), opts).order() != sys.order()) {
    throw InvalidArgument("generator map does not extend to a homomorphism");
  }
  const int n = sys.rank();
  auto [a, b] = side == Side::facet ? std::pair{1, n - 2} : std::pair{2, n - 1};
  return sys.section(a, b).order() == target.section(a, b).order();
}

/// Ranked poset of cosets of the Gamma^{I \ {i}}, i = 0..n-1.
struct FaceLattice {
  int rank = 0;
  /// Number of i-faces for i = 0..n-1.
  std::vector<std::size_t> f_vector;
  /// incidences[{i,j}] lists incident (i-face, j-face) pairs, i < j.
  std::map<std::pair<int, int>, std::vector<std::pair<std::size_t, std::size_t>>> incidences;
  std::uint64_t flags = 0;

  bool incident(int i, std::size_t a, int j, std::size_t b) const {
    if (i == j) return a == b;
    if (i > j) return incident(j, b, i, a);
    if (i < 0 || j >= rank) return true;
    const auto& v = incidences.at({i, j});
    return std::binary_search(v.begin(), v.end(), std::pair{a, b});
  }
};

namespace detail {

struct PermKeyHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : p.images()) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

}  // namespace detail

/// Faces, incidences and flag count, with the diamond condition and
/// the 2|G| flag count verified (DiamondViolation otherwise).
inline FaceLattice face_lattice(const RotationSystem& sys, std::uint64_t max_lattice = 10'000) {
  const int n = sys.rank();
  if (sys.order() > max_lattice) {
    throw ResourceError("face lattice needs " + std::to_string(sys.order()) +
                            " group elements, above the lattice cap",
                        max_lattice, sys.order());
  }
  const auto elems = sys.group().elements(max_lattice);
  std::unordered_map<Permutation, std::size_t, detail::PermKeyHash> index;
  for (std::size_t k = 0; k < elems.size(); ++k) index.emplace(elems[k], k);
  const std::size_t N = elems.size();

  // label[i][g] = i-face (right coset of Gamma_i) containing element g
  std::vector<std::vector<std::size_t>> label(n, std::vector<std::size_t>(N, SIZE_MAX));
  FaceLattice fl;
  fl.rank = n;
  fl.f_vector.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    auto gens = gamma_I_generators(sys, all_but(n, i));
    std::vector<std::size_t> stack;
    for (std::size_t g = 0; g < N; ++g) {
      if (label[i][g] != SIZE_MAX) continue;
      const std::size_t face = fl.f_vector[i]++;
      label[i][g] = face;
      stack.push_back(g);
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (const auto& h : gens) {
          std::size_t y = index.at(h * elems[x]);
          if (label[i][y] == SIZE_MAX) {
            label[i][y] = face;
            stack.push_back(y);
          }
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::set<std::pair<std::size_t, std::size_t>> s;
      for (std::size_t g = 0; g < N; ++g) s.emplace(label[i][g], label[j][g]);
      fl.incidences[{i, j}] = std::vector(s.begin(), s.end());
    }
  }

  auto count = [&](int r) -> std::size_t { return (r < 0 || r >= n) ? 1 : fl.f_vector[r]; };
  // up(r, a): faces of rank r+1 incident with face a of rank r, for r = -1..n-1
  auto up = [&](int r, std::size_t a) {
    std::vector<std::size_t> out;
    if (r < 0 || r + 1 >= n) {
      for (std::size_t c = 0; c < count(r + 1); ++c) out.push_back(c);
      return out;
    }
    const auto& v = fl.incidences.at({r, r + 1});
    auto it = std::lower_bound(v.begin(), v.end(), std::pair<std::size_t, std::size_t>{a, 0});
    for (; it != v.end() && it->first == a; ++it) out.push_back(it->second);
    return out;
  };

  for (int i = -1; i + 2 <= n; ++i) {
    for (std::size_t a = 0; a < count(i); ++a) {
      std::map<std::size_t, std::size_t> mids;
      for (auto c : up(i, a)) {
        for (auto b : up(i + 1, c)) ++mids[b];
      }
      for (std::size_t b = 0; b < count(i + 2); ++b) {
        if (!fl.incident(i, a, i + 2, b)) continue;
        auto it = mids.find(b);
        std::size_t m = it == mids.end() ? 0 : it->second;
        if (m != 2) {
          throw DiamondViolation("diamond condition fails between a " + std::to_string(i) +
                                 "-face and a " + std::to_string(i + 2) + "-face (" +
                                 std::to_string(m) + " faces in between)");
        }
      }
    }
  }

  // Maximal chains by depth-first search over pairwise incident faces.
  std::vector<std::size_t> chain(n);
  std::function<void(int)> extend = [&](int r) {
    if (r == n) {
      ++fl.flags;
      return;
    }
    for (auto c : up(r - 1, r == 0 ? 0 : chain[r - 1])) {
      bool ok = true;
      for (int q = 0; q + 1 < r && ok; ++q) ok = fl.incident(q, chain[q], r, c);
      if (!ok) continue;
      chain[r] = c;
      extend(r + 1);
    }
  };
  extend(0);
  if (fl.flags != 2 * sys.order()) {
    throw DiamondViolation("face lattice has " + std::to_string(fl.flags) + " flags, expected " +
                           std::to_string(2 * sys.order()));
  }
  return fl;
}

}  // namespace chiral
