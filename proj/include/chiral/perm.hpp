#pragma once

// Finite permutation groups: permutations acting on the right, stabilizer
// chains built by Schreier-Sims, and the subgroup algorithms built on them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "chiral/errors.hpp"

namespace chiral {

using point_t = std::uint32_t;

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw ResourceError("group order exceeds 64 bits", UINT64_MAX);
  }
  return r;
}

inline std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  return checked_mul(a / std::gcd(a, b), b);
}

}  // namespace detail

/// A bijection of {0, ..., degree-1}. Products read left to right:
/// x^(g*h) = (x^g)^h.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), point_t{0});
  }

  /// Throws InvalidArgument unless `images` is a bijection.
  explicit Permutation(std::vector<point_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (point_t x : img_) {
      if (x >= img_.size() || seen[x]) {
        throw InvalidArgument("image list is not a permutation");
      }
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Builds a permutation from disjoint cycles, e.g. {{0, 1, 2}, {3, 4}}.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<point_t>> cycles) {
    std::vector<std::vector<point_t>> cs;
    for (auto c : cycles) cs.emplace_back(c);
    return from_cycles(degree, cs);
  }

  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<point_t>>& cycles) {
    std::vector<point_t> img(degree);
    std::iota(img.begin(), img.end(), point_t{0});
    std::vector<bool> used(degree, false);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree || used[c[i]]) {
          throw InvalidArgument("cycles are not disjoint or exceed the degree");
        }
        used[c[i]] = true;
        img[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(img), unchecked);
  }

  std::size_t degree() const noexcept { return img_.size(); }
  point_t operator[](point_t x) const noexcept { return img_[x]; }
  std::span<const point_t> images() const noexcept { return img_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] != i) return false;
    }
    return true;
  }

  std::optional<point_t> smallest_moved_point() const noexcept {
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] != i) return static_cast<point_t>(i);
    }
    return std::nullopt;
  }

  Permutation inverse() const {
    std::vector<point_t> inv(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<point_t>(i);
    return Permutation(std::move(inv), unchecked);
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw InvalidArgument("degree mismatch in product");
    std::vector<point_t> out(a.img_.size());
    const point_t* pa = a.img_.data();
    const point_t* pb = b.img_.data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = pb[pa[i]];
    return Permutation(std::move(out), unchecked);
  }

  Permutation& operator*=(const Permutation& b) {
    if (degree() != b.degree()) throw InvalidArgument("degree mismatch in product");
    for (auto& x : img_) x = b.img_[x];
    return *this;
  }

  Permutation pow(long long k) const {
    Permutation base = k < 0 ? inverse() : *this;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1
                                 : static_cast<unsigned long long>(k);
    Permutation acc(degree());
    while (e != 0) {
      if (e & 1U) acc *= base;
      e >>= 1U;
      if (e != 0) base = base * base;
    }
    return acc;
  }

  /// Conjugate g^-1 * this * g.
  Permutation conjugate_by(const Permutation& g) const { return g.inverse() * *this * g; }

  std::vector<std::vector<point_t>> cycles() const {
    std::vector<std::vector<point_t>> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<point_t> c;
      for (point_t x = static_cast<point_t>(i); !seen[x]; x = img_[x]) {
        seen[x] = true;
        c.push_back(x);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  /// Cycle notation with 0-based points; "()" for the identity.
  std::string to_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (const auto& c : cs) {
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i != 0) s += ',';
        s += std::to_string(c[i]);
      }
      s += ')';
    }
    return s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.img_ <=> b.img_; }

 private:
  struct unchecked_t {};
  static constexpr unchecked_t unchecked{};
  Permutation(std::vector<point_t> images, unchecked_t) : img_(std::move(images)) {}

  friend Permutation direct_sum(const Permutation&, const Permutation&);
  friend Permutation restrict_to(const Permutation&, std::size_t, std::size_t);

  std::vector<point_t> img_;
};

/// Least k >= 1 with g^k = identity (lcm of the cycle lengths).
inline std::uint64_t element_order(const Permutation& g) {
  std::uint64_t ord = 1;
  for (const auto& c : g.cycles()) ord = detail::checked_lcm(ord, c.size());
  return ord;
}

/// The permutation acting as `a` on the first a.degree() points and as `b`
/// on the following b.degree() points.
inline Permutation direct_sum(const Permutation& a, const Permutation& b) {
  std::vector<point_t> img(a.degree() + b.degree());
  const auto shift = static_cast<point_t>(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) img[i] = a[static_cast<point_t>(i)];
  for (std::size_t i = 0; i < b.degree(); ++i) img[shift + i] = shift + b[static_cast<point_t>(i)];
  return Permutation(std::move(img), Permutation::unchecked);
}

/// The action of `g` on the block [first, first + count), renumbered from 0.
/// Throws InvalidArgument if the block is not invariant.
inline Permutation restrict_to(const Permutation& g, std::size_t first, std::size_t count) {
  std::vector<point_t> img(count);
  for (std::size_t i = 0; i < count; ++i) {
    point_t y = g[static_cast<point_t>(first + i)];
    if (y < first || y >= first + count) throw InvalidArgument("block is not invariant");
    img[i] = static_cast<point_t>(y - first);
  }
  return Permutation(std::move(img), Permutation::unchecked);
}

/// Construction hints for stabilizer chains. A known order lets the
/// randomized phase certify completeness; an order bound certifies it when
/// attained. Otherwise the chain is verified deterministically.
struct GroupOptions {
  std::optional<std::uint64_t> known_order;
  std::optional<std::uint64_t> order_bound;
  std::vector<point_t> base_prefix;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

namespace detail {

class StabilizerChain {
 public:
  static constexpr std::int32_t kNotInOrbit = -2;
  static constexpr std::int32_t kRoot = -1;
  // Explicit transversals are cached while orbit length * degree stays below this.
  static constexpr std::size_t kRepBudget = std::size_t{1} << 22;

  StabilizerChain(std::size_t degree, const std::vector<Permutation>& gens,
                  const GroupOptions& opts)
      : degree_(degree) {
    for (point_t b : opts.base_prefix) {
      if (b >= degree_) throw InvalidArgument("base point outside the domain");
      if (std::find(prefix_.begin(), prefix_.end(), b) == prefix_.end()) prefix_.push_back(b);
    }
    for (point_t b : prefix_) push_level(b);

    for (const auto& g : gens) {
      if (g.is_identity()) continue;
      if (std::find(strong_.begin(), strong_.end(), g) != strong_.end()) continue;
      std::size_t drop = first_moved_level(g);
      if (drop == levels_.size()) push_level(*g.smallest_moved_point());
      auto gi = add_strong(g);
      for (std::size_t l = 0; l <= drop; ++l) add_generator_to_level(l, gi);
    }

    std::optional<std::uint64_t> target = opts.known_order ? opts.known_order : opts.order_bound;
    bool complete = random_phase(target, opts.seed, gens);
    if (!complete) deterministic_phase();

    if (opts.known_order && order() != *opts.known_order) {
      throw ConsistencyError("stabilizer chain order " + std::to_string(order()) +
                             " differs from the known order " +
                             std::to_string(*opts.known_order));
    }
    if (opts.order_bound && order() > *opts.order_bound) {
      throw ConsistencyError("stabilizer chain order exceeds the supplied bound");
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  std::size_t prefix_length() const noexcept { return prefix_.size(); }
  point_t base_point(std::size_t i) const { return levels_[i].base; }
  const std::vector<point_t>& orbit(std::size_t i) const { return levels_[i].orbit; }

  std::uint64_t order() const { return order_from(0); }

  std::uint64_t order_from(std::size_t level) const {
    std::uint64_t ord = 1;
    for (std::size_t l = level; l < levels_.size(); ++l) {
      ord = checked_mul(ord, levels_[l].orbit.size());
    }
    return ord;
  }

  std::vector<Permutation> level_generators(std::size_t i) const {
    std::vector<Permutation> out;
    if (i >= levels_.size()) return out;
    for (auto gi : levels_[i].gens) out.push_back(strong_[gi]);
    return out;
  }

  const std::vector<Permutation>& strong_generators() const noexcept { return strong_; }

  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from = 0) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const Level& L = levels_[l];
      point_t beta = g[L.base];
      if (L.label[beta] == kNotInOrbit) return {std::move(g), l};
      if (L.cached) {
        g *= L.rep_inv[L.position[beta]];
      } else {
        while (L.label[beta] != kRoot) {
          const auto& xinv = strong_inv_[static_cast<std::size_t>(L.label[beta])];
          g *= xinv;
          beta = xinv[beta];
        }
      }
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    auto [residue, level] = strip(g);
    return level == levels_.size() && residue.is_identity();
  }

  Permutation transversal_inverse(std::size_t level, point_t beta) const {
    const Level& L = levels_[level];
    if (L.cached) return L.rep_inv[L.position[beta]];
    Permutation u(degree_);
    while (L.label[beta] != kRoot) {
      const auto& xinv = strong_inv_[static_cast<std::size_t>(L.label[beta])];
      u *= xinv;
      beta = xinv[beta];
    }
    return u;
  }

  Permutation transversal(std::size_t level, point_t beta) const {
    return transversal_inverse(level, beta).inverse();
  }

 private:
  struct Level {
    point_t base = 0;
    std::vector<std::uint32_t> gens;    // indices into strong_
    std::vector<point_t> orbit;         // in discovery order
    std::vector<std::int32_t> label;    // per point: kNotInOrbit, kRoot, or index into strong_
    std::vector<std::uint32_t> position;
    std::vector<std::uint32_t> tested;  // per orbit position: generators already checked
    std::vector<Permutation> rep_inv;   // per orbit position, while cached
    bool cached = true;
  };

  void push_level(point_t b) {
    Level L;
    L.base = b;
    L.label.assign(degree_, kNotInOrbit);
    L.position.assign(degree_, 0);
    L.label[b] = kRoot;
    L.orbit.push_back(b);
    L.tested.push_back(0);
    L.cached = degree_ <= kRepBudget;
    if (L.cached) L.rep_inv.emplace_back(degree_);
    levels_.push_back(std::move(L));
  }

  std::size_t first_moved_level(const Permutation& g) const {
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      if (g[levels_[l].base] != levels_[l].base) return l;
    }
    return levels_.size();
  }

  std::uint32_t add_strong(const Permutation& g) {
    strong_.push_back(g);
    strong_inv_.push_back(g.inverse());
    return static_cast<std::uint32_t>(strong_.size() - 1);
  }

  void visit(Level& L, point_t from, std::uint32_t gi) {
    point_t to = strong_[gi][from];
    if (L.label[to] != kNotInOrbit) return;
    L.label[to] = static_cast<std::int32_t>(gi);
    L.position[to] = static_cast<std::uint32_t>(L.orbit.size());
    L.orbit.push_back(to);
    L.tested.push_back(0);
    if (L.cached) {
      if (L.orbit.size() * degree_ > kRepBudget) {
        L.cached = false;
        L.rep_inv.clear();
        L.rep_inv.shrink_to_fit();
      } else {
        L.rep_inv.push_back(strong_inv_[gi] * L.rep_inv[L.position[from]]);
      }
    }
  }

  // Orbits only ever grow, and existing tree labels never change, so
  // Schreier generators already verified stay valid.
  void add_generator_to_level(std::size_t l, std::uint32_t gi) {
    Level& L = levels_[l];
    L.gens.push_back(gi);
    const std::size_t old = L.orbit.size();
    for (std::size_t p = 0; p < old; ++p) visit(L, L.orbit[p], gi);
    for (std::size_t p = old; p < L.orbit.size(); ++p) {
      for (std::size_t k = 0; k < L.gens.size(); ++k) visit(L, L.orbit[p], L.gens[k]);
    }
  }

  void insert_residue(const Permutation& y, std::size_t from, std::size_t drop) {
    if (drop == levels_.size()) push_level(*y.smallest_moved_point());
    auto gi = add_strong(y);
    for (std::size_t l = from; l <= drop; ++l) add_generator_to_level(l, gi);
  }

  bool random_phase(std::optional<std::uint64_t> target, std::uint64_t seed,
                    const std::vector<Permutation>& gens) {
    std::vector<Permutation> pool;
    for (const auto& g : gens) {
      if (!g.is_identity()) pool.push_back(g);
    }
    if (pool.empty()) return true;
    if (target && order() == *target) return true;
    const std::size_t seeds = pool.size();
    while (pool.size() < 10) pool.push_back(pool[pool.size() % seeds]);

    std::mt19937_64 rng(seed);
    Permutation acc(degree_);
    auto next = [&]() -> const Permutation& {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      while (j == i) j = pick(rng);
      if (rng() & 1U) {
        pool[i] = pool[i] * pool[j];
      } else {
        pool[i] = pool[j] * pool[i];
      }
      acc *= pool[i];
      return acc;
    };
    for (int w = 0; w < 50; ++w) next();

    const std::size_t patience = target ? 64 : 24;
    std::size_t quiet = 0;
    while (quiet < patience) {
      auto [y, drop] = strip(next());
      if (drop == levels_.size() && y.is_identity()) {
        ++quiet;
        continue;
      }
      quiet = 0;
      insert_residue(y, 0, drop);
      if (target) {
        auto ord = order();
        if (ord == *target) return true;
        if (ord > *target) return false;
      }
    }
    return false;
  }

  void deterministic_phase() {
    auto i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      const auto li = static_cast<std::size_t>(i);
      bool restarted = false;
      for (std::size_t p = 0; p < levels_[li].orbit.size() && !restarted; ++p) {
        while (levels_[li].tested[p] < levels_[li].gens.size()) {
          Level& L = levels_[li];
          const std::uint32_t gi = L.gens[L.tested[p]];
          ++L.tested[p];
          const point_t beta = L.orbit[p];
          const point_t gamma = strong_[gi][beta];
          // Tree edges give trivial Schreier generators.
          if (L.label[gamma] == static_cast<std::int32_t>(gi) && strong_inv_[gi][gamma] == beta) {
            continue;
          }
          Permutation h = transversal(li, beta) * strong_[gi] * transversal_inverse(li, gamma);
          if (h.is_identity()) continue;
          auto [y, drop] = strip(std::move(h), li + 1);
          if (drop == levels_.size() && y.is_identity()) continue;
          insert_residue(y, li + 1, drop);
          i = static_cast<std::ptrdiff_t>(drop);
          restarted = true;
          break;
        }
      }
      if (!restarted) --i;
    }
  }

  std::size_t degree_;
  std::vector<point_t> prefix_;
  std::vector<Level> levels_;
  std::vector<Permutation> strong_;
  std::vector<Permutation> strong_inv_;
};

}  // namespace detail

/// An immutable finite permutation group with a verified stabilizer chain.
/// Copies share the chain.
class PermGroup {
 public:
  /// The trivial group on `degree` points.
  static PermGroup trivial(std::size_t degree) {
    if (degree == 0) throw InvalidArgument("degree must be positive");
    PermGroup g;
    g.degree_ = degree;
    g.gens_.push_back(Permutation(degree));
    g.chain_ = std::make_shared<const detail::StabilizerChain>(degree, g.gens_, GroupOptions{});
    return g;
  }

  static PermGroup from_generators(std::vector<Permutation> gens, const GroupOptions& opts = {}) {
    if (gens.empty()) throw InvalidArgument("at least one generator is required");
    const std::size_t d = gens.front().degree();
    if (d == 0) throw InvalidArgument("degree must be positive");
    for (const auto& g : gens) {
      if (g.degree() != d) throw InvalidArgument("generators have different degrees");
    }
    PermGroup g;
    g.degree_ = d;
    g.gens_ = std::move(gens);
    g.chain_ = std::make_shared<const detail::StabilizerChain>(d, g.gens_, opts);
    return g;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::uint64_t order() const { return chain_->order(); }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  const std::vector<Permutation>& strong_generators() const { return chain_->strong_generators(); }
  const detail::StabilizerChain& chain() const noexcept { return *chain_; }
  Permutation identity() const { return Permutation(degree_); }

  std::vector<point_t> base() const {
    std::vector<point_t> b;
    for (std::size_t i = 0; i < chain_->depth(); ++i) b.push_back(chain_->base_point(i));
    return b;
  }

  bool contains(const Permutation& g) const { return chain_->contains(g); }
  bool is_trivial() const { return order() == 1; }

  bool is_abelian() const {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      for (std::size_t j = i + 1; j < gens_.size(); ++j) {
        if (gens_[i] * gens_[j] != gens_[j] * gens_[i]) return false;
      }
    }
    return true;
  }

  bool is_subgroup_of(const PermGroup& other) const {
    if (degree_ != other.degree_) return false;
    return std::all_of(gens_.begin(), gens_.end(),
                       [&](const Permutation& g) { return other.contains(g); });
  }

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree_ == b.degree_ && a.order() == b.order() && a.is_subgroup_of(b);
  }

  /// Calls `f(element)` once per group element; stops early if `f` returns
  /// false. The caller is responsible for keeping the order enumerable.
  template <class F>
  void for_each_element(F&& f) const {
    std::vector<std::vector<Permutation>> trans(chain_->depth());
    for (std::size_t l = 0; l < trans.size(); ++l) {
      for (point_t beta : chain_->orbit(l)) trans[l].push_back(chain_->transversal(l, beta));
    }
    if (trans.empty()) {
      call(f, identity());
      return;
    }
    // Every element is u_{k-1} * ... * u_0 with u_l from the level-l transversal.
    bool keep_going = true;
    auto rec = [&](auto& self, std::size_t level, const Permutation& acc) -> void {
      for (const auto& u : trans[level]) {
        if (!keep_going) return;
        Permutation next = acc * u;
        if (level == 0) {
          keep_going = call(f, next);
        } else {
          self(self, level - 1, next);
        }
      }
    };
    rec(rec, trans.size() - 1, identity());
  }

  std::vector<Permutation> elements(std::uint64_t cap = 1'000'000) const {
    if (order() > cap) throw ResourceError("group too large to enumerate", cap, order());
    std::vector<Permutation> out;
    out.reserve(order());
    for_each_element([&](const Permutation& g) { out.push_back(g); });
    return out;
  }

  /// Uniformly distributed element.
  template <class Rng>
  Permutation random_element(Rng& rng) const {
    Permutation g(degree_);
    for (std::size_t l = chain_->depth(); l-- > 0;) {
      const auto& orb = chain_->orbit(l);
      std::uniform_int_distribution<std::size_t> pick(0, orb.size() - 1);
      g *= chain_->transversal(l, orb[pick(rng)]);
    }
    return g;
  }

  /// The subgroup generated by `gens`; its order must divide ours.
  PermGroup subgroup(const std::vector<Permutation>& gens) const {
    std::vector<Permutation> nontrivial;
    for (const auto& g : gens) {
      if (g.degree() != degree_) throw InvalidArgument("subgroup generator has the wrong degree");
      if (!contains(g)) throw InvalidArgument("subgroup generator is not a group element");
      if (!g.is_identity()) nontrivial.push_back(g);
    }
    if (nontrivial.empty()) return trivial(degree_);
    GroupOptions opts;
    opts.order_bound = order();
    PermGroup h = from_generators(std::move(nontrivial), opts);
    if (order() % h.order() != 0) {
      throw ConsistencyError("subgroup order does not divide the group order");
    }
    return h;
  }

  /// Elements fixing every point of `points`, from a chain based through them.
  PermGroup pointwise_stabilizer(const std::vector<point_t>& points) const {
    for (point_t p : points) {
      if (p >= degree_) throw InvalidArgument("point outside the domain");
    }
    GroupOptions opts;
    opts.known_order = order();
    opts.base_prefix = points;
    detail::StabilizerChain rebased(degree_, strong_generators().empty() ? gens_
                                                                          : strong_generators(),
                                    opts);
    const std::size_t m = rebased.prefix_length();
    auto gens = rebased.level_generators(m);
    if (gens.empty()) return trivial(degree_);
    GroupOptions sub;
    sub.known_order = rebased.order_from(m);
    return from_generators(std::move(gens), sub);
  }

 private:
  PermGroup() = default;

  template <class F>
  static bool call(F& f, const Permutation& g) {
    if constexpr (std::is_same_v<std::invoke_result_t<F&, const Permutation&>, void>) {
      f(g);
      return true;
    } else {
      return static_cast<bool>(f(g));
    }
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  std::shared_ptr<const detail::StabilizerChain> chain_;
};

/// H ∩ K for subgroups of a common parent, by enumerating the smaller group
/// and testing membership in the larger one.
inline PermGroup intersection(const PermGroup& h, const PermGroup& k,
                              std::uint64_t max_enum = 1'000'000) {
  if (h.degree() != k.degree()) throw InvalidArgument("groups have different degrees");
  const PermGroup& small = h.order() <= k.order() ? h : k;
  const PermGroup& large = h.order() <= k.order() ? k : h;
  if (small.order() > max_enum) {
    throw ResourceError("intersection needs more than " + std::to_string(max_enum) +
                            " enumerated elements",
                        max_enum, small.order());
  }
  if (small.is_subgroup_of(large)) return small;

  std::vector<Permutation> gens;
  PermGroup result = PermGroup::trivial(h.degree());
  GroupOptions opts;
  opts.order_bound = small.order();
  small.for_each_element([&](const Permutation& g) {
    if (!result.contains(g) && large.contains(g)) {
      gens.push_back(g);
      result = PermGroup::from_generators(gens, opts);
    }
  });
  return result;
}

/// Smallest normal subgroup of `g` containing `gens`.
inline PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& gens) {
  std::vector<Permutation> ngens;
  for (const auto& x : gens) {
    if (!g.contains(x)) throw InvalidArgument("normal closure generator is not in the group");
    if (!x.is_identity()) ngens.push_back(x);
  }
  if (ngens.empty()) return PermGroup::trivial(g.degree());

  GroupOptions opts;
  opts.order_bound = g.order();
  PermGroup n = PermGroup::from_generators(ngens, opts);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < ngens.size() && !changed; ++i) {
      for (const auto& s : g.generators()) {
        Permutation c = ngens[i].conjugate_by(s);
        if (!n.contains(c)) {
          ngens.push_back(std::move(c));
          n = PermGroup::from_generators(ngens, opts);
          changed = true;
          break;
        }
      }
    }
  }
  if (g.order() % n.order() != 0) throw ConsistencyError("normal closure order does not divide");
  return n;
}

inline PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      comms.push_back(gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j]);
    }
  }
  return normal_closure(g, comms);
}

inline bool is_perfect(const PermGroup& g) { return derived_subgroup(g).order() == g.order(); }

inline bool is_normal_in(const PermGroup& n, const PermGroup& g) {
  for (const auto& x : n.generators()) {
    for (const auto& s : g.generators()) {
      if (!n.contains(x.conjugate_by(s))) return false;
    }
  }
  return true;
}

/// The group generated by the pairs (a_i, b_i) acting on the disjoint union
/// of the two domains. Its projections onto each factor are onto.
inline PermGroup paired_group(std::span<const Permutation> a, std::span<const Permutation> b,
                              const GroupOptions& opts = {}) {
  if (a.size() != b.size()) throw InvalidArgument("paired generator lists differ in length");
  std::vector<Permutation> gens;
  gens.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) gens.push_back(direct_sum(a[i], b[i]));
  return PermGroup::from_generators(std::move(gens), opts);
}

}  // namespace chiral
