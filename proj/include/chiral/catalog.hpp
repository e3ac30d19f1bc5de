#pragma once

// Named constructions: toroidal maps, string rotation groups, the example
// polytopes, L2(p), symmetric/alternating groups and generating-tuple search.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chiral/chirality.hpp"
#include "chiral/errors.hpp"
#include "chiral/fp.hpp"
#include "chiral/perm.hpp"
#include "chiral/rotation.hpp"

namespace chiral {

/// Standard relators of [p1,...,p{n-1}]+.
inline Presentation string_rotation(const std::vector<std::uint64_t>& orders) {
  for (auto p : orders) {
    if (p < 2) throw InvalidArgument("string rotation group orders must be at least 2");
  }
  return standard_presentation(orders);
}

namespace detail {

// Orientation-preserving symmetries z -> u^k z + t of a lattice tiling,
// with t taken modulo an ideal. Points of the regular action are (k, t).
struct PlanarRing {
  int units;  // 4 (Gaussian) or 6 (Eisenstein)
  // multiply by the generating unit: (x, y) = x + y*w
  std::function<std::array<std::int64_t, 2>(std::array<std::int64_t, 2>)> rotate;
  // canonical class key of x + y*w modulo the ideal
  std::function<std::array<std::int64_t, 2>(std::array<std::int64_t, 2>)> key;
};

struct AffineGen {
  int k;                          // rotation by unit^k
  std::array<std::int64_t, 2> t;  // then translation
};

inline std::vector<Permutation> lattice_action(const PlanarRing& ring,
                                               const std::vector<AffineGen>& gens,
                                               std::size_t max_points) {
  using Vec = std::array<std::int64_t, 2>;
  using Point = std::pair<int, Vec>;  // (k, canonical key)
  auto rot = [&](Vec v, int k) {
    for (int i = 0; i < ((k % ring.units) + ring.units) % ring.units; ++i) v = ring.rotate(v);
    return v;
  };
  std::map<Point, std::size_t> index;
  std::vector<std::pair<int, Vec>> reps;  // representative translation per point
  std::vector<Point> queue;
  auto add = [&](int k, Vec t) -> std::size_t {
    Point p{((k % ring.units) + ring.units) % ring.units, ring.key(t)};
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    if (reps.size() >= max_points) throw ResourceError("lattice route too large", max_points, reps.size());
    index.emplace(p, reps.size());
    reps.push_back({p.first, t});
    return reps.size() - 1;
  };
  add(0, {0, 0});
  std::vector<std::vector<std::size_t>> images(gens.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto [k, t] = reps[i];
    for (std::size_t g = 0; g < gens.size(); ++g) {
      // apply the point's map, then the generator: u^{kg}(u^k z + t) + tg
      Vec nt = rot(t, gens[g].k);
      nt = {nt[0] + gens[g].t[0], nt[1] + gens[g].t[1]};
      images[g].push_back(add(k + gens[g].k, nt));
    }
  }
  std::vector<Permutation> out;
  for (auto& img : images) {
    std::vector<point_t> v(img.begin(), img.end());
    out.emplace_back(std::move(v));
  }
  return out;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace detail

/// Which of the two enantiomorphic torus maps a parameter pair names is
/// fixed by the translation relator: {4,4}_(b,c) uses T1^b T2^c with
/// T1 = s2 s1^-1, T2 = s1 T1 s1^-1.
inline Presentation torus_44_presentation(std::int64_t b, std::int64_t c) {
  if (b < 0 || c < 0 || (b == 0 && c == 0)) throw InvalidArgument("torus parameters must be nonnegative and not both 0");
  Presentation p = string_rotation({4, 4});
  Word t1 = parse_word("s2 s1^-1", 3);
  Word t2 = parse_word("s1 s2 s1^-2", 3);
  p.relators.push_back(t1.pow(b) * t2.pow(c));
  return p;
}

/// {3,6}_(b,c): T2^b T1^c with T1 = s2^2 s1^-1, T2 = s2 T1 s2^-1.
inline Presentation torus_36_presentation(std::int64_t b, std::int64_t c) {
  if (b < 0 || c < 0 || (b == 0 && c == 0)) throw InvalidArgument("torus parameters must be nonnegative and not both 0");
  Presentation p = string_rotation({3, 6});
  Word t1 = parse_word("s2^2 s1^-1", 3);
  Word t2 = parse_word("s2^3 s1^-1 s2^-1", 3);
  p.relators.push_back(t2.pow(b) * t1.pow(c));
  return p;
}

/// {4,4}_(b,c) from the darts of Z[i] modulo the ideal (c + b i):
/// s1: z -> iz + 1, s2: z -> iz.
inline RotationSystem torus_44_lattice(std::int64_t b, std::int64_t c, std::size_t max_points = 1'000'000) {
  if (b < 0 || c < 0 || (b == 0 && c == 0)) throw InvalidArgument("torus parameters must be nonnegative and not both 0");
  const std::int64_t n = b * b + c * c;
  detail::PlanarRing ring;
  ring.units = 4;
  ring.rotate = [](std::array<std::int64_t, 2> v) { return std::array<std::int64_t, 2>{-v[1], v[0]}; };
  // z * conj(c + b i) = (xc + yb) + (yc - xb) i; zero mod n iff z is in the ideal
  ring.key = [=](std::array<std::int64_t, 2> v) {
    return std::array<std::int64_t, 2>{detail::mod(v[0] * c + v[1] * b, n),
                                       detail::mod(v[1] * c - v[0] * b, n)};
  };
  auto gens = detail::lattice_action(ring, {{1, {1, 0}}, {1, {0, 0}}}, max_points);
  return RotationSystem::from_generators(std::move(gens), std::nullopt, 4 * n);
}

/// {3,6}_(b,c) from the darts of Z[w], w = e^{i pi/3}, modulo (b + c w):
/// s1: z -> w^2 z + 1, s2: z -> w z.
inline RotationSystem torus_36_lattice(std::int64_t b, std::int64_t c, std::size_t max_points = 1'000'000) {
  if (b < 0 || c < 0 || (b == 0 && c == 0)) throw InvalidArgument("torus parameters must be nonnegative and not both 0");
  const std::int64_t n = b * b + b * c + c * c;
  detail::PlanarRing ring;
  ring.units = 6;
  // (x + y w) w = x w + y (w - 1)
  ring.rotate = [](std::array<std::int64_t, 2> v) { return std::array<std::int64_t, 2>{-v[1], v[0] + v[1]}; };
  // z * conj(b + c w) = (x(b+c) + yc) + (yb - xc) w
  ring.key = [=](std::array<std::int64_t, 2> v) {
    return std::array<std::int64_t, 2>{detail::mod(v[0] * (b + c) + v[1] * c, n),
                                       detail::mod(v[1] * b - v[0] * c, n)};
  };
  auto gens = detail::lattice_action(ring, {{2, {1, 0}}, {1, {0, 0}}}, max_points);
  return RotationSystem::from_generators(std::move(gens), std::nullopt, 6 * n);
}

namespace detail {

inline RotationSystem cross_checked(RotationSystem pres, const RotationSystem& lattice,
                                    std::uint64_t expected, const std::string& what) {
  if (pres.order() != expected || lattice.order() != expected) {
    throw ConsistencyError(what + ": presentation route order " + std::to_string(pres.order()) +
                           ", lattice route order " + std::to_string(lattice.order()) +
                           ", expected " + std::to_string(expected));
  }
  if (pres.type() != lattice.type()) throw ConsistencyError(what + ": routes disagree on the type");
  if (is_reflexible(pres) != is_reflexible(lattice)) {
    throw ConsistencyError(what + ": routes disagree on reflexibility");
  }
  return pres;
}

}  // namespace detail

/// {4,4}_(b,c), order 4(b^2+c^2). Built from the presentation and
/// cross-checked against the lattice construction.
inline RotationSystem torus_44(std::int64_t b, std::int64_t c, const Limits& limits = {}) {
  auto pres = rotation_system(torus_44_presentation(b, c), {}, limits);
  auto lat = torus_44_lattice(b, c, limits.max_cosets);
  return detail::cross_checked(std::move(pres), lat, static_cast<std::uint64_t>(4 * (b * b + c * c)),
                               "torus_44(" + std::to_string(b) + "," + std::to_string(c) + ")");
}

/// {3,6}_(b,c), order 6(b^2+bc+c^2).
inline RotationSystem torus_36(std::int64_t b, std::int64_t c, const Limits& limits = {}) {
  auto pres = rotation_system(torus_36_presentation(b, c), {}, limits);
  auto lat = torus_36_lattice(b, c, limits.max_cosets);
  return detail::cross_checked(std::move(pres), lat,
                               static_cast<std::uint64_t>(6 * (b * b + b * c + c * c)),
                               "torus_36(" + std::to_string(b) + "," + std::to_string(c) + ")");
}

/// {6,3}_(b,c) as the dual of {3,6}_(b,c).
inline RotationSystem torus_63(std::int64_t b, std::int64_t c, const Limits& limits = {}) {
  auto d = dual(torus_36(b, c, limits));
  if (d.type() != std::vector<std::uint64_t>{6, 3}) throw ConsistencyError("dual of {3,6} is not of type {6,3}");
  return d;
}

/// Rotation group of the cubic toroid {4,3,3,4}_(s,0,0,0).
inline RotationSystem cubic_toroid_4334(std::int64_t s, const Limits& limits = {}) {
  if (s < 2) throw InvalidArgument("cubic toroid needs s >= 2");
  Presentation p = string_rotation({4, 3, 3, 4});
  // (r0 r1 r2 r3 r4 r3 r2 r1)^s in rotation generators, and its mirror image
  Word t = parse_word("s1 s3 s4^-1 s2^-1", 5).pow(s);
  p.relators.push_back(t);
  p.relators.push_back(enantiomorph_word(t));
  return rotation_system(p, {}, limits);
}

/// PSL(2,p) on the p+1 points of the projective line (p = infinity).
inline PermGroup l2(std::uint64_t p) {
  auto prime = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  };
  if (p < 3 || !prime(p) || p > 2000) throw InvalidArgument("l2 needs an odd prime p (at most 2000)");
  const point_t inf = static_cast<point_t>(p);
  std::vector<point_t> shift(p + 1), invert(p + 1);
  for (point_t z = 0; z < p; ++z) {
    shift[z] = static_cast<point_t>((z + 1) % p);
    // z -> -1/z
    if (z == 0) {
      invert[z] = inf;
    } else {
      std::uint64_t inv = 1;
      for (std::uint64_t e = p - 2, b = z; e; e >>= 1, b = b * b % p) {
        if (e & 1) inv = inv * b % p;
      }
      invert[z] = static_cast<point_t>((p - inv) % p);
    }
  }
  shift[inf] = inf;
  invert[inf] = 0;
  GroupOptions opts;
  opts.known_order = p * (p * p - 1) / 2;
  return PermGroup::from_generators({Permutation(shift), Permutation(invert)}, opts);
}

inline PermGroup symmetric_group(std::size_t n) {
  if (n < 2) throw InvalidArgument("symmetric group needs n >= 2");
  std::vector<point_t> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<point_t>((i + 1) % n);
  std::vector<point_t> tr(n);
  for (std::size_t i = 0; i < n; ++i) tr[i] = static_cast<point_t>(i);
  std::swap(tr[0], tr[1]);
  return PermGroup::from_generators({Permutation(tr), Permutation(cyc)});
}

inline PermGroup alternating_group(std::size_t n) {
  if (n < 3) throw InvalidArgument("alternating group needs n >= 3");
  std::vector<Permutation> gens;
  for (std::size_t i = 2; i < n; ++i) {
    gens.push_back(Permutation::from_cycles(
        n, std::vector<std::vector<point_t>>{{0, 1, static_cast<point_t>(i)}}));
  }
  return PermGroup::from_generators(gens);
}

/// Tuples (s1..s{n-1}) in G with the given orders, (s_i...s_j)^2 = 1 and
/// <s> = G, with s1 running over conjugacy-class representatives (the
/// smallest element of each class). Results are in lexicographic order
/// and cut at `limit`.
inline std::vector<RotationSystem> search_tuples(const PermGroup& g, const std::vector<std::uint64_t>& type,
                                                 std::size_t limit, std::uint64_t max_enum = 1'000'000) {
  if (type.empty()) throw InvalidArgument("search needs a nonempty type");
  std::vector<RotationSystem> out;
  if (limit == 0) return out;
  auto elems = g.elements(max_enum);
  std::sort(elems.begin(), elems.end());
  std::map<std::uint64_t, std::vector<const Permutation*>> by_order;
  for (const auto& x : elems) by_order[element_order(x)].push_back(&x);
  std::vector<std::vector<const Permutation*>> cand;
  for (auto t : type) cand.push_back(by_order[t]);

  // class representatives for s1
  std::vector<const Permutation*> reps;
  {
    std::set<Permutation> seen;
    for (const Permutation* x : cand[0]) {
      if (seen.count(*x)) continue;
      reps.push_back(x);
      std::vector<Permutation> stack{*x};
      seen.insert(*x);
      while (!stack.empty()) {
        Permutation y = stack.back();
        stack.pop_back();
        for (const auto& s : g.generators()) {
          Permutation z = y.conjugate_by(s);
          if (seen.insert(z).second) stack.push_back(z);
        }
      }
    }
  }

  const std::size_t m = type.size();
  std::vector<const Permutation*> tuple(m);
  GroupOptions opts;
  opts.order_bound = g.order();
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (out.size() >= limit) return;
    if (k == m) {
      std::vector<Permutation> sigma;
      for (auto* p : tuple) sigma.push_back(*p);
      if (PermGroup::from_generators(sigma, opts).order() != g.order()) return;
      out.push_back(RotationSystem::from_generators(std::move(sigma), std::nullopt, g.order()));
      return;
    }
    const auto& pool = k == 0 ? reps : cand[k];
    for (const Permutation* x : pool) {
      bool ok = true;
      Permutation prod = *x;
      // (s_i ... s_k)^2 = 1 for every i < k
      for (std::size_t i = k; i-- > 0 && ok;) {
        prod = *tuple[i] * prod;
        ok = (prod * prod).is_identity();
      }
      if (!ok) continue;
      tuple[k] = x;
      extend(k + 1);
      if (out.size() >= limit) return;
    }
  };
  extend(0);
  return out;
}

/// Expected invariants of a named entry, checked before it is served.
struct CatalogMetadata {
  std::uint64_t order = 0;
  std::vector<std::uint64_t> type;
  std::optional<bool> chiral;
  std::optional<bool> intersection_property;
  std::string description;
};

struct CatalogEntry {
  std::string name;
  CatalogMetadata expected;
  std::function<RotationSystem(const Limits&)> build;
};

/// [3,5,3] with both Petrie relators, on the reflections r0..r3 as s1..s4.
inline Presentation eleven_cell_presentation() {
  Presentation r;
  r.rank = 5;
  auto g = [](int i) { return Word::generator(i); };
  for (int i = 1; i <= 4; ++i) r.relators.push_back(Word::generator(i, 2));
  r.relators.push_back((g(1) * g(2)).pow(3));
  r.relators.push_back((g(2) * g(3)).pow(5));
  r.relators.push_back((g(3) * g(4)).pow(3));
  r.relators.push_back((g(1) * g(3)).pow(2));
  r.relators.push_back((g(1) * g(4)).pow(2));
  r.relators.push_back((g(2) * g(4)).pow(2));
  r.relators.push_back((g(1) * g(2) * g(3)).pow(5));
  r.relators.push_back((g(2) * g(3) * g(4)).pow(5));
  return r;
}

namespace detail {

inline RotationSystem eleven_cell_system(const Limits& limits) {
  Presentation r = eleven_cell_presentation();
  auto rho = perm_rep(coset_enumerate(r, {}, limits.max_cosets), r);
  std::vector<Permutation> sigma{rho[0] * rho[1], rho[1] * rho[2], rho[2] * rho[3]};
  return RotationSystem::from_generators(std::move(sigma));
}

inline Presentation with_relators(Presentation p, std::initializer_list<const char*> words) {
  for (const char* w : words) p.relators.push_back(parse_word(w, p.rank));
  return p;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    e.push_back({"s6_rank5",
                 {720, {3, 4, 4, 3}, true, true,
                  "[3,4,4,3]+ with (s2^-1 s3)^2 s2 s3^-1; group S6"},
                 [](const Limits& l) {
                   return rotation_system(
                       detail::with_relators(string_rotation({3, 4, 4, 3}), {"(s2^-1 s3)^2 s2 s3^-1"}), {}, l);
                 }});
    e.push_back({"eleven_cell",
                 {660, {3, 5, 3}, std::nullopt, false,
                  "rotation tuple of the 11-cell inside L2(11)"},
                 detail::eleven_cell_system});
    e.push_back({"star_535",
                 {7200, {5, 3, 5}, false, std::nullopt,
                  "[5,3,5]+ with (s1 s3 s2^-1)^3 and its mirror image; rotation group of the star polytope {5/2,3,5}"},
                 [](const Limits& l) {
                   return rotation_system(
                       detail::with_relators(string_rotation({5, 3, 5}),
                                             {"(s1 s3 s2^-1)^3", "(s1^-1 s3 s2^-1 s1^-2)^3"}),
                       {}, l);
                 }});
    e.push_back({"univ_443_m3",
                 {720, {4, 4, 3}, false, true,
                  "[4,4,3]+ with (s2 s1^-1)^3; universal {{4,4}_(3,0),{4,3}}"},
                 [](const Limits& l) {
                   return rotation_system(detail::with_relators(string_rotation({4, 4, 3}), {"(s2 s1^-1)^3"}), {},
                                          l);
                 }});
    e.push_back({"univ_443_21",
                 {120, {4, 4, 3}, true, true,
                  "[4,4,3]+ with (s2 s1^-1)^2 s1 s2 s1^-2; universal {{4,4}_(2,1),{4,3}}"},
                 [](const Limits& l) {
                   return rotation_system(
                       detail::with_relators(string_rotation({4, 4, 3}), {"(s2 s1^-1)^2 s1 s2 s1^-2"}), {}, l);
                 }});
    e.push_back({"l2_19_535",
                 {3420, {5, 3, 5}, true, true,
                  "first polytopal chiral (5,3,5) tuple in L2(19) found by search_tuples"},
                 [](const Limits& l) {
                   for (auto& sys : search_tuples(l2(19), {5, 3, 5}, 1000, l.max_enum)) {
                     if (!is_reflexible(sys) && intersection_property(sys, l.max_enum).holds) return sys;
                   }
                   throw ConsistencyError("no polytopal chiral (5,3,5) tuple in L2(19)");
                 }});
    return e;
  }();
  return entries;
}

/// A named entry, verified against its metadata.
inline RotationSystem named(const std::string& name, const Limits& limits = {}) {
  for (const auto& entry : catalog_entries()) {
    if (entry.name != name) continue;
    RotationSystem sys = entry.build(limits);
    const auto& m = entry.expected;
    auto fail = [&](const std::string& what) {
      throw ConsistencyError("catalog entry " + name + " fails its metadata check: " + what);
    };
    if (sys.order() != m.order) fail("order " + std::to_string(sys.order()));
    if (sys.type() != m.type) fail("type");
    if (m.chiral && is_reflexible(sys) == *m.chiral) fail("chirality");
    if (m.intersection_property &&
        intersection_property(sys, limits.max_enum).holds != *m.intersection_property) {
      fail("intersection property");
    }
    return sys;
  }
  throw InvalidArgument("unknown catalog entry '" + name + "'");
}

}  // namespace chiral
