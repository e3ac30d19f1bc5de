#pragma once

// Chirality groups, chirality index, smallest regular covers and the
// combined classification report.

#include <optional>
#include <string>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/mix.hpp"
#include "chiral/perm.hpp"
#include "chiral/rotation.hpp"

namespace chiral {

/// X(P) as the kernel of the first projection of mix(P, enantiomorph(P)),
/// read on the second component.
inline PermGroup chirality_group_kernel(const RotationSystem& sys) {
  RotationSystem e = enantiomorph(sys);
  GroupOptions opts;
  opts.order_bound = detail::checked_mul(sys.order(), sys.order());
  PermGroup cover = paired_group(sys.sigma(), e.sigma(), opts);
  // a base of the first component fixes exactly the kernel
  PermGroup k = cover.pointwise_stabilizer(sys.group().base());
  const std::size_t d = sys.degree();
  std::vector<Permutation> gens;
  for (const auto& g : k.generators()) {
    Permutation r = restrict_to(g, d, d);
    if (!r.is_identity()) gens.push_back(std::move(r));
  }
  return sys.group().subgroup(gens);
}

/// X(P) as the normal closure of the enantiomorphic images of the relators.
/// Needs a presentation.
inline PermGroup chirality_group_relators(const RotationSystem& sys) {
  if (!sys.provenance()) throw InvalidArgument("relator method needs a presentation");
  std::vector<Permutation> gens;
  for (const auto& r : sys.provenance()->relators) {
    gens.push_back(sys.evaluate(enantiomorph_word(r)));
  }
  return normal_closure(sys.group(), gens);
}

struct ChiralityGroupResult {
  PermGroup group;
  /// Whether the relator method was run and agreed (nullopt without a presentation).
  std::optional<bool> method_agreement;
};

/// Kernel method, cross-checked against the relator method when possible.
inline ChiralityGroupResult chirality_group_checked(const RotationSystem& sys) {
  PermGroup x = chirality_group_kernel(sys);
  std::optional<bool> agree;
  if (sys.provenance()) {
    PermGroup y = chirality_group_relators(sys);
    if (!(x == y)) {
      throw ConsistencyError("chirality group methods disagree: kernel order " +
                             std::to_string(x.order()) + ", relator closure order " +
                             std::to_string(y.order()));
    }
    agree = true;
  }
  if (!is_normal_in(x, sys.group())) throw ConsistencyError("chirality group is not normal");
  return {x, agree};
}

inline PermGroup chirality_group(const RotationSystem& sys) {
  return chirality_group_checked(sys).group;
}

inline std::uint64_t chirality_index(const RotationSystem& sys) {
  return chirality_group(sys).order();
}

inline bool is_totally_chiral(const RotationSystem& sys) {
  return chirality_index(sys) == sys.order();
}

/// mix(P, enantiomorph(P)) together with P.
struct CoverSystem {
  MixSystem cover;
  RotationSystem base;
  std::uint64_t kappa = 1;
};

/// The smallest reflexible cover; asserts |cover| = |G| * kappa and that
/// the cover is reflexible.
inline CoverSystem smallest_regular_cover(const RotationSystem& sys) {
  const std::uint64_t kappa = chirality_index(sys);
  MixSystem cover = mix(sys, enantiomorph(sys));
  if (cover.order() != detail::checked_mul(sys.order(), kappa)) {
    throw ConsistencyError("cover order " + std::to_string(cover.order()) + " differs from |G|*kappa");
  }
  if (kappa == sys.order() && cover.order() != detail::checked_mul(sys.order(), sys.order())) {
    throw ConsistencyError("totally chiral cover is not the direct square");
  }
  if (!is_reflexible(cover.base())) throw ConsistencyError("smallest regular cover is chiral");
  return {std::move(cover), sys, kappa};
}

/// Isomorphism-invariant summary of a group.
struct GroupFingerprint {
  std::uint64_t order = 1;
  bool abelian = true;
  bool cyclic = true;
  bool perfect = true;

  /// A name for the few small cases that the invariants settle.
  std::string name() const {
    if (order == 1) return "1";
    if (cyclic) return "C" + std::to_string(order);
    if (order == 4) return "C2xC2";
    if (!abelian && order == 6) return "S3";
    return "";
  }
};

inline GroupFingerprint fingerprint(const PermGroup& g) {
  GroupFingerprint f;
  f.order = g.order();
  f.abelian = g.is_abelian();
  f.cyclic = false;
  if (f.abelian) {
    // an abelian group is cyclic iff some element attains the exponent = order
    std::uint64_t exponent = 1;
    for (const auto& x : g.strong_generators()) exponent = std::lcm(exponent, element_order(x));
    f.cyclic = exponent == f.order;
  }
  f.perfect = f.order == 1 || is_perfect(g);
  return f;
}

enum class Status { reflexible, chiral, not_polytopal, pre_polytopal };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::reflexible: return "reflexible";
    case Status::chiral: return "chiral";
    case Status::not_polytopal: return "not-polytopal";
    case Status::pre_polytopal: return "pre-polytopal";
  }
  return "";
}

struct ChiralityReport {
  Status status = Status::reflexible;
  std::uint64_t order = 0;
  std::vector<std::uint64_t> type;
  bool degenerate_type = false;
  IntersectionVerdict intersection;
  bool reflexible = true;
  std::uint64_t kappa = 1;
  std::optional<PermGroup> chirality_group;
  std::optional<GroupFingerprint> chirality_fingerprint;
  bool totally_chiral = false;
  std::optional<bool> method_agreement;
  /// Set for mixes only.
  std::optional<bool> direct_product;
  std::vector<std::string> notes;
};

struct ClassifyOptions {
  std::uint64_t max_enum = 1'000'000;
  bool chirality_group = true;
};

/// Status: pre-polytopal if some sigma_i is trivial, not-polytopal if the
/// intersection property fails, otherwise reflexible or chiral.
inline ChiralityReport classify(const RotationSystem& sys, const ClassifyOptions& opts = {}) {
  ChiralityReport r;
  r.order = sys.order();
  r.type = sys.type();
  r.degenerate_type = sys.degenerate();
  if (r.degenerate_type) r.notes.push_back("degenerate type: some generator order is below its nominal value");
  r.notes.push_back("Gamma^I for I = {-1..n} minus {i} is generated by the union of {s_j : j != i, i+1} and {s_i s_{i+1}}");
  r.reflexible = is_reflexible(sys);
  r.intersection = intersection_property(sys, opts.max_enum);
  if (opts.chirality_group) {
    auto x = chirality_group_checked(sys);
    r.kappa = x.group.order();
    r.method_agreement = x.method_agreement;
    r.chirality_fingerprint = fingerprint(x.group);
    r.chirality_group = std::move(x.group);
    if ((r.kappa == 1) != r.reflexible) {
      throw ConsistencyError("chirality index and reflexibility test disagree");
    }
    r.totally_chiral = r.kappa == r.order && !r.reflexible;
  }
  bool trivial_generator = false;
  for (auto t : r.type) trivial_generator = trivial_generator || t == 1;
  if (trivial_generator) {
    r.status = Status::pre_polytopal;
  } else if (!r.intersection.holds) {
    r.status = Status::not_polytopal;
  } else {
    r.status = r.reflexible ? Status::reflexible : Status::chiral;
  }
  return r;
}

inline ChiralityReport classify_mix(const MixSystem& m, const ClassifyOptions& opts = {}) {
  ChiralityReport r = classify(m.base(), opts);
  r.direct_product = is_direct_product(m);
  return r;
}

struct MixChiralityBound {
  std::uint64_t kappa_p = 1, kappa_q = 1, kappa_mix = 1;
  /// |X(P◊Q)| divides |X(P)| (meaningful when Q is reflexible).
  bool divides_p = true;
  /// |X(P◊Q)| divides |X(P)| * |X(Q)|.
  bool divides_product = true;
  bool q_reflexible = true;
  bool mix_reflexible() const { return kappa_mix == 1; }
};

/// Chirality index of P◊Q against the bounds from P and Q. Throws
/// ConsistencyError when Q is reflexible and the divisibility fails.
inline MixChiralityBound mix_chirality_bound(const RotationSystem& p, const RotationSystem& q) {
  MixChiralityBound b;
  b.kappa_p = chirality_index(p);
  b.kappa_q = chirality_index(q);
  b.q_reflexible = b.kappa_q == 1;
  b.kappa_mix = chirality_index(mix(p, q).base());
  b.divides_p = b.kappa_p % b.kappa_mix == 0;
  b.divides_product = detail::checked_mul(b.kappa_p, b.kappa_q) % b.kappa_mix == 0;
  if (!b.divides_product || (b.q_reflexible && !b.divides_p)) {
    throw ConsistencyError("chirality index of the mix violates its bound");
  }
  return b;
}

}  // namespace chiral
