#pragma once

// The mix of two rotation systems: tau_j = (sigma_j, sigma_j') acting on the
// disjoint union of the component domains.

#include <numeric>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/perm.hpp"
#include "chiral/rotation.hpp"

namespace chiral {

class MixSystem {
 public:
  MixSystem(RotationSystem base, RotationSystem left, RotationSystem right)
      : base_(std::move(base)), left_(std::move(left)), right_(std::move(right)) {}

  /// The mix itself, generated by tau_1..tau_{n-1}.
  const RotationSystem& base() const noexcept { return base_; }
  const RotationSystem& left() const noexcept { return left_; }
  const RotationSystem& right() const noexcept { return right_; }
  const std::vector<Permutation>& tau() const noexcept { return base_.sigma(); }
  std::uint64_t order() const { return base_.order(); }
  int rank() const noexcept { return base_.rank(); }

  /// tau restricted to the left (right) component domain.
  Permutation project_left(const Permutation& g) const { return restrict_to(g, 0, left_.degree()); }
  Permutation project_right(const Permutation& g) const {
    return restrict_to(g, left_.degree(), right_.degree());
  }

 private:
  RotationSystem base_;
  RotationSystem left_;
  RotationSystem right_;
};

/// Mix of two systems of equal rank.
inline MixSystem mix(const RotationSystem& left, const RotationSystem& right) {
  if (left.rank() != right.rank()) {
    throw InvalidArgument("mix needs equal ranks (" + std::to_string(left.rank()) + " and " +
                          std::to_string(right.rank()) + ")");
  }
  std::vector<Permutation> tau;
  for (int j = 1; j < left.rank(); ++j) tau.push_back(direct_sum(left.s(j), right.s(j)));
  const std::uint64_t bound = detail::checked_mul(left.order(), right.order());
  auto base = RotationSystem::from_generators(std::move(tau), std::nullopt, std::nullopt, bound);

  const std::uint64_t l = std::lcm(left.order(), right.order());
  if (bound % base.order() != 0 || base.order() % l != 0) {
    throw ConsistencyError("mix order " + std::to_string(base.order()) +
                           " is incompatible with the component orders");
  }
  for (int j = 1; j < left.rank(); ++j) {
    if (base.type()[j - 1] != std::lcm(left.type()[j - 1], right.type()[j - 1])) {
      throw ConsistencyError("mix generator order is not the lcm of the component orders");
    }
  }
  return MixSystem(std::move(base), left, right);
}

/// |mix| = |left| * |right|.
inline bool is_direct_product(const MixSystem& m) {
  return m.order() == detail::checked_mul(m.left().order(), m.right().order());
}

/// Marked-tuple equivalence: s_j -> s_j' extends to an isomorphism, i.e.
/// the mix collapses onto both components.
inline bool is_equivalent(const RotationSystem& a, const RotationSystem& b) {
  if (a.rank() != b.rank() || a.order() != b.order()) return false;
  GroupOptions opts;
  opts.order_bound = detail::checked_mul(a.order(), b.order());
  return paired_group(a.sigma(), b.sigma(), opts).order() == a.order();
}

inline std::vector<std::uint64_t> mix_type(const MixSystem& m) { return m.base().type(); }

/// The sub-mix on tau_1..tau_{n-2}.
inline MixSystem facet_subsystem(const MixSystem& m) {
  return mix(facet(m.left()), facet(m.right()));
}

/// The sub-mix on tau_2..tau_{n-1}.
inline MixSystem vertex_subsystem(const MixSystem& m) {
  return mix(vertex_figure(m.left()), vertex_figure(m.right()));
}

}  // namespace chiral
