#pragma once

// Brute-force references used only by the tests. Nothing here touches a
// stabilizer chain.

#include <deque>
#include <set>
#include <vector>

#include "chiral/perm.hpp"

namespace chiral::testing {

/// All elements of <gens>, by breadth-first closure under right
/// multiplication.
inline std::set<Permutation> closure(const std::vector<Permutation>& gens) {
  std::set<Permutation> seen;
  if (gens.empty()) return seen;
  Permutation id(gens.front().degree());
  std::deque<Permutation> queue{id};
  seen.insert(id);
  while (!queue.empty()) {
    Permutation g = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      Permutation h = g * s;
      if (seen.insert(h).second) queue.push_back(h);
    }
  }
  return seen;
}

inline std::set<Permutation> set_intersection(const std::set<Permutation>& a,
                                              const std::set<Permutation>& b) {
  std::set<Permutation> out;
  for (const auto& x : a) {
    if (b.count(x) != 0) out.insert(x);
  }
  return out;
}

/// Random permutation from a seeded engine.
template <class Rng>
Permutation random_permutation(std::size_t degree, Rng& rng) {
  std::vector<point_t> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<point_t>(i);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

}  // namespace chiral::testing
