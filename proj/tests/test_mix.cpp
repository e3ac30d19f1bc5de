#include <numeric>

#include <catch2/catch_amalgamated.hpp>

#include "chiral/chirality.hpp"
#include "chiral/mix.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace chiral;
using chiral::testing::closure;
using chiral::testing::corpus;
using chiral::testing::corpus_system;
using chiral::testing::platonic;

using Type = std::vector<std::uint64_t>;

TEST_CASE("mix orders", "[mix]") {
  auto a = torus_44(2, 1);
  auto b = torus_44(3, 0);
  auto t = platonic({3, 3});
  REQUIRE(mix(a, a).order() == 20);
  auto ab = mix(a, b);
  REQUIRE(ab.order() == 180);
  REQUIRE(ab.base().degree() == a.degree() + b.degree());
  REQUIRE(closure(ab.tau()).size() == 180);
  auto at = mix(a, t);
  REQUIRE(at.order() == 240);
  REQUIRE(mix_type(at) == Type{12, 12});
  REQUIRE(mix_type(ab) == Type{4, 4});
  REQUIRE(mix_type(mix(a, a)) == a.type());
  REQUIRE_THROWS_AS(mix(a, platonic({3, 3, 3})), InvalidArgument);
}

TEST_CASE("direct products", "[mix]") {
  auto a = torus_44(2, 1);
  REQUIRE_FALSE(is_direct_product(mix(a, a)));
  REQUIRE(is_direct_product(mix(a, platonic({3, 3}))));
  REQUIRE_FALSE(is_direct_product(mix(a, torus_44(3, 0))));
}

TEST_CASE("mix invariants over the corpus", "[mix][property]") {
  for (const auto& x : corpus()) {
    for (const auto& y : corpus()) {
      if (x.sys.rank() != y.sys.rank()) continue;
      if (x.sys.order() * y.sys.order() > 200'000) continue;
      CAPTURE(x.name, y.name);
      auto m = mix(x.sys, y.sys);
      auto m2 = mix(y.sys, x.sys);
      REQUIRE(m.order() == m2.order());
      REQUIRE(mix_type(m) == mix_type(m2));
      REQUIRE((x.sys.order() * y.sys.order()) % m.order() == 0);
      // projections are onto
      std::vector<Permutation> left, right;
      for (const auto& g : m.tau()) {
        left.push_back(m.project_left(g));
        right.push_back(m.project_right(g));
      }
      REQUIRE(PermGroup::from_generators(left).order() == x.sys.order());
      REQUIRE(PermGroup::from_generators(right).order() == y.sys.order());
      for (std::size_t j = 0; j < m.tau().size(); ++j) {
        REQUIRE(element_order(m.tau()[j]) == std::lcm(x.sys.type()[j], y.sys.type()[j]));
      }
    }
  }
}

TEST_CASE("mix with the enantiomorph detects reflexibility", "[mix][property]") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    bool collapses = mix(e.sys, enantiomorph(e.sys)).order() == e.sys.order();
    REQUIRE(collapses == is_reflexible(e.sys));
  }
}

TEST_CASE("sub-mixes", "[mix]") {
  const auto& p = corpus_system("univ_443_21");
  const auto& q = corpus_system("univ_443_m3");
  REQUIRE(facet(p).order() == 20);
  REQUIRE(facet(q).order() == 36);
  auto m = mix(p, q);
  auto f = facet_subsystem(m);
  REQUIRE(f.order() == 180);
  REQUIRE(f.rank() == 3);
  // consistent with {4,4}_(6,3) up to handedness
  REQUIRE((is_equivalent(f.base(), torus_44(6, 3)) || is_equivalent(f.base(), torus_44(3, 6))));
  REQUIRE_FALSE(is_reflexible(f.base()));
  auto v = vertex_subsystem(m);
  REQUIRE(v.order() == 24);
  REQUIRE(v.base().type() == Type{4, 3});
  REQUIRE(quotient_criterion(m.base(), p, Side::vertex));
  REQUIRE(quotient_criterion(m.base(), q, Side::vertex));
  // the mix inherits the intersection property from the injective vertex side
  REQUIRE(intersection_property(m.base()).holds);

  auto d = mix(p, p);
  REQUIRE(facet_subsystem(d).order() == facet(p).order());
}

TEST_CASE("classify_mix", "[mix]") {
  auto a = torus_44(2, 1);
  auto r1 = classify_mix(mix(a, torus_44(3, 0)));
  REQUIRE(r1.status == Status::chiral);
  REQUIRE(r1.type == Type{4, 4});
  REQUIRE(r1.order == 180);
  REQUIRE(r1.direct_product == false);

  auto r2 = classify_mix(mix(a, platonic({3, 3})));
  REQUIRE(r2.status == Status::chiral);
  REQUIRE(r2.type == Type{12, 12});
  REQUIRE(r2.direct_product == true);
  REQUIRE(r2.intersection.holds);

  auto t = platonic({3, 3});
  auto r3 = classify_mix(mix(t, t));
  REQUIRE(r3.status == Status::reflexible);
  REQUIRE(r3.kappa == 1);
}

TEST_CASE("direct-product mixes of polytopal systems stay polytopal", "[mix][property]") {
  // components with no common nontrivial quotient
  std::vector<std::pair<const char*, const char*>> pairs{
      {"torus44(2,1)", "[3,3]+"}, {"torus44(3,1)", "[3,5]+"}, {"torus63(2,1)", "[3,5]+"}};
  for (auto [x, y] : pairs) {
    auto m = mix(corpus_system(x), corpus_system(y));
    CAPTURE(x, y);
    REQUIRE(is_direct_product(m));
    REQUIRE(intersection_property(m.base()).holds);
  }
}
