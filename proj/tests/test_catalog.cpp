#include <catch2/catch_amalgamated.hpp>

#include "chiral/catalog.hpp"
#include "chiral/chirality.hpp"
#include "chiral/mix.hpp"

using namespace chiral;

using Type = std::vector<std::uint64_t>;

TEST_CASE("torus order formulas and chirality", "[catalog][property]") {
  for (std::int64_t b = 0; b <= 5; ++b) {
    for (std::int64_t c = 0; c <= b; ++c) {
      if (b == 0 && c == 0) continue;
      CAPTURE(b, c);
      auto t44 = torus_44(b, c);
      auto l44 = torus_44_lattice(b, c);
      auto t36 = torus_36(b, c);
      auto l36 = torus_36_lattice(b, c);
      REQUIRE(t44.order() == static_cast<std::uint64_t>(4 * (b * b + c * c)));
      REQUIRE(l44.order() == t44.order());
      REQUIRE(t36.order() == static_cast<std::uint64_t>(6 * (b * b + b * c + c * c)));
      REQUIRE(l36.order() == t36.order());
      REQUIRE(t44.type() == Type{4, 4});
      REQUIRE(t36.type() == Type{3, 6});
      const bool chiral = b * c * (b - c) != 0;
      REQUIRE(is_reflexible(t44) == !chiral);
      REQUIRE(is_reflexible(l44) == !chiral);
      REQUIRE(is_reflexible(t36) == !chiral);
      REQUIRE(is_reflexible(l36) == !chiral);
      REQUIRE((chirality_index(t44) > 1) == chiral);
      // the lattice route lands on the same handedness
      REQUIRE(is_equivalent(t44, l44));
      REQUIRE(is_equivalent(t36, l36));
      auto t63 = torus_63(b, c);
      REQUIRE(t63.type() == Type{6, 3});
      REQUIRE(t63.order() == t36.order());
    }
  }
}

TEST_CASE("swapped torus parameters give the mirror image", "[catalog][property]") {
  for (std::int64_t b = 1; b <= 5; ++b) {
    for (std::int64_t c = 1; c < b; ++c) {
      CAPTURE(b, c);
      auto x = torus_44(b, c);
      auto y = torus_44(c, b);
      REQUIRE(is_equivalent(enantiomorph(x), y));
      REQUIRE(is_reflexible(x) == is_reflexible(y));
      REQUIRE(mix(x, y).order() == x.order() * chirality_index(x));
      REQUIRE(is_equivalent(enantiomorph(torus_36(b, c)), torus_36(c, b)));
    }
  }
}

TEST_CASE("torus examples", "[catalog]") {
  REQUIRE(torus_44(2, 1).order() == 20);
  REQUIRE_FALSE(is_reflexible(torus_44(2, 1)));
  auto t30 = torus_44(3, 0);
  REQUIRE(t30.order() == 36);
  REQUIRE(is_reflexible(t30));
  // (C3 x C3) : C4, translations form the abelian normal subgroup of index 4
  REQUIRE(normal_closure(t30.group(), {t30.evaluate(parse_word("s2 s1^-1", 3))}).order() == 9);
  REQUIRE(torus_44(1, 1).order() == 8);
  REQUIRE(is_reflexible(torus_44(1, 1)));
  REQUIRE(torus_63(2, 0).order() == 24);
  REQUIRE(torus_36(1, 1).order() == 18);
  REQUIRE(is_reflexible(torus_36(1, 1)));
  REQUIRE(torus_63(2, 1).order() == 42);
  REQUIRE_FALSE(is_reflexible(torus_63(2, 1)));
  REQUIRE_THROWS_AS(torus_44(0, 0), InvalidArgument);
  REQUIRE_THROWS_AS(torus_36(-1, 2), InvalidArgument);
}

TEST_CASE("string rotation groups", "[catalog]") {
  REQUIRE(rotation_system(string_rotation({3, 3})).order() == 12);
  REQUIRE(rotation_system(string_rotation({3, 5})).order() == 60);
  REQUIRE(rotation_system(string_rotation({3, 4, 3})).order() == 576);
  REQUIRE(string_rotation({5, 3, 5}).relators.size() == 6);
  REQUIRE_THROWS_AS(string_rotation({3, 1}), InvalidArgument);
  REQUIRE_THROWS_AS(rotation_system(string_rotation({3, 7}), {}, Limits{2000, 1'000'000, 10'000}), ResourceError);
}

TEST_CASE("named entries", "[catalog]") {
  auto s6 = named("s6_rank5");
  REQUIRE(s6.order() == 720);
  REQUIRE(s6.type() == Type{3, 4, 4, 3});
  REQUIRE_FALSE(is_reflexible(s6));
  auto eleven = named("eleven_cell");
  REQUIRE(eleven.order() == 660);
  REQUIRE(eleven.rank() == 4);
  REQUIRE_FALSE(intersection_property(eleven).holds);
  REQUIRE(named("star_535").order() == 7200);
  REQUIRE(named("univ_443_m3").order() == 720);
  REQUIRE(named("univ_443_21").order() == 120);
  REQUIRE(named("l2_19_535").order() == 3420);
  REQUIRE_THROWS_AS(named("no_such_entry"), InvalidArgument);
  for (const auto& e : catalog_entries()) {
    CAPTURE(e.name);
    REQUIRE(named(e.name).order() == e.expected.order);
  }
  auto toroid = cubic_toroid_4334(2);
  REQUIRE(toroid.order() == 3072);
  REQUIRE(toroid.type() == Type{4, 3, 3, 4});
  REQUIRE(is_reflexible(toroid));
}

TEST_CASE("L2(p)", "[catalog]") {
  REQUIRE(l2(5).order() == 60);
  REQUIRE(l2(7).order() == 168);
  REQUIRE(l2(11).order() == 660);
  REQUIRE(l2(11).degree() == 12);
  REQUIRE(is_perfect(l2(7)));
  REQUIRE_THROWS_AS(l2(9), InvalidArgument);
  REQUIRE_THROWS_AS(l2(2), InvalidArgument);
  REQUIRE(symmetric_group(5).order() == 120);
  REQUIRE(alternating_group(6).order() == 360);
}

TEST_CASE("tuple search", "[catalog]") {
  auto hurwitz = search_tuples(l2(7), {3, 7}, 100);
  REQUIRE_FALSE(hurwitz.empty());
  for (const auto& sys : hurwitz) {
    REQUIRE(sys.order() == 168);
    REQUIRE(sys.type() == Type{3, 7});
    REQUIRE(is_reflexible(sys));
  }
  auto cells = search_tuples(l2(11), {3, 5, 3}, 100);
  REQUIRE_FALSE(cells.empty());
  bool saw_eleven_cell = false;
  for (const auto& sys : cells) {
    saw_eleven_cell = saw_eleven_cell || !intersection_property(sys).holds;
    for (int i = 1; i < sys.rank(); ++i) {
      for (int j = i + 1; j < sys.rank(); ++j) REQUIRE(sys.evaluate(kappa_word(i, j).pow(2)).is_identity());
    }
  }
  REQUIRE(saw_eleven_cell);
  REQUIRE(search_tuples(alternating_group(5), {2, 2}, 10).empty());
  REQUIRE(search_tuples(l2(7), {3, 7}, 2).size() == 2);
  // deterministic order
  auto again = search_tuples(l2(7), {3, 7}, 100);
  REQUIRE(again.size() == hurwitz.size());
  for (std::size_t i = 0; i < again.size(); ++i) REQUIRE(again[i].sigma() == hurwitz[i].sigma());
}
