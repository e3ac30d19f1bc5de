#pragma once

// The fixed set of systems that property-style tests sweep over.

#include <string>
#include <vector>

#include "chiral/catalog.hpp"

namespace chiral::testing {

struct CorpusEntry {
  std::string name;
  RotationSystem sys;
  bool simple_group = false;
};

inline RotationSystem platonic(std::vector<std::uint64_t> type) {
  return rotation_system(string_rotation(type));
}

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> e;
    e.push_back({"torus44(2,1)", torus_44(2, 1)});
    e.push_back({"torus44(3,1)", torus_44(3, 1)});
    e.push_back({"torus44(3,0)", torus_44(3, 0)});
    e.push_back({"torus44(1,1)", torus_44(1, 1)});
    e.push_back({"torus36(2,1)", torus_36(2, 1)});
    e.push_back({"torus36(1,1)", torus_36(1, 1)});
    e.push_back({"torus63(2,1)", torus_63(2, 1)});
    e.push_back({"[3,3]+", platonic({3, 3})});
    e.push_back({"[4,3]+", platonic({4, 3})});
    e.push_back({"[3,5]+", platonic({3, 5}), true});
    e.push_back({"[3,3,3]+", platonic({3, 3, 3}), true});
    e.push_back({"[3,4,3]+", platonic({3, 4, 3})});
    e.push_back({"univ_443_m3", named("univ_443_m3")});
    e.push_back({"univ_443_21", named("univ_443_21")});
    e.push_back({"star_535", named("star_535")});
    e.push_back({"eleven_cell", named("eleven_cell"), true});
    e.push_back({"l2_19_535", named("l2_19_535"), true});
    e.push_back({"s6_rank5", named("s6_rank5")});
    e.push_back({"[3,3,3,3]+", platonic({3, 3, 3, 3}), true});
    return e;
  }();
  return entries;
}

inline const RotationSystem& corpus_system(const std::string& name) {
  for (const auto& e : corpus()) {
    if (e.name == name) return e.sys;
  }
  throw InvalidArgument("no corpus entry " + name);
}

}  // namespace chiral::testing
