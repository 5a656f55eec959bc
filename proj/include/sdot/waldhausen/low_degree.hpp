#pragma once

#include <string>
#include <vector>

#include "sdot/fincat/groupoid.hpp"
#include "sdot/waldhausen/grid.hpp"

namespace sdot::waldhausen {

// A ↣ B ↠ C over the canonical zero.
std::shared_ptr<const DiagramFamily> exact_sequences(ExactPtr e, ZeroPolicy policy = ZeroPolicy::all);
std::shared_ptr<const DiagramFamily> bicartesian_squares(ExactPtr e, ZeroPolicy policy = ZeroPolicy::all);

struct Identification {
  std::string name;
  std::uint64_t grid_count = 0, target_count = 0;
  fincat::EquivalenceReport forward, backward;
  bool roundtrip = true;      // target -> S_k -> target is the identity, S_k -> target -> S_k is isomorphic to it
  bool require_bijection = false;
  bool objects_bijective = true;
  bool pass() const {
    return forward.equivalence() && backward.equivalence() && roundtrip && (!require_bijection || objects_bijective);
  }
};

struct LowDegreeReport {
  std::vector<Identification> items;  // S0, S1, S2, S3
  bool pass() const;
};

LowDegreeReport low_degree_identifications(ExactPtr e, ZeroPolicy policy = ZeroPolicy::all);

}  // namespace sdot::waldhausen
