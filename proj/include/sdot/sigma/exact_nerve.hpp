#pragma once

#include <memory>
#include <vector>

#include "sdot/fincat/diagram.hpp"
#include "sdot/sigma/sigma_set.hpp"

namespace sdot::sigma {

using fincat::DiagramFamily;
using fincat::ExactPtr;
using fincat::ZeroPolicy;

// Cells at [a,b] are exact functors [a]×[b] -> E (rows mono, columns epi,
// squares bicartesian); augmentation cells are zero objects.
struct ExactNerve {
  ExactPtr exact;
  ZeroPolicy policy = ZeroPolicy::canonical;
  std::vector<std::shared_ptr<const DiagramFamily>> levels;  // by SigmaSet::index
  std::vector<ObjId> zeros;
  std::shared_ptr<SigmaSet> set;
  const DiagramFamily& level(int a, int b) const { return *levels[SigmaSet::index(a, b)]; }
};

std::shared_ptr<const ExactNerve> exact_nerve(ExactPtr e, int N, ZeroPolicy policy = ZeroPolicy::canonical);

}  // namespace sdot::sigma
