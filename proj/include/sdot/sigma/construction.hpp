#pragma once

#include <memory>
#include <vector>

#include "sdot/sigma/exact_nerve.hpp"
#include "sdot/sigma/probe.hpp"
#include "sdot/simpl/multi.hpp"
#include "sdot/waldhausen/grid.hpp"
#include "sdot/waldhausen/iterated.hpp"

namespace sdot::sigma {

// S_k(X) = Map(PΔ[k], X) for k ≤ N; needs X of degree N+1.
struct SigmaSConstruction {
  SigmaPtr target;
  std::vector<std::shared_ptr<const MappingSpace>> levels;
  simpl::TruncSimplicialSet simplicial;
};
SigmaSConstruction s_construction_sigma(SigmaPtr x, int N);

// S^(n)_{k_1..k_n}(X) = Map(PΔ[k_1]×…×PΔ[k_n], X); needs X of degree ∑bounds+1.
struct SigmaIterated {
  SigmaPtr target;
  std::vector<std::shared_ptr<const MappingSpace>> levels;  // MultiSimplicialSet level order
  simpl::MultiSimplicialSet multi;
};
SigmaIterated s_iterated_sigma(SigmaPtr x, const std::vector<int>& bounds);

// Maps out of a product probe into an exact nerve, read as exact functors
// Ar[k_1]×…×Ar[k_n] -> E, and back.
fincat::Diagram map_to_grid(const ExactNerve& nv, const MappingSpace& ms, std::size_t m, const fincat::Shape& shape);
std::vector<CellId> grid_to_generators(const ExactNerve& nv, const MappingSpace& ms, const fincat::Diagram& g,
                                       const fincat::Shape& shape);

struct BridgeLevel {
  std::vector<int> degree;
  std::uint64_t maps = 0, grids = 0;
  bool well_defined = true;   // every map lands on a grid and every grid on a map
  bool bijective = true;      // the two assignments are inverse
  std::vector<CellId> to_grid;  // map index -> grid index
};

struct BridgeReport {
  std::vector<BridgeLevel> levels;
  bool natural = true;  // commutes with every face and degeneracy
  std::vector<std::string> problems;
  bool ok() const;
};

// S_k(Nex E) against S_k(E), both with the zero policy of the nerve.
BridgeReport sigma_bridge(const ExactNerve& nv, const SigmaSConstruction& sc, const waldhausen::SConstruction& grids);
BridgeReport sigma_bridge(const ExactNerve& nv, const SigmaIterated& si, const waldhausen::IteratedS& grids);

// Gives the Σ-side construction the grid isomorphisms through the bridge.
void transport_isos(SigmaSConstruction& sc, const waldhausen::SConstruction& grids, const BridgeReport& bridge);

}  // namespace sdot::sigma
