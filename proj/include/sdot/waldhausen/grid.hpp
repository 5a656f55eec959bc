#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sdot/fincat/diagram.hpp"
#include "sdot/fincat/groupoid.hpp"
#include "sdot/simpl/simplicial.hpp"
#include "sdot/waldhausen/seq.hpp"

namespace sdot::waldhausen {

using fincat::DiagramGroupoid;

// Exact functors Ar[k] -> E.
std::shared_ptr<const DiagramFamily> s_disc(ExactPtr e, int k, ZeroPolicy policy = ZeroPolicy::all,
                                            fincat::CompletionCache* cache = nullptr);

// Ar[k-1] -> Ar[k] skipping i, and Ar[k+1] -> Ar[k] repeating i.
fincat::ShapeMap coface_map(int k, int i);
fincat::ShapeMap codegeneracy_map(int k, int i);
Diagram s_face(const fincat::FinCategory& c, const Diagram& g, int k, int i);
Diagram s_degeneracy(const fincat::FinCategory& c, const Diagram& g, int k, int i);

struct SConstruction {
  ExactPtr exact;
  ZeroPolicy policy = ZeroPolicy::all;
  std::vector<std::shared_ptr<const DiagramFamily>> levels;
  std::vector<std::shared_ptr<const DiagramGroupoid>> groupoids;
  simpl::TruncSimplicialSet simplicial;  // carries the grid isomorphisms
};

SConstruction s_simplicial(ExactPtr e, int N, ZeroPolicy policy = ZeroPolicy::all);
std::shared_ptr<const DiagramGroupoid> s_groupoid(ExactPtr e, int k, ZeroPolicy policy = ZeroPolicy::all);

// (A_01 ↣ … ↣ A_0k)
Diagram row0(const Diagram& g, int k);
// Grid over the chain, filled row by row with chosen pushouts.
Diagram complete_seq_to_grid(const ProtoExactStructure& e, const Diagram& chain, TieBreak tie = TieBreak::least,
                             fincat::CompletionCache* cache = nullptr);

fincat::EquivalenceReport row0_equivalence(ExactPtr e, int k, ZeroPolicy policy = ZeroPolicy::all);

// Backtracking count against (chain, canonical completion) pairs, each
// multiplied by the number of grids isomorphic to the completion relative to row 0.
struct EnumerationAudit {
  std::uint64_t backtracking = 0;
  std::uint64_t chains = 0;
  std::uint64_t completions_total = 0;
  bool completions_in_family = true;
  bool row0_roundtrip = true;
  bool stabilizers_trivial = true;
  bool ok() const {
    return completions_in_family && row0_roundtrip && stabilizers_trivial && backtracking == completions_total;
  }
};
EnumerationAudit enumeration_cross_check(ExactPtr e, int k, ZeroPolicy policy = ZeroPolicy::all);

// Staircase rendering of a grid, one row per line.
std::string staircase(const ProtoExactStructure& e, int k, const Diagram& g);

}  // namespace sdot::waldhausen
