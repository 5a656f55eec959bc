#pragma once

#include <memory>
#include <vector>

#include "sdot/simpl/multi.hpp"
#include "sdot/waldhausen/grid.hpp"

namespace sdot::waldhausen {

using fincat::MultiConvention;

// Exact functors Ar[k_1]×…×Ar[k_n] -> E.
std::shared_ptr<const DiagramFamily> s_iterated_disc(ExactPtr e, const std::vector<int>& ks,
                                                     ZeroPolicy policy = ZeroPolicy::all,
                                                     fincat::CompletionCache* cache = nullptr,
                                                     MultiConvention conv = MultiConvention::waldhausen);

// Ar[..k_t-1..] -> Ar[..k_t..] skipping i on axis t, and the codegeneracy.
fincat::ShapeMap multi_coface_map(const std::vector<int>& ks, int axis, int i);
fincat::ShapeMap multi_codegeneracy_map(const std::vector<int>& ks, int axis, int i);

struct IteratedS {
  ExactPtr exact;
  ZeroPolicy policy = ZeroPolicy::all;
  MultiConvention convention = MultiConvention::waldhausen;
  std::vector<std::shared_ptr<const DiagramFamily>> levels;  // in MultiSimplicialSet level order
  std::vector<std::shared_ptr<const DiagramGroupoid>> groupoids;
  simpl::MultiSimplicialSet multi;
};

IteratedS s_iterated(ExactPtr e, const std::vector<int>& bounds, ZeroPolicy policy = ZeroPolicy::all,
                     MultiConvention conv = MultiConvention::waldhausen);

// The exact category [Ar[k],E]: objects are k-grids (canonical zeros), morphisms
// all natural transformations, structure levelwise.
struct FunctorCategory {
  ExactPtr exact;
  std::shared_ptr<const DiagramFamily> grids;
  std::vector<fincat::Arrow> components;  // per morphism
};
FunctorCategory functor_exact_category(ExactPtr e, int k);

// Ob S_a([Ar[b],E]) -> S^(2)_{a,b}(E), both with canonical zeros.
struct IterationBijection {
  std::uint64_t source = 0, target = 0, images = 0;
  bool well_defined = true, injective = true;
  bool bijective() const { return well_defined && injective && images == target && source == target; }
};
IterationBijection iteration_bijection(ExactPtr e, int a, int b);

}  // namespace sdot::waldhausen
