#pragma once

#include <memory>
#include <vector>

#include "sdot/fincat/diagram.hpp"
#include "sdot/simpl/simplicial.hpp"

namespace sdot::simpl {

// Isomorphisms of cells that are diagrams over (products of) arrow shapes. A
// position is fixed when its coordinate pair on `axis` lies in one mask.
class GridIsoStructure : public IsoStructure {
 public:
  struct Level {
    std::shared_ptr<const fincat::DiagramGroupoid> groupoid;
    std::vector<CellId> cells;  // cell id -> family index; empty for the identity
  };
  GridIsoStructure(std::vector<Level> levels, int axis = 0) : levels_(std::move(levels)), axis_(axis) {}
  Relative relative_symmetry(int n, CellId x, const VertexMasks& fixed) const override;
  bool relatively_isomorphic(int n, CellId x, CellId y, const VertexMasks& fixed) const override;

 private:
  std::vector<char> fixed_positions(int n, const VertexMasks& masks) const;
  CellId member(int n, CellId x) const { return levels_[n].cells.empty() ? x : levels_[n].cells[x]; }
  std::vector<Level> levels_;
  int axis_;
};

}  // namespace sdot::simpl
