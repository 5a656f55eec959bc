#pragma once

#include <string>
#include <vector>

#include "sdot/simpl/checks.hpp"
#include "sdot/simpl/simplicial.hpp"

namespace sdot::simpl {

// Multidegrees 0 ≤ k_t ≤ bounds[t], stored in lexicographic order. Tables
// d[t][level][i] and s[t][level][i] act on axis t.
struct MultiSimplicialSet {
  std::string name;
  std::vector<int> bounds;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::vector<std::vector<CellId>>>> d, s;
  std::function<std::string(const std::vector<int>&, CellId)> describe_cell;
  // Iso structure of the axis-`axis` slice through `degree` (its axis entry ignored).
  std::function<IsoPtr(int axis, const std::vector<int>& degree)> slice_iso;

  std::size_t arity() const { return bounds.size(); }
  std::size_t num_levels() const;
  std::size_t level(const std::vector<int>& degree) const;
  std::vector<int> degree(std::size_t level) const;
  std::size_t size(const std::vector<int>& deg) const { return sizes[level(deg)]; }
  // Sizes must already be filled in.
  void allocate();
};

SimplicialValidation validate_multisimplicial(const MultiSimplicialSet& x);

// The simplicial set obtained by letting only `axis` vary.
TruncSimplicialSet slice(const MultiSimplicialSet& x, int axis, const std::vector<int>& degree);

// condition: "segal", "2segal:all", "2segal:lower" or "2segal:upper". Runs it on
// every slice along `axis`.
CheckReport multisimplicial_axis_check(const MultiSimplicialSet& x, int axis, const std::string& condition);

}  // namespace sdot::simpl
