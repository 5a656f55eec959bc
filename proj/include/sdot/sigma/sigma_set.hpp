#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sdot/error.hpp"
#include "sdot/simpl/simplicial.hpp"

namespace sdot::sigma {

// [-1] when a < 0, otherwise [a,b].
struct SigmaObj {
  int a = -1, b = -1;
  bool augmentation() const { return a < 0; }
  auto operator<=>(const SigmaObj&) const = default;
};

int p_degree(const SigmaObj& o);

// Cells at [a,b] for a+1+b ≤ N plus the augmentation cells. Axis 0 acts on a
// (the front vertices of [a+1+b]), axis 1 on b.
struct SigmaSet {
  std::string name;
  int N = 0;
  std::size_t aug_size = 0;
  std::vector<std::size_t> sizes;  // by index(a,b)
  // d[t][index(a,b)][i][x], s[t][index(a,b)][i][x]
  std::array<std::vector<std::vector<std::vector<CellId>>>, 2> d, s;
  std::vector<CellId> aug;  // X_{-1} -> X_{0,0}
  std::function<std::string(const SigmaObj&, CellId)> describe_cell;

  static std::size_t index(int a, int b);
  bool has(int a, int b) const { return a >= 0 && b >= 0 && a + 1 + b <= N; }
  std::size_t size(int a, int b) const { return sizes[index(a, b)]; }
  std::size_t size(const SigmaObj& o) const { return o.augmentation() ? aug_size : size(o.a, o.b); }
  CellId face(int axis, int a, int b, int i, CellId x) const { return d[axis][index(a, b)][i][x]; }
  CellId degeneracy(int axis, int a, int b, int i, CellId x) const { return s[axis][index(a, b)][i][x]; }
  // Image of an augmentation cell at [a,b], transported by s_0 on both axes.
  CellId aug_at(int a, int b, CellId z) const;
  std::string describe(const SigmaObj& o, CellId x) const;
  // Sizes and N must be set.
  void allocate();
};

using SigmaPtr = std::shared_ptr<const SigmaSet>;

struct SigmaValidation {
  std::vector<std::string> violations;  // first 64
  std::uint64_t violation_count = 0;
  std::uint64_t checked = 0;
  std::string table_problem;
  bool ok() const { return violation_count == 0 && table_problem.empty(); }
};

// Simplicial identities on every row and column, commuting axes, and
// naturality of the augmentation under every elementary operator.
SigmaValidation validate_sigma(const SigmaSet& x);

// The slice with b fixed (axis 0) or a fixed (axis 1).
simpl::TruncSimplicialSet sigma_slice(const SigmaSet& x, int axis, int fixed);

SigmaSet terminal_sigma(int N);

// Restriction along p: (PY)_{a,b} = Y_{a+1+b}, (PY)_{-1} = Y_0.
SigmaSet path_space(const simpl::TruncSimplicialSet& y);

}  // namespace sdot::sigma
