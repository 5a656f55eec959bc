#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sdot/error.hpp"
#include "sdot/fincat/category.hpp"

namespace sdot::simpl {

// A set of vertex subsets of [n]; a face spanned by a subset is held fixed.
using VertexMasks = std::vector<std::vector<int>>;

// Isomorphisms between cells, for sets that are the object sets of simplicial
// groupoids. Restriction along vertex inclusions is assumed to be an isofibration.
class IsoStructure {
 public:
  struct Relative {
    std::uint64_t families = 1;    // isomorphisms out of x that are identities on the fixed faces
    std::uint64_t stabilizer = 1;  // those that are automorphisms of x
  };
  virtual ~IsoStructure() = default;
  virtual Relative relative_symmetry(int n, CellId x, const VertexMasks& fixed) const = 0;
  virtual bool relatively_isomorphic(int n, CellId x, CellId y, const VertexMasks& fixed) const = 0;
};

using IsoPtr = std::shared_ptr<const IsoStructure>;

// Levels 0..N with face tables d[n][i] (n ≥ 1) and degeneracy tables s[n][i] (n < N).
struct TruncSimplicialSet {
  std::string name;
  int N = 0;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::vector<CellId>>> d, s;
  std::function<std::string(int, CellId)> describe_cell;
  IsoPtr iso;

  std::size_t size(int n) const { return sizes[n]; }
  CellId face(int n, int i, CellId x) const { return d[n][i][x]; }
  CellId degeneracy(int n, int i, CellId x) const { return s[n][i][x]; }
  std::string describe(int n, CellId x) const;
  // Restriction along the vertex inclusion `vertices` ⊆ [n] (ascending).
  CellId restrict(int n, const std::vector<int>& vertices, CellId x) const;
  std::vector<CellId> restrict_all(int n, const std::vector<int>& vertices) const;
  // Empty tables of the right shape.
  void allocate(int bound, const std::vector<std::size_t>& level_sizes);
};

enum class IdentityForm : std::uint8_t { dd, ds_low, ds_mid, ds_high, ss };

struct IdentityViolation {
  std::string identity;  // e.g. "d1 d3 = d2 d1"
  IdentityForm form = IdentityForm::dd;
  int n = 0;
  int i = 0, j = 0;
  CellId cell = kNone;
  CellId lhs = kNone, rhs = kNone;
};

struct SimplicialValidation {
  std::vector<IdentityViolation> violations;  // first 64
  std::uint64_t violation_count = 0;
  std::uint64_t checked = 0;
  std::string table_problem;
  bool ok() const { return violation_count == 0 && table_problem.empty(); }
};

SimplicialValidation validate_simplicial(const TruncSimplicialSet& x);
// Recomputes both sides of one identity instance.
bool verify_violation(const TruncSimplicialSet& x, const IdentityViolation& v);

// Monotone maps [n] -> [k], n ≤ N, in lexicographic order.
TruncSimplicialSet standard_simplex(int k, int N);
// Vertex sequence of a standard simplex cell.
std::vector<int> simplex_vertices(int k, int n, CellId x);
CellId simplex_cell(int k, const std::vector<int>& vertices);

// Nerve: n-cells are composable strings of n morphisms; 0-cells are objects.
TruncSimplicialSet nerve(std::shared_ptr<const fincat::FinCategory> c, int N);

}  // namespace sdot::simpl
