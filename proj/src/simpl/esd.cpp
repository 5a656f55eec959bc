#include "sdot/simpl/esd.hpp"

#include <algorithm>

namespace sdot::simpl {

namespace {

class EsdIso : public IsoStructure {
 public:
  explicit EsdIso(IsoPtr base) : base_(std::move(base)) {}
  Relative relative_symmetry(int k, CellId x, const VertexMasks& fixed) const override {
    return base_->relative_symmetry(2 * k + 1, x, lift(k, fixed));
  }
  bool relatively_isomorphic(int k, CellId x, CellId y, const VertexMasks& fixed) const override {
    return base_->relatively_isomorphic(2 * k + 1, x, y, lift(k, fixed));
  }

 private:
  static VertexMasks lift(int k, const VertexMasks& masks) {
    VertexMasks out;
    for (const auto& m : masks) {
      std::vector<int> v;
      for (int a : m) {
        v.push_back(a);
        v.push_back(2 * k + 1 - a);
      }
      std::sort(v.begin(), v.end());
      out.push_back(std::move(v));
    }
    return out;
  }
  IsoPtr base_;
};

}  // namespace

TruncSimplicialSet edgewise_subdivision(const TruncSimplicialSet& x) {
  if (x.N < 1) fail(ErrorCode::truncation, "edgewise subdivision needs level 1");
  const int M = (x.N - 1) / 2;
  std::vector<std::size_t> sizes;
  for (int k = 0; k <= M; ++k) sizes.push_back(x.size(2 * k + 1));
  TruncSimplicialSet e;
  e.name = "esd(" + x.name + ")";
  e.allocate(M, sizes);
  for (int k = 1; k <= M; ++k)
    for (int i = 0; i <= k; ++i) {
      const auto& hi = x.d[2 * k + 1][2 * k + 1 - i];
      const auto& lo = x.d[2 * k][i];
      for (CellId c = 0; c < sizes[k]; ++c) e.d[k][i][c] = lo[hi[c]];
    }
  for (int k = 0; k < M; ++k)
    for (int i = 0; i <= k; ++i) {
      const auto& first = x.s[2 * k + 1][2 * k + 1 - i];
      const auto& second = x.s[2 * k + 2][i];
      for (CellId c = 0; c < sizes[k]; ++c) e.s[k][i][c] = second[first[c]];
    }
  if (x.describe_cell) e.describe_cell = [f = x.describe_cell](int k, CellId c) { return f(2 * k + 1, c); };
  if (x.iso) e.iso = std::make_shared<EsdIso>(x.iso);
  return e;
}

}  // namespace sdot::simpl
