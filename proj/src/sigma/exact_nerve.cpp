#include "sdot/sigma/exact_nerve.hpp"

#include <algorithm>

namespace sdot::sigma {

using fincat::Diagram;
using fincat::ShapeMap;

std::shared_ptr<const ExactNerve> exact_nerve(ExactPtr e, int N, ZeroPolicy policy) {
  if (N < 1) fail(ErrorCode::configuration, "exact nerve needs degree at least 1");
  auto nv = std::make_shared<ExactNerve>();
  nv->exact = e;
  nv->policy = policy;
  nv->zeros = policy == ZeroPolicy::canonical ? std::vector<ObjId>{e->canonical_zero()} : e->zeros();
  auto x = std::make_shared<SigmaSet>();
  x->name = "Nex(" + e->name() + (policy == ZeroPolicy::canonical ? ", canonical zeros)" : ")");
  x->N = N;
  x->aug_size = nv->zeros.size();
  fincat::CompletionCache cache(e);
  for (int m = 0; m + 1 <= N; ++m)
    for (int a = 0; a <= m; ++a) {
      nv->levels.push_back(DiagramFamily::enumerate(e, fincat::grid_shape(a, m - a), policy, &cache));
      x->sizes.push_back(nv->levels.back()->size());
    }
  x->allocate();
  const auto& c = e->category();
  Diagram g, h;
  for (int m = 0; m + 1 <= N; ++m)
    for (int a = 0; a <= m; ++a) {
      const int b = m - a;
      const std::size_t l = SigmaSet::index(a, b);
      const auto& fam = *nv->levels[l];
      for (int t = 0; t < 2; ++t) {
        const int k = t == 0 ? a : b;
        const auto run = [&](int da, std::vector<std::vector<CellId>>& tables, const std::function<int(int, int)>& f,
                             const char* what) {
          const int na = a + (t == 0 ? da : 0), nb = b + (t == 1 ? da : 0);
          const auto& target = *nv->levels[SigmaSet::index(na, nb)];
          for (std::size_t i = 0; i < tables.size(); ++i) {
            const ShapeMap sm = fincat::make_shape_map(fincat::grid_shape(na, nb), fam.shape(),
                                                       [&](const std::vector<int>& co) {
                                                         auto o = co;
                                                         o[t] = f(static_cast<int>(i), co[t]);
                                                         return o;
                                                       });
            for (CellId id = 0; id < fam.size(); ++id) {
              fam.decode(id, g);
              fincat::restrict_diagram(c, g, sm, h);
              const CellId r = target.find(h);
              if (r == kNone) fail(ErrorCode::not_exact_closed, std::string(what) + " of an exact grid is not exact");
              tables[i][id] = r;
            }
          }
        };
        if (k >= 1) run(-1, x->d[t][l], [](int i, int p) { return p < i ? p : p + 1; }, "face");
        if (m + 2 <= N) run(1, x->s[t][l], [](int i, int p) { return p <= i ? p : p - 1; }, "degeneracy");
      }
    }
  const auto& l00 = *nv->levels[0];
  for (CellId z = 0; z < nv->zeros.size(); ++z) {
    x->aug[z] = l00.find(Diagram{{nv->zeros[z]}, {}});
    if (x->aug[z] == kNone) fail(ErrorCode::configuration, "zero object missing from the nerve");
  }
  x->describe_cell = [levels = nv->levels, zeros = nv->zeros, e](const SigmaObj& o, CellId id) -> std::string {
    if (o.augmentation()) return e->category().object_label(zeros[id]);
    return levels[SigmaSet::index(o.a, o.b)]->describe(id);
  };
  nv->set = x;
  return nv;
}

}  // namespace sdot::sigma
