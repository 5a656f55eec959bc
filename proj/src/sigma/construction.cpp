#include "sdot/sigma/construction.hpp"

#include <algorithm>
#include <numeric>

#include "sdot/simpl/grid_iso.hpp"

namespace sdot::sigma {

using fincat::Diagram;
using fincat::Shape;

namespace {

std::vector<int> coface(int k, int i) {
  std::vector<int> m;
  for (int p = 0; p < k; ++p) m.push_back(p < i ? p : p + 1);
  return m;
}

std::vector<int> codegeneracy(int k, int i) {
  std::vector<int> m;
  for (int p = 0; p <= k + 1; ++p) m.push_back(p <= i ? p : p - 1);
  return m;
}

std::vector<int> identity(int k) {
  std::vector<int> m(k + 1);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

void fill_table(const MappingSpace& from, const MappingSpace& to, const SigmaMap& phi, std::vector<CellId>& table,
                const char* what) {
  for (std::size_t m = 0; m < from.size(); ++m) {
    const CellId r = to.find(precompose(from, to, phi, m));
    if (r == kNone) fail(ErrorCode::configuration, std::string(what) + " of a map is not a map");
    table[m] = r;
  }
}

std::string describe_map(const MappingSpace& ms, std::size_t m) {
  const auto& img = ms.images(m);
  const auto& gens = ms.probe().generators;
  std::string out = "(";
  bool first = true;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (p_degree(gens[g].obj) > 1) continue;
    out += (first ? "" : ", ") + ms.target().describe(gens[g].obj, img[g]);
    first = false;
  }
  return out + ")";
}

}  // namespace

SigmaSConstruction s_construction_sigma(SigmaPtr x, int N) {
  if (N < 0) fail(ErrorCode::configuration, "S bound must be nonnegative");
  if (x->N < N + 1)
    fail(ErrorCode::truncation, x->name + " has degree " + std::to_string(x->N) + ", S up to level " +
                                    std::to_string(N) + " needs " + std::to_string(N + 1));
  SigmaSConstruction sc;
  sc.target = x;
  std::vector<ProbePtr> probes;
  std::vector<std::size_t> sizes;
  for (int k = 0; k <= N; ++k) {
    probes.push_back(p_delta(k, N + 1));
    sc.levels.push_back(std::make_shared<const MappingSpace>(probes.back(), x));
    sizes.push_back(sc.levels.back()->size());
  }
  auto& s = sc.simplicial;
  s.name = "S(" + x->name + ")";
  s.allocate(N, sizes);
  for (int k = 0; k <= N; ++k) {
    for (int i = 0; i <= k && k >= 1; ++i)
      fill_table(*sc.levels[k], *sc.levels[k - 1], probe_map(*probes[k - 1], *probes[k], {coface(k, i)}), s.d[k][i],
                 "face");
    for (int i = 0; i <= k && k < N; ++i)
      fill_table(*sc.levels[k], *sc.levels[k + 1], probe_map(*probes[k + 1], *probes[k], {codegeneracy(k, i)}),
                 s.s[k][i], "degeneracy");
  }
  s.describe_cell = [levels = sc.levels](int k, CellId c) { return describe_map(*levels[k], c); };
  return sc;
}

SigmaIterated s_iterated_sigma(SigmaPtr x, const std::vector<int>& bounds) {
  SigmaIterated si;
  si.target = x;
  auto& mx = si.multi;
  mx.bounds = bounds;
  const int D = std::accumulate(bounds.begin(), bounds.end(), 0) + 1;
  if (x->N < D)
    fail(ErrorCode::truncation, x->name + " has degree " + std::to_string(x->N) + ", the product probes need " +
                                    std::to_string(D));
  std::string name = "S(";
  for (std::size_t t = 0; t < bounds.size(); ++t) name += (t ? "," : "") + std::to_string(bounds[t]);
  mx.name = name + ")(" + x->name + ")";
  std::vector<ProbePtr> probes;
  for (std::size_t l = 0; l < mx.num_levels(); ++l) {
    probes.push_back(p_delta_product(mx.degree(l), D));
    si.levels.push_back(std::make_shared<const MappingSpace>(probes.back(), x));
    mx.sizes.push_back(si.levels.back()->size());
  }
  mx.allocate();
  for (std::size_t l = 0; l < mx.num_levels(); ++l) {
    const auto deg = mx.degree(l);
    for (std::size_t t = 0; t < bounds.size(); ++t) {
      std::vector<std::vector<int>> maps;
      for (int k : deg) maps.push_back(identity(k));
      const int k = deg[t];
      for (int i = 0; i <= k && k >= 1; ++i) {
        auto lower = deg;
        --lower[t];
        const std::size_t ll = mx.level(lower);
        maps[t] = coface(k, i);
        fill_table(*si.levels[l], *si.levels[ll], probe_map(*probes[ll], *probes[l], maps), mx.d[t][l][i], "face");
      }
      for (int i = 0; i <= k && k < bounds[t]; ++i) {
        auto upper = deg;
        ++upper[t];
        const std::size_t lu = mx.level(upper);
        maps[t] = codegeneracy(k, i);
        fill_table(*si.levels[l], *si.levels[lu], probe_map(*probes[lu], *probes[l], maps), mx.s[t][l][i],
                   "degeneracy");
      }
    }
  }
  mx.describe_cell = [levels = si.levels, bounds](const std::vector<int>& deg, CellId c) {
    std::size_t l = 0;
    for (std::size_t t = 0; t < bounds.size(); ++t) l = l * static_cast<std::size_t>(bounds[t] + 1) + deg[t];
    return describe_map(*levels[l], c);
  };
  return si;
}

Diagram map_to_grid(const ExactNerve& nv, const MappingSpace& ms, std::size_t m, const Shape& shape) {
  const SigmaMap f = ms.extend(m);
  const Probe& p = ms.probe();
  const std::size_t n = shape.coords.empty() ? 0 : shape.coords[0].size() / 2;
  Diagram d;
  for (const auto& c : shape.coords) {
    std::vector<std::vector<int>> v(n);
    for (std::size_t t = 0; t < n; ++t) v[t] = {c[2 * t], c[2 * t + 1]};
    const CellId cell = f.cells[SigmaSet::index(0, 0)][p.locate({0, 0}, v)];
    d.objects.push_back(nv.level(0, 0).diagram(cell).objects[0]);
  }
  for (const auto& e : shape.edges) {
    const auto& s = shape.coords[e.src];
    const auto& t_ = shape.coords[e.dst];
    std::size_t axis = 0;
    bool horizontal = false;
    for (std::size_t t = 0; t < n; ++t) {
      if (s[2 * t + 1] != t_[2 * t + 1]) axis = t, horizontal = true;
      if (s[2 * t] != t_[2 * t]) axis = t, horizontal = false;
    }
    std::vector<std::vector<int>> v(n);
    for (std::size_t t = 0; t < n; ++t) {
      const int i = s[2 * t], j = s[2 * t + 1];
      if (t != axis)
        v[t] = horizontal ? std::vector<int>{i, j, j} : std::vector<int>{i, i, j};
      else
        v[t] = horizontal ? std::vector<int>{i, j, j + 1} : std::vector<int>{i, i + 1, j};
    }
    const SigmaObj o = horizontal ? SigmaObj{0, 1} : SigmaObj{1, 0};
    const CellId cell = f.cells[SigmaSet::index(o.a, o.b)][p.locate(o, v)];
    d.morphisms.push_back(nv.level(o.a, o.b).diagram(cell).morphisms[0]);
  }
  return d;
}

std::vector<CellId> grid_to_generators(const ExactNerve& nv, const MappingSpace& ms, const Diagram& g,
                                       const Shape& shape) {
  const Probe& p = ms.probe();
  const auto& c = nv.exact->category();
  std::vector<CellId> img;
  for (const auto& gen : p.generators) {
    const auto v = p.vertices(gen.obj, gen.cell);
    const std::size_t n = v.size();
    if (gen.obj.augmentation()) {
      std::vector<int> co;
      for (std::size_t t = 0; t < n; ++t) co.insert(co.end(), {v[t][0], v[t][0]});
      const ObjId z = g.objects[shape.find(co)];
      const auto it = std::find(nv.zeros.begin(), nv.zeros.end(), z);
      img.push_back(it == nv.zeros.end() ? kNone : static_cast<CellId>(it - nv.zeros.begin()));
      continue;
    }
    const int a = gen.obj.a, b = gen.obj.b;
    const auto sm = fincat::make_shape_map(fincat::grid_shape(a, b), shape, [&](const std::vector<int>& rc) {
      std::vector<int> co;
      for (std::size_t t = 0; t < n; ++t) co.insert(co.end(), {v[t][rc[0]], v[t][a + 1 + rc[1]]});
      return co;
    });
    Diagram h;
    fincat::restrict_diagram(c, g, sm, h);
    img.push_back(nv.level(a, b).find(h));
  }
  return img;
}

bool BridgeReport::ok() const {
  return natural && std::all_of(levels.begin(), levels.end(),
                                [](const BridgeLevel& l) { return l.well_defined && l.bijective; });
}

namespace {

BridgeLevel bridge_level(const ExactNerve& nv, const MappingSpace& ms, const DiagramFamily& grids,
                         std::vector<int> degree) {
  BridgeLevel bl;
  bl.degree = std::move(degree);
  bl.maps = ms.size();
  bl.grids = grids.size();
  const Shape& shape = grids.shape();
  bl.to_grid.assign(ms.size(), kNone);
  for (std::size_t m = 0; m < ms.size(); ++m) {
    const CellId g = grids.find(map_to_grid(nv, ms, m, shape));
    if (g == kNone) {
      bl.well_defined = false;
      continue;
    }
    bl.to_grid[m] = g;
  }
  std::vector<char> hit(grids.size(), 0);
  for (CellId g = 0; g < grids.size(); ++g) {
    const auto img = grid_to_generators(nv, ms, grids.diagram(g), shape);
    if (std::find(img.begin(), img.end(), kNone) != img.end()) {
      bl.well_defined = false;
      continue;
    }
    const CellId m = ms.find(img);
    if (m == kNone) {
      bl.well_defined = false;
      continue;
    }
    if (bl.to_grid[m] != g) bl.bijective = false;
    if (hit[g]++) bl.bijective = false;
  }
  if (bl.maps != bl.grids) bl.bijective = false;
  return bl;
}

void compare_tables(BridgeReport& rep, const std::vector<CellId>& from_map, const std::vector<CellId>& to_map,
                    const std::vector<CellId>& sigma_table, const std::vector<CellId>& grid_table,
                    const std::string& what) {
  for (std::size_t m = 0; m < sigma_table.size(); ++m) {
    if (from_map[m] == kNone || to_map[sigma_table[m]] == kNone) continue;
    if (to_map[sigma_table[m]] != grid_table[from_map[m]]) {
      rep.natural = false;
      if (rep.problems.size() < 16) rep.problems.push_back(what + " disagrees on map " + std::to_string(m));
      return;
    }
  }
}

}  // namespace

BridgeReport sigma_bridge(const ExactNerve& nv, const SigmaSConstruction& sc, const waldhausen::SConstruction& grids) {
  if (grids.policy != nv.policy) fail(ErrorCode::configuration, "bridge needs matching zero policies");
  BridgeReport rep;
  const int N = std::min(sc.simplicial.N, static_cast<int>(grids.levels.size()) - 1);
  for (int k = 0; k <= N; ++k) rep.levels.push_back(bridge_level(nv, *sc.levels[k], *grids.levels[k], {k}));
  for (int k = 0; k <= N; ++k) {
    for (int i = 0; i <= k && k >= 1; ++i)
      compare_tables(rep, rep.levels[k].to_grid, rep.levels[k - 1].to_grid, sc.simplicial.d[k][i],
                     grids.simplicial.d[k][i], "d" + std::to_string(i) + " at level " + std::to_string(k));
    for (int i = 0; i <= k && k < N; ++i)
      compare_tables(rep, rep.levels[k].to_grid, rep.levels[k + 1].to_grid, sc.simplicial.s[k][i],
                     grids.simplicial.s[k][i], "s" + std::to_string(i) + " at level " + std::to_string(k));
  }
  return rep;
}

BridgeReport sigma_bridge(const ExactNerve& nv, const SigmaIterated& si, const waldhausen::IteratedS& grids) {
  if (grids.policy != nv.policy) fail(ErrorCode::configuration, "bridge needs matching zero policies");
  if (si.multi.bounds != grids.multi.bounds) fail(ErrorCode::configuration, "bridge needs matching bounds");
  BridgeReport rep;
  const auto& mx = si.multi;
  for (std::size_t l = 0; l < mx.num_levels(); ++l)
    rep.levels.push_back(bridge_level(nv, *si.levels[l], *grids.levels[l], mx.degree(l)));
  for (std::size_t l = 0; l < mx.num_levels(); ++l) {
    const auto deg = mx.degree(l);
    for (std::size_t t = 0; t < deg.size(); ++t) {
      if (deg[t] >= 1) {
        auto lower = deg;
        --lower[t];
        for (int i = 0; i <= deg[t]; ++i)
          compare_tables(rep, rep.levels[l].to_grid, rep.levels[mx.level(lower)].to_grid, mx.d[t][l][i],
                         grids.multi.d[t][l][i], "axis " + std::to_string(t) + " d" + std::to_string(i));
      }
      if (deg[t] < mx.bounds[t]) {
        auto upper = deg;
        ++upper[t];
        for (int i = 0; i <= deg[t]; ++i)
          compare_tables(rep, rep.levels[l].to_grid, rep.levels[mx.level(upper)].to_grid, mx.s[t][l][i],
                         grids.multi.s[t][l][i], "axis " + std::to_string(t) + " s" + std::to_string(i));
      }
    }
  }
  return rep;
}

void transport_isos(SigmaSConstruction& sc, const waldhausen::SConstruction& grids, const BridgeReport& bridge) {
  if (!bridge.ok()) fail(ErrorCode::configuration, "cannot transport isomorphisms through a broken bridge");
  std::vector<simpl::GridIsoStructure::Level> lv;
  for (std::size_t k = 0; k < bridge.levels.size(); ++k) lv.push_back({grids.groupoids[k], bridge.levels[k].to_grid});
  sc.simplicial.iso = std::make_shared<simpl::GridIsoStructure>(std::move(lv));
}

}  // namespace sdot::sigma
