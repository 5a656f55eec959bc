#include "sdot/waldhausen/iterated.hpp"

#include <algorithm>
#include <map>

#include "sdot/simpl/grid_iso.hpp"

namespace sdot::waldhausen {

using fincat::Arrow;
using fincat::CompletionCache;
using fincat::FinCategory;
using fincat::Shape;
using fincat::ShapeMap;

std::shared_ptr<const DiagramFamily> s_iterated_disc(ExactPtr e, const std::vector<int>& ks, ZeroPolicy policy,
                                                     CompletionCache* cache, MultiConvention conv) {
  if (ks.empty()) fail(ErrorCode::configuration, "iterated S needs at least one level");
  for (int k : ks)
    if (k < 0) fail(ErrorCode::configuration, "S level must be nonnegative");
  return DiagramFamily::enumerate(std::move(e), fincat::multi_ar_shape(ks, conv), policy, cache);
}

namespace {

ShapeMap axis_map(const std::vector<int>& ks, int axis, int dk, const std::function<int(int)>& f) {
  auto dom = ks;
  dom[axis] += dk;
  return fincat::make_shape_map(fincat::multi_ar_shape(dom), fincat::multi_ar_shape(ks),
                                [&](const std::vector<int>& c) {
                                  auto out = c;
                                  out[2 * axis] = f(c[2 * axis]);
                                  out[2 * axis + 1] = f(c[2 * axis + 1]);
                                  return out;
                                });
}

}  // namespace

ShapeMap multi_coface_map(const std::vector<int>& ks, int axis, int i) {
  return axis_map(ks, axis, -1, [i](int p) { return p < i ? p : p + 1; });
}

ShapeMap multi_codegeneracy_map(const std::vector<int>& ks, int axis, int i) {
  return axis_map(ks, axis, 1, [i](int p) { return p <= i ? p : p - 1; });
}

IteratedS s_iterated(ExactPtr e, const std::vector<int>& bounds, ZeroPolicy policy, MultiConvention conv) {
  IteratedS it;
  it.exact = e;
  it.policy = policy;
  it.convention = conv;
  auto& x = it.multi;
  x.bounds = bounds;
  std::string name = "S(";
  for (std::size_t t = 0; t < bounds.size(); ++t) name += (t ? "," : "") + std::to_string(bounds[t]);
  x.name = name + ")(" + e->name() + (policy == ZeroPolicy::canonical ? ", canonical zeros" : "") +
           (conv == MultiConvention::diagonal ? ", diagonal)" : ")");
  CompletionCache cache(e);
  const std::size_t L = x.num_levels();
  for (std::size_t l = 0; l < L; ++l) {
    it.levels.push_back(s_iterated_disc(e, x.degree(l), policy, &cache, conv));
    it.groupoids.push_back(std::make_shared<const DiagramGroupoid>(it.levels.back()));
    x.sizes.push_back(it.levels.back()->size());
  }
  x.allocate();
  const FinCategory& c = e->category();
  Diagram g, h;
  for (std::size_t l = 0; l < L; ++l) {
    const auto deg = x.degree(l);
    for (std::size_t t = 0; t < bounds.size(); ++t) {
      const int k = deg[t];
      const auto run = [&](const ShapeMap& m, std::vector<CellId>& table, int dk, const char* what) {
        auto td = deg;
        td[t] += dk;
        const auto& target = *it.levels[x.level(td)];
        for (CellId id = 0; id < x.sizes[l]; ++id) {
          it.levels[l]->decode(id, g);
          fincat::restrict_diagram(c, g, m, h);
          const CellId r = target.find(h);
          if (r == kNone) fail(ErrorCode::not_exact_closed, what);
          table[id] = r;
        }
      };
      if (k >= 1)
        for (int i = 0; i <= k; ++i)
          run(multi_coface_map(deg, static_cast<int>(t), i), x.d[t][l][i], -1, "face of a multigrid is not a multigrid");
      if (k < bounds[t])
        for (int i = 0; i <= k; ++i)
          run(multi_codegeneracy_map(deg, static_cast<int>(t), i), x.s[t][l][i], 1,
              "degeneracy of a multigrid is not a multigrid");
    }
  }
  x.describe_cell = [levels = it.levels, bounds](const std::vector<int>& deg, CellId id) {
    std::size_t l = 0;
    for (std::size_t t = 0; t < bounds.size(); ++t) l = l * static_cast<std::size_t>(bounds[t] + 1) + deg[t];
    return levels[l]->describe(id);
  };
  x.slice_iso = [groupoids = it.groupoids, bounds](int axis, const std::vector<int>& degree) -> simpl::IsoPtr {
    std::vector<simpl::GridIsoStructure::Level> lv;
    auto deg = degree;
    for (int k = 0; k <= bounds[axis]; ++k) {
      deg[axis] = k;
      std::size_t l = 0;
      for (std::size_t t = 0; t < bounds.size(); ++t) l = l * static_cast<std::size_t>(bounds[t] + 1) + deg[t];
      lv.push_back({groupoids[l], {}});
    }
    return std::make_shared<simpl::GridIsoStructure>(std::move(lv), axis);
  };
  return it;
}

namespace {

// Natural transformations g -> h, positions assigned in order.
void for_each_transformation(const ProtoExactStructure& e, const Shape& shape, const Diagram& g, const Diagram& h,
                             const std::function<void(const Arrow&)>& visit) {
  const FinCategory& c = e.category();
  const std::size_t n = shape.size();
  std::vector<std::vector<std::uint32_t>> closing(n);  // edges whose later endpoint is p
  for (std::uint32_t ed = 0; ed < shape.edges.size(); ++ed)
    closing[std::max(shape.edges[ed].src, shape.edges[ed].dst)].push_back(ed);
  Arrow a(n, kNone);
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == n) {
      visit(a);
      return;
    }
    const MorId b = c.hom_begin(g.objects[p], h.objects[p]);
    for (std::uint32_t i = 0; i < c.hom_size(g.objects[p], h.objects[p]); ++i) {
      a[p] = b + i;
      bool ok = true;
      for (std::uint32_t ed : closing[p]) {
        const auto& E = shape.edges[ed];
        if (c.compose(h.morphisms[ed], a[E.src]) != c.compose(a[E.dst], g.morphisms[ed])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(p + 1);
    }
  };
  rec(0);
}

}  // namespace

FunctorCategory functor_exact_category(ExactPtr e, int k) {
  FunctorCategory fc;
  fc.grids = s_disc(e, k, ZeroPolicy::canonical);
  const auto& fam = *fc.grids;
  const Shape& shape = fam.shape();
  const FinCategory& c = e->category();
  const std::size_t n = fam.size();
  std::vector<Diagram> grids(n);
  for (CellId x = 0; x < n; ++x) grids[x] = fam.diagram(x);

  FinCategory::Builder b;
  for (CellId x = 0; x < n; ++x) b.add_object("g" + std::to_string(x));
  std::vector<Arrow> comps;
  std::vector<std::map<Arrow, MorId>> hom(n * n);
  for (CellId x = 0; x < n; ++x)
    for (CellId y = 0; y < n; ++y)
      for_each_transformation(*e, shape, grids[x], grids[y], [&](const Arrow& a) {
        charge(1, "natural transformations");
        const MorId id = b.add_morphism(x, y, "t" + std::to_string(comps.size()));
        hom[x * n + y][a] = id;
        comps.push_back(a);
      });
  for (CellId x = 0; x < n; ++x) {
    Arrow idc;
    for (ObjId o : grids[x].objects) idc.push_back(c.identity(o));
    b.set_identity(x, hom[x * n + x].at(idc));
  }
  // composites, hom by hom
  for (CellId x = 0; x < n; ++x)
    for (CellId y = 0; y < n; ++y)
      for (const auto& [f, fid] : hom[x * n + y])
        for (CellId z = 0; z < n; ++z)
          for (const auto& [g, gid] : hom[y * n + z]) {
            Arrow gf(f.size());
            for (std::size_t p = 0; p < f.size(); ++p) gf[p] = c.compose(g[p], f[p]);
            b.set_composite(gid, fid, hom[x * n + z].at(gf));
          }
  std::vector<MorId> remap;
  auto cat = std::make_shared<const FinCategory>(std::move(b).build(&remap));
  fc.components.assign(comps.size(), {});
  for (MorId m = 0; m < comps.size(); ++m) fc.components[remap[m]] = comps[m];

  std::vector<char> mono(comps.size()), epi(comps.size()), zero(n);
  for (MorId m = 0; m < comps.size(); ++m) {
    const Arrow& a = fc.components[m];
    mono[m] = std::all_of(a.begin(), a.end(), [&](MorId f) { return e->is_mono(f); });
    epi[m] = std::all_of(a.begin(), a.end(), [&](MorId f) { return e->is_epi(f); });
  }
  for (CellId x = 0; x < n; ++x)
    zero[x] = std::all_of(grids[x].objects.begin(), grids[x].objects.end(), [&](ObjId o) { return e->is_zero(o); });
  auto fe = std::make_shared<fincat::ProtoExactStructure>(cat, std::move(mono), std::move(epi), std::move(zero),
                                                         "[Ar[" + std::to_string(k) + "]," + e->name() + "]");
  fe->use_native([e, comps = fc.components, c = e->category_ptr()](const fincat::Square& s) {
    for (std::size_t p = 0; p < comps[s.top].size(); ++p) {
      const auto sq = fincat::make_square(*c, comps[s.top][p], comps[s.left][p], comps[s.right][p], comps[s.bottom][p]);
      if (!e->is_mono(sq.top) || !e->is_mono(sq.bottom) || !e->is_epi(sq.left) || !e->is_epi(sq.right)) return false;
      if (!e->bicartesian_unchecked(sq)) return false;
    }
    return true;
  });
  fc.exact = fe;
  return fc;
}

IterationBijection iteration_bijection(ExactPtr e, int a, int b) {
  IterationBijection out;
  const FunctorCategory fc = functor_exact_category(e, b);
  const auto outer = s_disc(fc.exact, a, ZeroPolicy::canonical);
  const auto target = s_iterated_disc(e, {a, b}, ZeroPolicy::canonical);
  const Shape& oa = outer->shape();
  const Shape& inner = fc.grids->shape();
  const Shape& ts = target->shape();
  out.source = outer->size();
  out.target = target->size();
  std::vector<char> hit(target->size(), 0);
  for (CellId x = 0; x < outer->size(); ++x) {
    const Diagram g = outer->diagram(x);
    Diagram d;
    d.objects.resize(ts.size());
    d.morphisms.resize(ts.edges.size());
    std::vector<Diagram> cells(oa.size());
    for (std::uint32_t p = 0; p < oa.size(); ++p) cells[p] = fc.grids->diagram(g.objects[p]);
    const auto split = [&](std::uint32_t q) {
      const auto& cc = ts.coords[q];
      return std::pair{oa.find({cc[0], cc[1]}), inner.find({cc[2], cc[3]})};
    };
    for (std::uint32_t q = 0; q < ts.size(); ++q) {
      const auto [p, r] = split(q);
      d.objects[q] = cells[p].objects[r];
    }
    for (std::uint32_t ed = 0; ed < ts.edges.size(); ++ed) {
      const auto [p0, r0] = split(ts.edges[ed].src);
      const auto [p1, r1] = split(ts.edges[ed].dst);
      d.morphisms[ed] = p0 == p1 ? cells[p0].morphisms[inner.edge_between(r0, r1)]
                                 : fc.components[g.morphisms[oa.edge_between(p0, p1)]][r0];
    }
    const CellId t = target->find(d);
    if (t == kNone) {
      out.well_defined = false;
      continue;
    }
    if (hit[t]) out.injective = false;
    hit[t] = 1;
  }
  out.images = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1));
  return out;
}

}  // namespace sdot::waldhausen
