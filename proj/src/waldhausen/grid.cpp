#include "sdot/waldhausen/grid.hpp"

#include <algorithm>
#include <map>

#include "sdot/simpl/grid_iso.hpp"

namespace sdot::waldhausen {

using fincat::CompletionCache;
using fincat::FinCategory;
using fincat::Shape;
using fincat::ShapeMap;

std::shared_ptr<const DiagramFamily> s_disc(ExactPtr e, int k, ZeroPolicy policy, CompletionCache* cache) {
  if (k < 0) fail(ErrorCode::configuration, "S level must be nonnegative");
  return DiagramFamily::enumerate(std::move(e), fincat::ar_shape(k), policy, cache);
}

ShapeMap coface_map(int k, int i) {
  const auto delta = [i](int p) { return p < i ? p : p + 1; };
  return fincat::make_shape_map(fincat::ar_shape(k - 1), fincat::ar_shape(k), [&](const std::vector<int>& c) {
    return std::vector<int>{delta(c[0]), delta(c[1])};
  });
}

ShapeMap codegeneracy_map(int k, int i) {
  const auto sigma = [i](int p) { return p <= i ? p : p - 1; };
  return fincat::make_shape_map(fincat::ar_shape(k + 1), fincat::ar_shape(k), [&](const std::vector<int>& c) {
    return std::vector<int>{sigma(c[0]), sigma(c[1])};
  });
}

Diagram s_face(const FinCategory& c, const Diagram& g, int k, int i) {
  Diagram out;
  fincat::restrict_diagram(c, g, coface_map(k, i), out);
  return out;
}

Diagram s_degeneracy(const FinCategory& c, const Diagram& g, int k, int i) {
  Diagram out;
  fincat::restrict_diagram(c, g, codegeneracy_map(k, i), out);
  return out;
}

SConstruction s_simplicial(ExactPtr e, int N, ZeroPolicy policy) {
  if (N < 0) fail(ErrorCode::configuration, "S bound must be nonnegative");
  SConstruction sc;
  sc.exact = e;
  sc.policy = policy;
  CompletionCache cache(e);
  std::vector<std::size_t> sizes;
  for (int k = 0; k <= N; ++k) {
    sc.levels.push_back(s_disc(e, k, policy, &cache));
    sc.groupoids.push_back(std::make_shared<const DiagramGroupoid>(sc.levels.back()));
    sizes.push_back(sc.levels.back()->size());
  }
  auto& x = sc.simplicial;
  x.name = std::string("S(") + e->name() + (policy == ZeroPolicy::canonical ? ", canonical zeros)" : ")");
  x.allocate(N, sizes);
  const FinCategory& c = e->category();
  Diagram g, h;
  for (int k = 0; k <= N; ++k) {
    std::vector<ShapeMap> faces, degens;
    if (k >= 1)
      for (int i = 0; i <= k; ++i) faces.push_back(coface_map(k, i));
    if (k < N)
      for (int i = 0; i <= k; ++i) degens.push_back(codegeneracy_map(k, i));
    for (CellId id = 0; id < sizes[k]; ++id) {
      sc.levels[k]->decode(id, g);
      for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
        fincat::restrict_diagram(c, g, faces[i], h);
        const CellId t = sc.levels[k - 1]->find(h);
        if (t == kNone) fail(ErrorCode::not_exact_closed, "face of a grid is not a grid");
        x.d[k][i][id] = t;
      }
      for (int i = 0; i < static_cast<int>(degens.size()); ++i) {
        fincat::restrict_diagram(c, g, degens[i], h);
        const CellId t = sc.levels[k + 1]->find(h);
        if (t == kNone) fail(ErrorCode::not_exact_closed, "degeneracy of a grid is not a grid");
        x.s[k][i][id] = t;
      }
    }
  }
  std::vector<simpl::GridIsoStructure::Level> iso_levels;
  for (const auto& gp : sc.groupoids) iso_levels.push_back({gp, {}});
  x.iso = std::make_shared<simpl::GridIsoStructure>(std::move(iso_levels));
  x.describe_cell = [levels = sc.levels](int k, CellId id) { return levels[k]->describe(id); };
  return sc;
}

std::shared_ptr<const DiagramGroupoid> s_groupoid(ExactPtr e, int k, ZeroPolicy policy) {
  return std::make_shared<const DiagramGroupoid>(s_disc(std::move(e), k, policy));
}

Diagram row0(const Diagram& g, int k) {
  // row 0 of Ar[k] occupies positions 0..k; its horizontal edges come first
  static thread_local std::map<int, std::vector<std::uint32_t>> edges_of;
  auto& edges = edges_of[k];
  if (edges.empty() && k > 1) {
    const Shape s = fincat::ar_shape(k);
    for (int t = 1; t < k; ++t) edges.push_back(s.edge_between(s.find({0, t}), s.find({0, t + 1})));
  }
  Diagram out;
  for (int t = 1; t <= k; ++t) out.objects.push_back(g.objects[t]);
  for (std::uint32_t e : edges) out.morphisms.push_back(g.morphisms[e]);
  return out;
}

Diagram complete_seq_to_grid(const ProtoExactStructure& e, const Diagram& chain, TieBreak tie, CompletionCache* cache) {
  const FinCategory& c = e.category();
  const int k = static_cast<int>(chain.objects.size());
  const Shape s = fincat::ar_shape(k);
  Diagram g;
  g.objects.assign(s.size(), kNone);
  g.morphisms.assign(s.edges.size(), kNone);
  const ObjId z = e.canonical_zero();
  const auto pos = [&](int i, int j) { return s.find({i, j}); };
  const auto edge = [&](int i, int j, int p, int q) { return s.edge_between(pos(i, j), pos(p, q)); };
  const auto unique = [&](ObjId a, ObjId b) {
    if (c.hom_size(a, b) != 1) fail(ErrorCode::configuration, "zero object without a unique map");
    return c.hom_begin(a, b);
  };
  for (int i = 0; i <= k; ++i) g.objects[pos(i, i)] = z;
  for (int t = 1; t <= k; ++t) g.objects[pos(0, t)] = chain.objects[t - 1];
  if (k >= 1) g.morphisms[edge(0, 0, 0, 1)] = unique(z, chain.objects[0]);
  for (int t = 1; t < k; ++t) g.morphisms[edge(0, t, 0, t + 1)] = chain.morphisms[t - 1];
  for (int i = 0; i < k; ++i) {
    g.morphisms[edge(i, i + 1, i + 1, i + 1)] = unique(g.objects[pos(i, i + 1)], z);
    for (int j = i + 1; j < k; ++j) {
      const MorId top = g.morphisms[edge(i, j, i, j + 1)], left = g.morphisms[edge(i, j, i + 1, j)];
      fincat::Square sq;
      if (cache) {
        const auto& all = cache->completions(top, left);
        if (all.empty()) fail(ErrorCode::not_exact_closed, "span without a bicartesian completion");
        sq = tie == TieBreak::least ? all.front() : all.back();
      } else {
        sq = fincat::complete_span_to_pushout(e, top, left, tie);
      }
      g.objects[pos(i + 1, j + 1)] = sq.br;
      g.morphisms[edge(i, j + 1, i + 1, j + 1)] = sq.right;
      g.morphisms[edge(i + 1, j, i + 1, j + 1)] = sq.bottom;
    }
  }
  return g;
}

fincat::EquivalenceReport row0_equivalence(ExactPtr e, int k, ZeroPolicy policy) {
  const auto grids = s_groupoid(e, k, policy);
  const auto chains = std::make_shared<const DiagramGroupoid>(seq_disc(e, k, policy));
  const Shape s = fincat::ar_shape(k);
  fincat::GroupoidFunctor f;
  f.object = [&](std::size_t x) -> std::size_t {
    const CellId id = chains->family().find(row0(grids->family().diagram(static_cast<CellId>(x)), k));
    if (id == kNone) fail(ErrorCode::configuration, "row 0 of a grid is not a chain");
    return id;
  };
  f.arrow = [k](std::size_t, std::size_t, const fincat::Arrow& a) {
    return fincat::Arrow(a.begin() + 1, a.begin() + 1 + k);
  };
  return fincat::check_groupoid_equivalence(*grids, *chains, f);
}

EnumerationAudit enumeration_cross_check(ExactPtr e, int k, ZeroPolicy policy) {
  EnumerationAudit a;
  const auto grids = s_disc(e, k, policy);
  a.backtracking = grids->size();
  const auto chains = seq_disc(e, k, policy);
  a.chains = chains->size();
  CompletionCache cache(e);
  std::vector<Diagram> completions;
  Diagram ch;
  for (CellId id = 0; id < chains->size(); ++id) {
    chains->decode(id, ch);
    completions.push_back(complete_seq_to_grid(*e, ch, TieBreak::least, &cache));
    if (row0(completions.back(), k) != ch) a.row0_roundtrip = false;
    if (grids->find(completions.back()) == kNone) a.completions_in_family = false;
  }
  // positions outside row 0 move freely under isomorphisms fixing row 0
  const Shape s = fincat::ar_shape(k);
  std::vector<char> fixed(s.size(), 0);
  for (int t = 1; t <= k; ++t) fixed[s.find({0, t})] = 1;
  const auto own = DiagramFamily::from_diagrams(e, s, policy, completions);
  const DiagramGroupoid g(own);
  for (CellId id = 0; id < own->size(); ++id) {
    const auto r = g.relative_symmetry(id, fixed);
    if (r.stabilizer != 1) a.stabilizers_trivial = false;
    a.completions_total += r.families / std::max<std::uint64_t>(r.stabilizer, 1);
  }
  if (own->size() != a.chains) a.row0_roundtrip = false;
  return a;
}

std::string staircase(const ProtoExactStructure& e, int k, const Diagram& g) {
  const Shape s = fincat::ar_shape(k);
  const FinCategory& c = e.category();
  std::size_t w = 1;
  for (ObjId a : g.objects) w = std::max(w, c.object_label(a).size());
  std::string out;
  for (int i = 0; i <= k; ++i) {
    out += std::string(static_cast<std::size_t>(i) * (w + 4), ' ');
    for (int j = i; j <= k; ++j) {
      std::string l = c.object_label(g.objects[s.find({i, j})]);
      l.resize(w, ' ');
      out += l;
      if (j < k) out += " >->";
    }
    out += '\n';
  }
  return out;
}

}  // namespace sdot::waldhausen
