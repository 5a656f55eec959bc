#include "sdot/waldhausen/low_degree.hpp"

#include <algorithm>
#include <map>

namespace sdot::waldhausen {

using fincat::Arrow;
using fincat::FinCategory;
using fincat::GroupoidFunctor;
using fincat::Shape;

std::shared_ptr<const DiagramFamily> exact_sequences(ExactPtr e, ZeroPolicy policy) {
  return DiagramFamily::enumerate(std::move(e), fincat::ses_shape(), policy);
}

std::shared_ptr<const DiagramFamily> bicartesian_squares(ExactPtr e, ZeroPolicy policy) {
  return DiagramFamily::enumerate(std::move(e), fincat::square_shape(), policy);
}

bool LowDegreeReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const Identification& i) { return i.pass(); });
}

namespace {

MorId unique_map(const FinCategory& c, ObjId a, ObjId b) {
  if (c.hom_size(a, b) != 1) fail(ErrorCode::configuration, "expected a unique map between a zero and an object");
  return c.hom_begin(a, b);
}

// Diagram on `shape` given its objects; edges come from `given` (keyed by
// endpoint positions) or are the unique maps at zero positions.
Diagram assemble(const ProtoExactStructure& e, const Shape& shape, std::vector<ObjId> objects,
                 const std::map<std::pair<std::uint32_t, std::uint32_t>, MorId>& given) {
  const FinCategory& c = e.category();
  Diagram d;
  d.objects = std::move(objects);
  for (const auto& ed : shape.edges) {
    const auto it = given.find({ed.src, ed.dst});
    d.morphisms.push_back(it != given.end() ? it->second : unique_map(c, d.objects[ed.src], d.objects[ed.dst]));
  }
  return d;
}

Arrow project(const Arrow& a, const std::vector<std::uint32_t>& positions) {
  Arrow out;
  for (std::uint32_t p : positions) out.push_back(a[p]);
  return out;
}

// The isomorphism G(x) -> G(y) in `g` whose components at `positions` are `given`.
Arrow extend_iso(const DiagramGroupoid& g, std::size_t x, std::size_t y, const std::vector<std::uint32_t>& positions,
                 const Arrow& given) {
  Arrow found;
  g.for_each_iso(x, y, [&](const Arrow& a) {
    if (project(a, positions) != given) return true;
    found = a;
    return false;
  });
  if (found.empty()) fail(ErrorCode::configuration, "isomorphism does not extend");
  return found;
}

Identification check(std::string name, const DiagramGroupoid& grids, const fincat::FiniteGroupoid& target,
                     const GroupoidFunctor& f, const GroupoidFunctor& g,
                     const std::function<bool(std::size_t, std::size_t)>& same_target) {
  Identification id;
  id.name = std::move(name);
  id.grid_count = grids.size();
  id.target_count = target.size();
  id.forward = fincat::check_groupoid_equivalence(grids, target, f);
  id.backward = fincat::check_groupoid_equivalence(target, grids, g);
  for (std::size_t t = 0; t < target.size(); ++t)
    if (!same_target(f.object(g.object(t)), t)) id.roundtrip = false;
  for (std::size_t x = 0; x < grids.size() && id.roundtrip; ++x)
    if (!grids.find_iso(g.object(f.object(x)), x)) id.roundtrip = false;
  std::vector<char> hit(target.size(), 0);
  for (std::size_t x = 0; x < grids.size(); ++x) {
    const std::size_t t = f.object(x);
    if (hit[t]) id.objects_bijective = false;
    hit[t] = 1;
  }
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) id.objects_bijective = false;
  return id;
}

// Explicit category groupoid whose arrows are single morphisms of `sub` given
// by their ids in the ambient category.
struct SubFunctorData {
  std::shared_ptr<const FinCategory> sub;
  std::map<MorId, MorId> to_sub;
};

SubFunctorData index_sub(const fincat::Subcategory& s) {
  SubFunctorData d{s.category, {}};
  for (MorId m = 0; m < s.category->num_morphisms(); ++m) d.to_sub[s.inclusion.on_morphisms[m]] = m;
  return d;
}

}  // namespace

LowDegreeReport low_degree_identifications(ExactPtr e, ZeroPolicy policy) {
  LowDegreeReport rep;
  const FinCategory& c = e->category();
  const ObjId z = e->canonical_zero();
  const auto cat = e->category_ptr();

  {  // S0 and the groupoid of zero objects
    const auto s0 = s_groupoid(e, 0, policy);
    std::vector<ObjId> zs = e->zeros();
    if (policy == ZeroPolicy::canonical) zs = {z};
    const auto zsub = fincat::full_subcategory(cat, zs);
    const auto zidx = index_sub(zsub);
    const fincat::CategoryGroupoid zg(zsub.category);
    std::map<ObjId, std::size_t> zindex;
    for (std::size_t t = 0; t < zs.size(); ++t) zindex[zs[t]] = t;
    const Shape sh = fincat::ar_shape(0);
    GroupoidFunctor f{[&](std::size_t x) { return zindex.at(s0->family().diagram(static_cast<CellId>(x)).objects[0]); },
                      [&](std::size_t, std::size_t, const Arrow& a) { return Arrow{zidx.to_sub.at(a[0])}; }};
    GroupoidFunctor g{[&](std::size_t t) -> std::size_t { return s0->family().find(assemble(*e, sh, {zs[t]}, {})); },
                      [&](std::size_t, std::size_t, const Arrow& a) { return Arrow{zsub.inclusion.on_morphisms[a[0]]}; }};
    auto id = check("S0 = zero objects", *s0, zg, f, g, [](std::size_t a, std::size_t b) { return a == b; });
    id.require_bijection = true;
    rep.items.push_back(std::move(id));
  }

  {  // S1 and the core, restricted to the objects the zero policy admits
    const auto s1 = s_groupoid(e, 1, policy);
    const auto core = fincat::core(cat);
    std::vector<ObjId> objs;
    for (ObjId a = 0; a < c.num_objects(); ++a)
      if (policy == ZeroPolicy::all || !e->is_zero(a) || a == z) objs.push_back(a);
    const auto kept = fincat::full_subcategory(core.category, objs);
    const fincat::CategoryGroupoid kg(kept.category);
    std::vector<MorId> kept_to_e(kept.category->num_morphisms());
    std::map<MorId, MorId> e_to_kept;
    for (MorId m = 0; m < kept_to_e.size(); ++m) {
      kept_to_e[m] = core.inclusion.on_morphisms[kept.inclusion.on_morphisms[m]];
      e_to_kept[kept_to_e[m]] = m;
    }
    std::map<ObjId, std::size_t> oindex;
    for (std::size_t t = 0; t < objs.size(); ++t) oindex[objs[t]] = t;
    const Shape sh = fincat::ar_shape(1);
    GroupoidFunctor f{[&](std::size_t x) { return oindex.at(s1->family().diagram(static_cast<CellId>(x)).objects[1]); },
                      [&](std::size_t, std::size_t, const Arrow& a) { return Arrow{e_to_kept.at(a[1])}; }};
    GroupoidFunctor g{[&](std::size_t t) -> std::size_t { return s1->family().find(assemble(*e, sh, {z, objs[t], z}, {})); },
                      [&](std::size_t, std::size_t, const Arrow& a) {
                        return Arrow{c.identity(z), kept_to_e[a[0]], c.identity(z)};
                      }};
    rep.items.push_back(check("S1 = core", *s1, kg, f, g, [](std::size_t a, std::size_t b) { return a == b; }));
  }

  {  // S2 and short exact sequences
    const auto s2 = s_groupoid(e, 2, policy);
    const auto ses_family = exact_sequences(e, policy);
    const DiagramGroupoid ses(ses_family);
    const Shape ar = fincat::ar_shape(2), sq = fincat::ses_shape();
    const std::uint32_t p01 = ar.find({0, 1}), p02 = ar.find({0, 2}), p12 = ar.find({1, 2});
    GroupoidFunctor f{[&](std::size_t x) -> std::size_t {
                        const Diagram g = s2->family().diagram(static_cast<CellId>(x));
                        const Diagram d = assemble(*e, sq, {g.objects[p01], g.objects[p02], z, g.objects[p12]},
                                                   {{{0, 1}, g.morphisms[ar.edge_between(p01, p02)]},
                                                    {{1, 3}, g.morphisms[ar.edge_between(p02, p12)]}});
                        return ses_family->find(d);
                      },
                      [&](std::size_t, std::size_t, const Arrow& a) {
                        return Arrow{a[p01], a[p02], c.identity(z), a[p12]};
                      }};
    GroupoidFunctor g{[&](std::size_t t) -> std::size_t {
                        const Diagram d = ses_family->diagram(static_cast<CellId>(t));
                        std::vector<ObjId> objs(ar.size(), z);
                        objs[p01] = d.objects[0];
                        objs[p02] = d.objects[1];
                        objs[p12] = d.objects[3];
                        return s2->family().find(assemble(*e, ar, objs,
                                                          {{{p01, p02}, d.morphisms[0]}, {{p02, p12}, d.morphisms[2]}}));
                      },
                      [&](std::size_t, std::size_t, const Arrow& a) {
                        Arrow out(6, c.identity(z));
                        out[p01] = a[0];
                        out[p02] = a[1];
                        out[p12] = a[3];
                        return out;
                      }};
    rep.items.push_back(check("S2 = exact sequences", *s2, ses, f, g, [](std::size_t a, std::size_t b) { return a == b; }));
  }

  {  // S3 and bicartesian squares
    const auto s3 = s_groupoid(e, 3, policy);
    const auto sq_family = bicartesian_squares(e, policy);
    const DiagramGroupoid sqg(sq_family);
    const Shape ar = fincat::ar_shape(3);
    const auto P = [&](int i, int j) { return ar.find({i, j}); };
    const std::vector<std::uint32_t> middle{P(0, 2), P(0, 3), P(1, 2), P(1, 3)};
    GroupoidFunctor f{[&](std::size_t x) -> std::size_t {
                        const Diagram g = s3->family().diagram(static_cast<CellId>(x));
                        Diagram d;
                        for (auto p : middle) d.objects.push_back(g.objects[p]);
                        d.morphisms = {g.morphisms[ar.edge_between(P(0, 2), P(0, 3))],
                                       g.morphisms[ar.edge_between(P(0, 2), P(1, 2))],
                                       g.morphisms[ar.edge_between(P(0, 3), P(1, 3))],
                                       g.morphisms[ar.edge_between(P(1, 2), P(1, 3))]};
                        return sq_family->find(d);
                      },
                      [&](std::size_t, std::size_t, const Arrow& a) { return project(a, middle); }};
    const auto build = [&](std::size_t t) -> std::size_t {
      const Diagram q = sq_family->diagram(static_cast<CellId>(t));
      // A01 by pullback of A02 ↠ A12 ↢ Z, A23 by pushout of A13 ↢ A12 ↠ Z
      const auto pb = fincat::complete_cospan_to_pullback(*e, q.morphisms[1], unique_map(c, z, q.objects[2]));
      const auto po = fincat::complete_span_to_pushout(*e, q.morphisms[3], unique_map(c, q.objects[2], z));
      std::vector<ObjId> objs(ar.size(), z);
      objs[P(0, 1)] = pb.tl;
      objs[P(0, 2)] = q.objects[0];
      objs[P(0, 3)] = q.objects[1];
      objs[P(1, 2)] = q.objects[2];
      objs[P(1, 3)] = q.objects[3];
      objs[P(2, 3)] = po.br;
      const Diagram g = assemble(*e, ar, objs,
                                 {{{P(0, 1), P(0, 2)}, pb.top},
                                  {{P(0, 2), P(0, 3)}, q.morphisms[0]},
                                  {{P(0, 2), P(1, 2)}, q.morphisms[1]},
                                  {{P(0, 3), P(1, 3)}, q.morphisms[2]},
                                  {{P(1, 2), P(1, 3)}, q.morphisms[3]},
                                  {{P(1, 3), P(2, 3)}, po.right}});
      const CellId id = s3->family().find(g);
      if (id == kNone) fail(ErrorCode::not_exact_closed, "completed square is not a 3-grid");
      return id;
    };
    GroupoidFunctor g{build, [&](std::size_t x, std::size_t y, const Arrow& a) {
                        return extend_iso(*s3, build(x), build(y), middle, a);
                      }};
    rep.items.push_back(check("S3 = bicartesian squares", *s3, sqg, f, g, [](std::size_t a, std::size_t b) { return a == b; }));
  }
  return rep;
}

}  // namespace sdot::waldhausen
