#include "sdot/sigma/conditions.hpp"

#include <algorithm>

#include "sdot/fincat/diagram.hpp"
#include "sdot/simpl/checks.hpp"

namespace sdot::sigma {

bool ConditionReport::pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
}

const Clause& ConditionReport::clause(const std::string& name) const {
  for (const auto& c : clauses)
    if (c.name == name) return c;
  fail(ErrorCode::configuration, "no clause " + name + " in " + condition);
}

const char* to_string(Stability s) { return s == Stability::full ? "full" : "semi"; }

Stability parse_stability(const std::string& s) {
  if (s == "full") return Stability::full;
  if (s == "semi") return Stability::semi;
  fail(ErrorCode::configuration, "stability mode must be full or semi, not " + s);
}

namespace {

void witness(Clause& c, std::string w) {
  c.pass = false;
  if (c.witnesses.size() < 8) c.witnesses.push_back(std::move(w));
}

// Counts preimages of every codomain element under `image` over `domain` pairs.
template <class Describe>
void bijection(Clause& c, std::size_t codomain, const std::vector<CellId>& image, Describe&& describe) {
  c.domain = image.size();
  c.codomain = codomain;
  std::vector<std::uint32_t> hits(codomain, 0);
  for (CellId y : image) ++hits[y];
  for (CellId y = 0; y < codomain; ++y) {
    if (hits[y] == 0) witness(c, "no preimage for " + describe(y));
    if (hits[y] > 1) witness(c, std::to_string(hits[y]) + " preimages for " + describe(y));
  }
}

void need(const SigmaSet& x, int degree, const char* what) {
  if (x.N < degree)
    fail(ErrorCode::truncation, std::string(what) + " needs degree " + std::to_string(degree) + ", " + x.name +
                                    " has " + std::to_string(x.N));
}

}  // namespace

ConditionReport check_pointedness(const SigmaSet& x) {
  need(x, 2, "pointedness");
  ConditionReport rep;
  rep.condition = "pointedness";
  const auto obj = [&](CellId y) { return x.describe({0, 0}, y); };
  {
    Clause c;
    c.name = "horizontal";
    std::vector<CellId> image;
    for (CellId z = 0; z < x.aug_size; ++z)
      for (CellId e = 0; e < x.size(0, 1); ++e)
        if (x.face(1, 0, 1, 1, e) == x.aug[z]) image.push_back(x.face(1, 0, 1, 0, e));
    bijection(c, x.size(0, 0), image, obj);
    rep.clauses.push_back(std::move(c));
  }
  {
    Clause c;
    c.name = "vertical";
    std::vector<CellId> image;
    for (CellId z = 0; z < x.aug_size; ++z)
      for (CellId e = 0; e < x.size(1, 0); ++e)
        if (x.face(0, 1, 0, 0, e) == x.aug[z]) image.push_back(x.face(0, 1, 0, 1, e));
    bijection(c, x.size(0, 0), image, obj);
    rep.clauses.push_back(std::move(c));
  }
  return rep;
}

namespace {

// Square -> (vertical edge, horizontal edge) along row `row` and column `col`,
// glued at the corner (row, col).
Clause corner_clause(const SigmaSet& x, const char* name, int corner) {
  Clause c;
  c.name = name;
  // corner 0: left column (back d1), top row (front d1), vertex (0,0)
  // corner 1: right column (back d0), bottom row (front d0), vertex (1,1)
  const int drop = corner == 0 ? 1 : 0;
  std::vector<CellId> vert(x.size(1, 0)), horiz(x.size(0, 1));
  // vertex of a vertical edge: source (front d1) or target (front d0)
  for (CellId v = 0; v < vert.size(); ++v) vert[v] = x.face(0, 1, 0, drop, v);
  for (CellId h = 0; h < horiz.size(); ++h) horiz[h] = x.face(1, 0, 1, drop, h);
  const auto pairs = simpl::fiber_product(vert, horiz);
  std::vector<std::pair<CellId, CellId>> sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  std::vector<CellId> image;
  for (CellId q = 0; q < x.size(1, 1); ++q) {
    const std::pair<CellId, CellId> key{x.face(1, 1, 1, drop, q), x.face(0, 1, 1, drop, q)};
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
    if (it == sorted.end() || *it != key) fail(ErrorCode::configuration, "square boundary outside the fiber product");
    image.push_back(static_cast<CellId>(it - sorted.begin()));
  }
  bijection(c, sorted.size(), image, [&](CellId p) {
    return std::string(corner == 0 ? "span (" : "cospan (") + x.describe({1, 0}, sorted[p].first) + "; " +
           x.describe({0, 1}, sorted[p].second) + ")";
  });
  // name the squares sharing a boundary
  if (!c.pass) {
    std::vector<std::vector<CellId>> by_pair(sorted.size());
    for (CellId q = 0; q < image.size(); ++q) by_pair[image[q]].push_back(q);
    for (const auto& qs : by_pair)
      if (qs.size() > 1 && c.witnesses.size() < 8) {
        std::string s = "squares";
        for (CellId q : qs) s += " " + x.describe({1, 1}, q);
        c.witnesses.push_back(s);
      }
  }
  return c;
}

// Restriction of squares to the corner, as an index into the sorted fiber product.
struct Corner {
  std::vector<std::pair<CellId, CellId>> pairs;
  std::vector<CellId> image;
};

Corner corner_map(const SigmaSet& x, int corner) {
  const int drop = corner == 0 ? 1 : 0;
  std::vector<CellId> vert(x.size(1, 0)), horiz(x.size(0, 1));
  for (CellId v = 0; v < vert.size(); ++v) vert[v] = x.face(0, 1, 0, drop, v);
  for (CellId h = 0; h < horiz.size(); ++h) horiz[h] = x.face(1, 0, 1, drop, h);
  Corner out;
  out.pairs = simpl::fiber_product(vert, horiz);
  std::sort(out.pairs.begin(), out.pairs.end());
  for (CellId q = 0; q < x.size(1, 1); ++q) {
    const std::pair<CellId, CellId> key{x.face(1, 1, 1, drop, q), x.face(0, 1, 1, drop, q)};
    const auto it = std::lower_bound(out.pairs.begin(), out.pairs.end(), key);
    if (it == out.pairs.end() || *it != key) fail(ErrorCode::configuration, "square boundary outside the fiber product");
    out.image.push_back(static_cast<CellId>(it - out.pairs.begin()));
  }
  return out;
}

Clause groupoid_corner_clause(const ExactNerve& nv, const char* name, int corner) {
  const SigmaSet& x = *nv.set;
  Clause c;
  c.name = name;
  const Corner cm = corner_map(x, corner);
  c.domain = cm.image.size();
  c.codomain = cm.pairs.size();
  const fincat::DiagramGroupoid g(nv.levels[SigmaSet::index(1, 1)]);
  const auto& shape = g.family().shape();
  std::vector<char> fixed(shape.size(), 0);
  const std::vector<std::vector<int>> kept =
      corner == 0 ? std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}} : std::vector<std::vector<int>>{{1, 1}, {1, 0}, {0, 1}};
  for (const auto& p : kept) fixed[shape.find(p)] = 1;
  std::vector<std::vector<CellId>> fibers(cm.pairs.size());
  for (CellId q = 0; q < cm.image.size(); ++q) fibers[cm.image[q]].push_back(q);
  const auto describe = [&](CellId p) {
    return std::string(corner == 0 ? "span (" : "cospan (") + x.describe({1, 0}, cm.pairs[p].first) + "; " +
           x.describe({0, 1}, cm.pairs[p].second) + ")";
  };
  for (CellId p = 0; p < fibers.size(); ++p) {
    const auto& f = fibers[p];
    if (f.empty()) {
      witness(c, "no preimage for " + describe(p));
      continue;
    }
    for (std::size_t i = 1; i < f.size(); ++i)
      if (!g.relatively_isomorphic(f[0], f[i], fixed)) {
        witness(c, "squares " + x.describe({1, 1}, f[0]) + " " + x.describe({1, 1}, f[i]) +
                       " not isomorphic relative to " + describe(p));
        break;
      }
    if (g.relative_symmetry(f[0], fixed, 2).stabilizer > 1)
      witness(c, "square " + x.describe({1, 1}, f[0]) + " has an automorphism fixing " + describe(p));
  }
  return c;
}

}  // namespace

ConditionReport check_stability(const ExactNerve& nv, Stability mode) {
  need(*nv.set, 3, "stability");
  ConditionReport rep;
  rep.condition = std::string("stability:") + to_string(mode);
  rep.mode = "groupoid";
  rep.clauses.push_back(groupoid_corner_clause(nv, "span", 0));
  if (mode == Stability::full) rep.clauses.push_back(groupoid_corner_clause(nv, "cospan", 1));
  return rep;
}

ConditionReport check_stability(const SigmaSet& x, Stability mode) {
  need(x, 3, "stability");
  ConditionReport rep;
  rep.condition = std::string("stability:") + to_string(mode);
  rep.clauses.push_back(corner_clause(x, "span", 0));
  if (mode == Stability::full) rep.clauses.push_back(corner_clause(x, "cospan", 1));
  return rep;
}

}  // namespace sdot::sigma
