#include "sdot/simpl/checks.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace sdot::simpl {

std::vector<std::pair<CellId, CellId>> fiber_product(const std::vector<CellId>& f, const std::vector<CellId>& g) {
  std::unordered_map<CellId, std::vector<CellId>> by_image;
  for (CellId b = 0; b < g.size(); ++b) by_image[g[b]].push_back(b);
  std::vector<std::pair<CellId, CellId>> out;
  for (CellId a = 0; a < f.size(); ++a) {
    auto it = by_image.find(f[a]);
    if (it == by_image.end()) continue;
    for (CellId b : it->second) out.emplace_back(a, b);
  }
  charge(out.size(), "fiber product");
  return out;
}

const char* to_string(Family f) {
  switch (f) {
    case Family::all: return "all";
    case Family::lower: return "lower";
    case Family::upper: return "upper";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "all") return Family::all;
  if (s == "lower") return Family::lower;
  if (s == "upper") return Family::upper;
  fail(ErrorCode::configuration, "unknown family '" + s + "' (all, lower, upper)");
}

std::vector<std::vector<int>> SubdivisionSpec::pieces() const {
  std::vector<int> a, b;
  for (int v = i; v <= j; ++v) a.push_back(v);
  for (int v = 0; v <= n; ++v)
    if (v <= i || v >= j) b.push_back(v);
  return {a, b};
}

std::vector<SubdivisionSpec> subdivisions(int n, Family f) {
  std::vector<SubdivisionSpec> out;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 2; j <= n; ++j) {
      SubdivisionSpec s{n, i, j};
      if (s.valid() && s.in(f)) out.push_back(s);
    }
  return out;
}

bool CheckReport::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

bool CheckReport::strict_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.strict_pass; });
}

namespace {

std::vector<int> local_positions(const std::vector<int>& piece, const std::vector<int>& sub) {
  std::vector<int> out;
  for (int v : sub) out.push_back(static_cast<int>(std::lower_bound(piece.begin(), piece.end(), v) - piece.begin()));
  return out;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

unsigned width(std::size_t count) { return count <= 1 ? 0 : static_cast<unsigned>(std::bit_width(count - 1)); }

struct Plan {
  const TruncSimplicialSet& x;
  int n;
  std::vector<std::vector<int>> pieces;
  std::vector<int> level;
  std::vector<std::vector<int>> glue;            // glue[t]: P_t ∩ P_{t+1}
  std::vector<std::vector<CellId>> left, right;  // piece t cell -> glue cell seen from t (left) or t+1 (right)
  std::vector<unsigned> bits;

  Plan(const TruncSimplicialSet& xx, int nn, std::vector<std::vector<int>> ps) : x(xx), n(nn), pieces(std::move(ps)) {
    if (n > x.N) fail(ErrorCode::truncation, "level " + std::to_string(n) + " exceeds the truncation " + std::to_string(x.N));
    unsigned total = 0;
    for (auto& p : pieces) {
      std::sort(p.begin(), p.end());
      if (p.empty() || p.front() < 0 || p.back() > n) fail(ErrorCode::configuration, "piece outside [n]");
      level.push_back(static_cast<int>(p.size()) - 1);
      bits.push_back(width(x.size(level.back())));
      total += bits.back();
    }
    if (total > 64) fail(ErrorCode::scale, "fiber-product tuples need more than 64 bits");
    for (std::size_t t = 0; t + 1 < pieces.size(); ++t) {
      glue.push_back(intersect(pieces[t], pieces[t + 1]));
      if (glue.back().empty()) fail(ErrorCode::configuration, "consecutive pieces must overlap");
      left.push_back(restrict_level(level[t], local_positions(pieces[t], glue[t])));
      right.push_back(restrict_level(level[t + 1], local_positions(pieces[t + 1], glue[t])));
    }
  }

  std::vector<CellId> restrict_level(int m, const std::vector<int>& local) const { return x.restrict_all(m, local); }

  std::uint64_t pack(const std::vector<CellId>& tuple) const {
    std::uint64_t k = 0;
    for (std::size_t t = 0; t < tuple.size(); ++t) k = bits[t] ? (k << bits[t]) | tuple[t] : k;
    return k;
  }

  bool in_product(const std::vector<CellId>& tuple) const {
    if (tuple.size() != pieces.size()) return false;
    for (std::size_t t = 0; t < tuple.size(); ++t)
      if (tuple[t] >= x.size(level[t])) return false;
    for (std::size_t t = 0; t + 1 < tuple.size(); ++t)
      if (left[t][tuple[t]] != right[t][tuple[t + 1]]) return false;
    return true;
  }

  std::uint64_t product_size() const {
    std::vector<unsigned __int128> w(x.size(level[0]), 1);
    for (std::size_t t = 0; t + 1 < pieces.size(); ++t) {
      std::vector<unsigned __int128> by_glue(x.size(static_cast<int>(glue[t].size()) - 1), 0);
      for (CellId c = 0; c < w.size(); ++c) by_glue[left[t][c]] += w[c];
      std::vector<unsigned __int128> next(x.size(level[t + 1]));
      for (CellId c = 0; c < next.size(); ++c) next[c] = by_glue[right[t][c]];
      w.swap(next);
    }
    unsigned __int128 total = 0;
    for (auto v : w) total += v;
    return total > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(total);
  }
};

}  // namespace

Verdict subdivision_check(const TruncSimplicialSet& x, int n, const std::vector<std::vector<int>>& pieces_in,
                          bool use_iso) {
  Plan plan(x, n, pieces_in);
  Verdict v;
  v.n = n;
  v.pieces = plan.pieces;
  v.groupoid = use_iso && x.iso != nullptr;
  v.source_size = x.size(n);
  v.target_size = plan.product_size();

  std::vector<std::vector<CellId>> legs;
  for (const auto& p : plan.pieces) legs.push_back(x.restrict_all(n, p));
  std::vector<std::pair<std::uint64_t, CellId>> image(x.size(n));
  std::vector<CellId> tuple(plan.pieces.size());
  for (CellId c = 0; c < image.size(); ++c) {
    for (std::size_t t = 0; t < legs.size(); ++t) tuple[t] = legs[t][c];
    image[c] = {plan.pack(tuple), c};
  }
  std::sort(image.begin(), image.end());
  std::size_t distinct = 0;
  for (std::size_t k = 0; k < image.size(); ++k) distinct += (k == 0 || image[k].first != image[k - 1].first);
  v.image_size = distinct;
  const bool surjective = distinct == v.target_size;
  const bool injective = distinct == image.size();
  v.strict_pass = surjective && injective;

  const auto tuple_of = [&](CellId c) {
    std::vector<CellId> t(legs.size());
    for (std::size_t k = 0; k < legs.size(); ++k) t[k] = legs[k][c];
    return t;
  };

  if (!surjective) {
    // walk the fiber product until a tuple without preimage turns up
    std::vector<CellId> cur(plan.pieces.size());
    bool found = false;
    std::vector<std::vector<std::vector<CellId>>> by_right(plan.glue.size());
    for (std::size_t t = 0; t < plan.glue.size(); ++t) {
      by_right[t].assign(x.size(static_cast<int>(plan.glue[t].size()) - 1), {});
      for (CellId c = 0; c < plan.right[t].size(); ++c) by_right[t][plan.right[t][c]].push_back(c);
    }
    std::function<void(std::size_t)> walk = [&](std::size_t t) {
      if (found) return;
      if (t == cur.size()) {
        const std::uint64_t k = plan.pack(cur);
        const auto it = std::lower_bound(image.begin(), image.end(), std::make_pair(k, CellId{0}));
        if (it == image.end() || it->first != k) {
          found = true;
          v.witnesses.push_back({"no_preimage", n, {}, cur, "fiber-product element outside the image"});
        }
        return;
      }
      if (t == 0) {
        for (CellId c = 0; c < x.size(plan.level[0]) && !found; ++c) {
          cur[0] = c;
          walk(1);
        }
        return;
      }
      for (CellId c : by_right[t - 1][plan.left[t - 1][cur[t - 1]]]) {
        cur[t] = c;
        walk(t + 1);
        if (found) return;
      }
    };
    walk(0);
  }

  bool fibers_ok = true;
  for (std::size_t a = 0; a < image.size();) {
    std::size_t b = a + 1;
    while (b < image.size() && image[b].first == image[a].first) ++b;
    const std::size_t fiber = b - a;
    const CellId rep = image[a].second;
    if (!v.groupoid) {
      if (fiber > 1 && fibers_ok) {
        fibers_ok = false;
        v.witnesses.push_back({"not_injective", n, {rep, image[a + 1].second}, tuple_of(rep), "two cells share an image"});
      }
    } else {
      const auto rel = x.iso->relative_symmetry(n, rep, plan.pieces);
      if (rel.stabilizer != 1) {
        if (fibers_ok)
          v.witnesses.push_back({"extra_automorphism", n, {rep}, tuple_of(rep),
                                 "non-identity automorphism fixing every piece"});
        fibers_ok = false;
      } else if (rel.families != fiber) {
        if (fibers_ok) {
          for (std::size_t k = a + 1; k < b; ++k)
            if (!x.iso->relatively_isomorphic(n, rep, image[k].second, plan.pieces)) {
              v.witnesses.push_back({"not_injective", n, {rep, image[k].second}, tuple_of(rep),
                                     "equal images, not isomorphic relative to the pieces"});
              break;
            }
        }
        fibers_ok = false;
      }
    }
    a = b;
  }
  v.pass = surjective && (v.groupoid ? fibers_ok : injective);
  std::string name = "n=" + std::to_string(n) + " {";
  for (std::size_t t = 0; t < plan.pieces.size(); ++t) {
    if (t) name += "|";
    for (int q : plan.pieces[t]) name += std::to_string(q);
  }
  v.name = name + "}";
  return v;
}

bool verify_witness(const TruncSimplicialSet& x, const Verdict& v, const Witness& w) {
  Plan plan(x, v.n, v.pieces);
  std::vector<std::vector<CellId>> legs;
  for (const auto& p : plan.pieces) legs.push_back(x.restrict_all(v.n, p));
  const auto image_of = [&](CellId c) {
    std::vector<CellId> t(legs.size());
    for (std::size_t k = 0; k < legs.size(); ++k) t[k] = legs[k][c];
    return t;
  };
  if (w.kind == "no_preimage") {
    if (!plan.in_product(w.target)) return false;
    for (CellId c = 0; c < x.size(v.n); ++c)
      if (image_of(c) == w.target) return false;
    return true;
  }
  for (CellId c : w.cells)
    if (c >= x.size(v.n)) return false;
  if (w.kind == "not_injective") {
    if (w.cells.size() != 2 || w.cells[0] == w.cells[1]) return false;
    if (image_of(w.cells[0]) != image_of(w.cells[1])) return false;
    if (v.groupoid) return x.iso && !x.iso->relatively_isomorphic(v.n, w.cells[0], w.cells[1], v.pieces);
    return true;
  }
  if (w.kind == "extra_automorphism")
    return v.groupoid && x.iso && w.cells.size() == 1 &&
           x.iso->relative_symmetry(v.n, w.cells[0], v.pieces).stabilizer > 1;
  return false;
}

CheckReport segal_check(const TruncSimplicialSet& x, int N) {
  if (N > x.N) fail(ErrorCode::truncation, "Segal check to level " + std::to_string(N) + " exceeds the truncation");
  CheckReport r;
  r.condition = "segal";
  r.mode = x.iso ? "groupoid" : "strict";
  r.from = 2;
  r.to = N;
  for (int n = 2; n <= N; ++n) {
    std::vector<std::vector<int>> spine;
    for (int k = 0; k < n; ++k) spine.push_back({k, k + 1});
    r.verdicts.push_back(subdivision_check(x, n, spine));
  }
  return r;
}

CheckReport two_segal_check(const TruncSimplicialSet& x, int N, Family family) {
  if (N > x.N) fail(ErrorCode::truncation, "2-Segal check to level " + std::to_string(N) + " exceeds the truncation");
  CheckReport r;
  r.condition = std::string("2segal:") + to_string(family);
  r.mode = x.iso ? "groupoid" : "strict";
  r.from = 3;
  r.to = N;
  for (int n = 3; n <= N; ++n)
    for (const auto& s : subdivisions(n, family)) {
      Verdict v = subdivision_check(x, n, s.pieces());
      v.name = "n=" + std::to_string(n) + " (" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
      r.verdicts.push_back(std::move(v));
    }
  return r;
}

CheckReport pentagon_audit(const TruncSimplicialSet& x) {
  if (x.N < 4) fail(ErrorCode::truncation, "the pentagon audit needs level 4");
  CheckReport r;
  r.condition = "pentagon";
  r.mode = x.iso ? "groupoid" : "strict";
  r.from = r.to = 4;
  for (int v = 0; v < 5; ++v) {
    std::vector<std::vector<int>> tri;
    for (int k = 1; k <= 3; ++k) {
      std::vector<int> t{v, (v + k) % 5, (v + k + 1) % 5};
      std::sort(t.begin(), t.end());
      tri.push_back(t);
    }
    Verdict ver = subdivision_check(x, 4, tri);
    ver.name = "fan at " + std::to_string(v);
    r.verdicts.push_back(std::move(ver));
  }
  return r;
}

}  // namespace sdot::simpl
