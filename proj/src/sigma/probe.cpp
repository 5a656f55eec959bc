#include "sdot/sigma/probe.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sdot::sigma {

namespace {

std::size_t num_index(int N) { return N >= 1 ? SigmaSet::index(0, N - 1) + static_cast<std::size_t>(N) : 0; }

template <class F>
void for_each_obj(int N, F&& f) {
  for (int m = 0; m + 1 <= N; ++m)
    for (int a = 0; a <= m; ++a) f(a, m - a);
}

}  // namespace

int Probe::max_degree() const {
  int m = 0;
  for (const auto& g : generators) m = std::max(m, p_degree(g.obj));
  return m;
}

std::size_t Probe::count_at(const SigmaObj& o) const {
  return static_cast<std::size_t>(std::count_if(generators.begin(), generators.end(),
                                                [&](const Generator& g) { return g.obj == o; }));
}

Probe make_probe(SigmaSet a) {
  Probe p;
  p.set = std::move(a);
  const SigmaSet& x = p.set;
  p.routes.assign(num_index(x.N), {});
  for (CellId z = 0; z < x.aug_size; ++z) p.generators.push_back({{-1, -1}, z});
  for_each_obj(x.N, [&](int a, int b) {
    auto& r = p.routes[SigmaSet::index(a, b)];
    r.assign(x.size(a, b), {});
    std::vector<char> known(x.size(a, b), 0);
    for (CellId z = 0; z < x.aug_size; ++z) {
      const CellId c = x.aug_at(a, b, z);
      if (known[c]) continue;
      known[c] = 1;
      r[c] = {Probe::Route::augmentation, z, 0, 0, kNone};
    }
    for (int t = 0; t < 2; ++t) {
      const int pa = a - (t == 0), pb = b - (t == 1);
      if (pa < 0 || pb < 0) continue;
      const int k = t == 0 ? pa : pb;
      for (int i = 0; i <= k; ++i)
        for (CellId src = 0; src < x.size(pa, pb); ++src) {
          const CellId c = x.degeneracy(t, pa, pb, i, src);
          if (known[c]) continue;
          known[c] = 1;
          r[c] = {Probe::Route::degeneracy, 0, t, i, src};
        }
    }
    for (CellId c = 0; c < x.size(a, b); ++c)
      if (!known[c]) {
        r[c] = {Probe::Route::generator, static_cast<std::uint32_t>(p.generators.size()), 0, 0, kNone};
        p.generators.push_back({{a, b}, c});
      }
  });
  return p;
}

ProbePtr p_delta(int k, int degree) {
  if (k < 0) fail(ErrorCode::configuration, "simplex dimension must be nonnegative");
  const int D = degree < 0 ? k + 1 : degree;
  auto y = simpl::standard_simplex(k, D);
  y.name = "D[" + std::to_string(k) + "]";
  auto p = std::make_shared<Probe>(make_probe(path_space(y)));
  p->set.name = "PD[" + std::to_string(k) + "]";
  p->ks = {k};
  p->vertices = [k](const SigmaObj& o, CellId c) {
    return std::vector<std::vector<int>>{simpl::simplex_vertices(k, p_degree(o), c)};
  };
  p->locate = [k](const SigmaObj&, const std::vector<std::vector<int>>& v) { return simpl::simplex_cell(k, v[0]); };
  return p;
}

namespace {

// Poset maps [m] -> ∏[k_t], lexicographic by the flattened vertex sequence.
struct DiagonalSimplex {
  std::vector<int> ks;
  std::vector<std::vector<std::vector<int>>> cells;  // [m][cell] flattened (m+1)*n entries
  std::vector<std::map<std::vector<int>, CellId>> index;
};

DiagonalSimplex diagonal_cells(const std::vector<int>& ks, int D) {
  DiagonalSimplex ds;
  ds.ks = ks;
  const std::size_t n = ks.size();
  std::vector<std::vector<int>> points;  // all tuples, lexicographic
  std::vector<int> t(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t u) {
    if (u == n) {
      points.push_back(t);
      return;
    }
    for (int v = 0; v <= ks[u]; ++v) {
      t[u] = v;
      rec(u + 1);
    }
  };
  rec(0);
  const auto leq = [&](const std::vector<int>& x, const std::vector<int>& y) {
    for (std::size_t u = 0; u < n; ++u)
      if (x[u] > y[u]) return false;
    return true;
  };
  ds.cells.resize(D + 1);
  ds.index.resize(D + 1);
  std::vector<int> seq;
  std::function<void(int, int)> chain = [&](int m, int len) {
    if (len == m + 1) {
      ds.index[m][seq] = static_cast<CellId>(ds.cells[m].size());
      ds.cells[m].push_back(seq);
      return;
    }
    for (const auto& pt : points) {
      if (len > 0 && !leq(std::vector<int>(seq.end() - static_cast<long>(n), seq.end()), pt)) continue;
      seq.insert(seq.end(), pt.begin(), pt.end());
      chain(m, len + 1);
      seq.resize(seq.size() - n);
    }
  };
  for (int m = 0; m <= D; ++m) {
    charge(1, "diagonal simplex");
    chain(m, 0);
  }
  return ds;
}

}  // namespace

ProbePtr p_iterated_delta(const std::vector<int>& ks, int degree) {
  if (ks.empty()) fail(ErrorCode::configuration, "need at least one simplex");
  int total = 0;
  for (int k : ks) {
    if (k < 0) fail(ErrorCode::configuration, "simplex dimension must be nonnegative");
    total += k;
  }
  const int D = degree < 0 ? total + 1 : degree;
  const std::size_t n = ks.size();
  auto ds = std::make_shared<DiagonalSimplex>(diagonal_cells(ks, D));
  simpl::TruncSimplicialSet y;
  std::vector<std::size_t> sizes;
  for (int m = 0; m <= D; ++m) sizes.push_back(ds->cells[m].size());
  y.allocate(D, sizes);
  for (int m = 0; m <= D; ++m)
    for (CellId c = 0; c < sizes[m]; ++c) {
      const auto& v = ds->cells[m][c];
      for (int i = 0; i <= m && m >= 1; ++i) {
        std::vector<int> w;
        for (int r = 0; r <= m; ++r)
          if (r != i) w.insert(w.end(), v.begin() + static_cast<long>(r * n), v.begin() + static_cast<long>((r + 1) * n));
        y.d[m][i][c] = ds->index[m - 1].at(w);
      }
      for (int i = 0; i <= m && m < D; ++i) {
        std::vector<int> w;
        for (int r = 0; r <= m; ++r)
          for (int rep = 0; rep < (r == i ? 2 : 1); ++rep)
            w.insert(w.end(), v.begin() + static_cast<long>(r * n), v.begin() + static_cast<long>((r + 1) * n));
        y.s[m][i][c] = ds->index[m + 1].at(w);
      }
    }
  std::string name = "D[";
  for (std::size_t t = 0; t < n; ++t) name += (t ? "," : "") + std::to_string(ks[t]);
  y.name = name + "]";
  auto p = std::make_shared<Probe>(make_probe(path_space(y)));
  p->set.name = "P" + y.name;
  p->ks = ks;
  p->vertices = [ds, n](const SigmaObj& o, CellId c) {
    const int m = p_degree(o);
    std::vector<std::vector<int>> out(n);
    const auto& v = ds->cells[m][c];
    for (int r = 0; r <= m; ++r)
      for (std::size_t t = 0; t < n; ++t) out[t].push_back(v[r * n + t]);
    return out;
  };
  p->locate = [ds, n](const SigmaObj& o, const std::vector<std::vector<int>>& comps) {
    std::vector<int> v;
    for (std::size_t r = 0; r < comps[0].size(); ++r)
      for (std::size_t t = 0; t < n; ++t) v.push_back(comps[t][r]);
    const auto& idx = ds->index[p_degree(o)];
    const auto it = idx.find(v);
    return it == idx.end() ? kNone : it->second;
  };
  return p;
}

ProbePtr p_delta_product(const std::vector<int>& ks, int degree) {
  if (ks.empty()) fail(ErrorCode::configuration, "need at least one factor");
  int total = 0;
  for (int k : ks) total += k;
  const int D = degree < 0 ? total + 1 : degree;
  std::vector<ProbePtr> factors;
  for (int k : ks) factors.push_back(p_delta(k, D));
  const std::size_t n = ks.size();
  SigmaSet x;
  x.N = D;
  std::string name;
  for (std::size_t t = 0; t < n; ++t) name += (t ? "x" : "") + factors[t]->set.name;
  x.name = name;
  const auto radix = [factors](const SigmaObj& o) {
    std::vector<std::size_t> r;
    for (const auto& f : factors) r.push_back(f->set.size(o));
    return r;
  };
  const auto total_size = [&](const SigmaObj& o) {
    std::size_t s = 1;
    for (auto r : radix(o)) s *= r;
    return s;
  };
  x.aug_size = total_size({-1, -1});
  for_each_obj(D, [&](int a, int b) { x.sizes.push_back(total_size({a, b})); });
  charge(std::accumulate(x.sizes.begin(), x.sizes.end(), std::uint64_t{0}), "product probe");
  x.allocate();
  // component c_t of a tuple id, first factor most significant
  const auto split = [](std::size_t id, const std::vector<std::size_t>& r) {
    std::vector<CellId> c(r.size());
    for (std::size_t t = r.size(); t-- > 0;) {
      c[t] = static_cast<CellId>(id % r[t]);
      id /= r[t];
    }
    return c;
  };
  const auto join = [](const std::vector<CellId>& c, const std::vector<std::size_t>& r) {
    std::size_t id = 0;
    for (std::size_t t = 0; t < r.size(); ++t) id = id * r[t] + c[t];
    return static_cast<CellId>(id);
  };
  for_each_obj(D, [&](int a, int b) {
    const auto r = radix({a, b});
    const std::size_t l = SigmaSet::index(a, b);
    for (int t = 0; t < 2; ++t) {
      for (std::size_t op = 0; op < x.d[t][l].size(); ++op) {
        const SigmaObj to{a - (t == 0), b - (t == 1)};
        const auto rt = radix(to);
        for (std::size_t id = 0; id < x.sizes[l]; ++id) {
          auto c = split(id, r);
          for (std::size_t u = 0; u < n; ++u) c[u] = factors[u]->set.face(t, a, b, static_cast<int>(op), c[u]);
          x.d[t][l][op][id] = join(c, rt);
        }
      }
      for (std::size_t op = 0; op < x.s[t][l].size(); ++op) {
        const SigmaObj to{a + (t == 0), b + (t == 1)};
        const auto rt = radix(to);
        for (std::size_t id = 0; id < x.sizes[l]; ++id) {
          auto c = split(id, r);
          for (std::size_t u = 0; u < n; ++u) c[u] = factors[u]->set.degeneracy(t, a, b, static_cast<int>(op), c[u]);
          x.s[t][l][op][id] = join(c, rt);
        }
      }
    }
  });
  if (D >= 1) {
    const auto ra = radix({-1, -1}), r0 = radix({0, 0});
    for (std::size_t id = 0; id < x.aug_size; ++id) {
      auto c = split(id, ra);
      for (std::size_t u = 0; u < n; ++u) c[u] = factors[u]->set.aug[c[u]];
      x.aug[id] = join(c, r0);
    }
  }
  auto p = std::make_shared<Probe>(make_probe(std::move(x)));
  p->ks = ks;
  p->vertices = [factors, split, radix](const SigmaObj& o, CellId id) {
    const auto c = split(id, radix(o));
    std::vector<std::vector<int>> out;
    for (std::size_t t = 0; t < factors.size(); ++t) out.push_back(factors[t]->vertices(o, c[t])[0]);
    return out;
  };
  p->locate = [factors, join, radix](const SigmaObj& o, const std::vector<std::vector<int>>& v) {
    std::vector<CellId> c;
    for (std::size_t t = 0; t < factors.size(); ++t) c.push_back(factors[t]->locate(o, {v[t]}));
    return join(c, radix(o));
  };
  return p;
}

MapCheck check_sigma_map(const SigmaSet& a, const SigmaSet& b, const SigmaMap& f, bool require_bijection) {
  MapCheck out;
  const int N = std::min(a.N, b.N);
  const auto problem = [&](bool& flag, std::string s) {
    flag = false;
    if (out.problems.size() < 16) out.problems.push_back(std::move(s));
  };
  const auto obj = [](int x, int y) { return "[" + std::to_string(x) + "," + std::to_string(y) + "]"; };
  if (require_bijection) {
    if (a.aug_size != b.aug_size) problem(out.bijective, "augmentation sizes differ");
    std::vector<char> hit(b.aug_size, 0);
    for (CellId c : f.aug)
      if (c < b.aug_size && hit[c]++) problem(out.bijective, "augmentation map is not injective");
  }
  for_each_obj(N, [&](int x, int y) {
    const std::size_t l = SigmaSet::index(x, y);
    const auto& fl = f.cells[l];
    if (require_bijection) {
      if (a.size(x, y) != b.size(x, y)) problem(out.bijective, "sizes differ at " + obj(x, y));
      std::vector<char> hit(b.size(x, y), 0);
      for (CellId c : fl)
        if (c < hit.size() && hit[c]++) problem(out.bijective, "not injective at " + obj(x, y));
    }
    for (int t = 0; t < 2; ++t) {
      const int k = t == 0 ? x : y;
      const std::size_t lf = k >= 1 ? SigmaSet::index(x - (t == 0), y - (t == 1)) : 0;
      const std::size_t ls = x + y + 2 <= N ? SigmaSet::index(x + (t == 0), y + (t == 1)) : 0;
      for (CellId c = 0; c < a.size(x, y); ++c) {
        for (int i = 0; i <= k && k >= 1; ++i)
          if (f.cells[lf][a.face(t, x, y, i, c)] != b.face(t, x, y, i, fl[c]))
            problem(out.commutes, "d" + std::to_string(i) + " on axis " + std::to_string(t) + " at " + obj(x, y));
        for (int i = 0; i <= k && x + y + 2 <= N; ++i)
          if (f.cells[ls][a.degeneracy(t, x, y, i, c)] != b.degeneracy(t, x, y, i, fl[c]))
            problem(out.commutes, "s" + std::to_string(i) + " on axis " + std::to_string(t) + " at " + obj(x, y));
      }
    }
  });
  if (N >= 1)
    for (CellId z = 0; z < a.aug_size; ++z)
      if (f.cells[0][a.aug[z]] != b.aug[f.aug[z]]) problem(out.commutes, "augmentation");
  return out;
}

namespace {

SigmaMap transport(const Probe& from, const Probe& to, int N) {
  SigmaMap f;
  for (CellId z = 0; z < from.set.aug_size; ++z) f.aug.push_back(to.locate({-1, -1}, from.vertices({-1, -1}, z)));
  f.cells.assign(num_index(N), {});
  for_each_obj(N, [&](int a, int b) {
    auto& row = f.cells[SigmaSet::index(a, b)];
    for (CellId c = 0; c < from.set.size(a, b); ++c) row.push_back(to.locate({a, b}, from.vertices({a, b}, c)));
  });
  return f;
}

}  // namespace

ProductIsoReport product_iso_check(const std::vector<int>& ks, int degree) {
  ProductIsoReport rep;
  rep.ks = ks;
  int total = 0;
  for (int k : ks) total += k;
  rep.degree = degree < 0 ? total + 1 : degree;
  const auto lhs = p_iterated_delta(ks, rep.degree);
  const auto rhs = p_delta_product(ks, rep.degree);
  const SigmaMap f = transport(*lhs, *rhs, rep.degree), g = transport(*rhs, *lhs, rep.degree);
  rep.forward = check_sigma_map(lhs->set, rhs->set, f, true);
  rep.backward = check_sigma_map(rhs->set, lhs->set, g, true);
  rep.objects_checked = 1 + f.cells.size();
  for (CellId z = 0; z < f.aug.size(); ++z)
    if (f.aug[z] >= g.aug.size() || g.aug[f.aug[z]] != z) rep.inverse = false;
  rep.cells = f.aug.size();
  for (std::size_t l = 0; l < f.cells.size(); ++l) {
    rep.cells += f.cells[l].size();
    for (CellId c = 0; c < f.cells[l].size(); ++c)
      if (f.cells[l][c] >= g.cells[l].size() || g.cells[l][f.cells[l][c]] != c) rep.inverse = false;
  }
  return rep;
}

MappingSpace::MappingSpace(ProbePtr probe, SigmaPtr target) : probe_(std::move(probe)), target_(std::move(target)) {
  if (target_->N < probe_->set.N)
    fail(ErrorCode::truncation, target_->name + " is truncated at degree " + std::to_string(target_->N) + ", " +
                                    probe_->set.name + " needs " + std::to_string(probe_->set.N));
  enumerate();
}

namespace {

// Images of the derived cells at one Σ-object; false when a relation fails.
bool fill_object(const Probe& p, const SigmaSet& x, SigmaMap& f, int a, int b) {
  const SigmaSet& A = p.set;
  const std::size_t l = SigmaSet::index(a, b);
  auto& row = f.cells[l];
  const auto& routes = p.routes[l];
  for (CellId c = 0; c < routes.size(); ++c) {
    const auto& r = routes[c];
    if (r.kind == Probe::Route::augmentation) {
      row[c] = x.aug_at(a, b, f.aug[r.index]);
    } else if (r.kind == Probe::Route::degeneracy) {
      const int pa = a - (r.axis == 0), pb = b - (r.axis == 1);
      row[c] = x.degeneracy(r.axis, pa, pb, r.i, f.cells[SigmaSet::index(pa, pb)][r.source]);
    }
  }
  // every degeneracy into this object and every face of a derived cell
  for (int t = 0; t < 2; ++t) {
    const int pa = a - (t == 0), pb = b - (t == 1);
    if (pa >= 0 && pb >= 0) {
      const auto& src = f.cells[SigmaSet::index(pa, pb)];
      const int k = t == 0 ? pa : pb;
      for (int i = 0; i <= k; ++i)
        for (CellId c = 0; c < src.size(); ++c)
          if (row[A.degeneracy(t, pa, pb, i, c)] != x.degeneracy(t, pa, pb, i, src[c])) return false;
    }
  }
  for (CellId z = 0; z < A.aug_size; ++z)
    if (row[A.aug_at(a, b, z)] != x.aug_at(a, b, f.aug[z])) return false;
  for (CellId c = 0; c < routes.size(); ++c) {
    if (routes[c].kind == Probe::Route::generator) continue;
    for (int t = 0; t < 2; ++t) {
      const int k = t == 0 ? a : b;
      if (k < 1) continue;
      const auto& lower = f.cells[SigmaSet::index(a - (t == 0), b - (t == 1))];
      for (int i = 0; i <= k; ++i)
        if (lower[A.face(t, a, b, i, c)] != x.face(t, a, b, i, row[c])) return false;
    }
  }
  return true;
}

}  // namespace

void MappingSpace::enumerate() {
  const Probe& p = *probe_;
  const SigmaSet& A = p.set;
  const SigmaSet& X = *target_;
  const int N = A.N;
  // cells of A numbered globally: augmentation first, then by Σ-object index
  struct Cell {
    int a = -1, b = -1;
    CellId id = 0;
  };
  struct Op {
    std::uint32_t target;
    std::int8_t kind, axis, i;  // kind 0 face, 1 degeneracy, 2 augmentation
  };
  std::vector<Cell> cells;
  std::vector<std::size_t> base(num_index(N), 0);
  for (CellId z = 0; z < A.aug_size; ++z) cells.push_back({-1, -1, z});
  for_each_obj(N, [&](int a, int b) {
    base[SigmaSet::index(a, b)] = cells.size();
    for (CellId c = 0; c < A.size(a, b); ++c) cells.push_back({a, b, c});
  });
  const auto gid = [&](int a, int b, CellId c) { return static_cast<std::uint32_t>(base[SigmaSet::index(a, b)] + c); };
  std::vector<std::vector<Op>> ops(cells.size());
  for (std::uint32_t g = 0; g < cells.size(); ++g) {
    const auto [a, b, c] = cells[g];
    if (a < 0) {
      if (N >= 1) ops[g].push_back({gid(0, 0, A.aug[c]), 2, 0, 0});
      continue;
    }
    for (int t = 0; t < 2; ++t) {
      const int k = t == 0 ? a : b;
      for (int i = 0; i <= k && k >= 1; ++i)
        ops[g].push_back({gid(a - (t == 0), b - (t == 1), A.face(t, a, b, i, c)), 0, static_cast<std::int8_t>(t),
                          static_cast<std::int8_t>(i)});
      for (int i = 0; i <= k && a + b + 2 <= N; ++i)
        ops[g].push_back({gid(a + (t == 0), b + (t == 1), A.degeneracy(t, a, b, i, c)), 1, static_cast<std::int8_t>(t),
                          static_cast<std::int8_t>(i)});
    }
  }
  const auto apply = [&](const Cell& src, const Op& op, CellId y) -> CellId {
    if (op.kind == 2) return X.aug[y];
    if (op.kind == 0) return X.face(op.axis, src.a, src.b, op.i, y);
    return X.degeneracy(op.axis, src.a, src.b, op.i, y);
  };
  // reverse relations, for counting how constrained each cell is
  std::vector<std::vector<std::uint32_t>> users(cells.size());
  for (std::uint32_t g = 0; g < cells.size(); ++g)
    for (const Op& op : ops[g]) users[op.target].push_back(g);

  std::vector<CellId> val(cells.size(), kNone);
  std::vector<std::uint32_t> fixed(cells.size(), 0);  // assigned neighbours, both directions
  std::vector<std::uint32_t> trail, queue;
  std::size_t unassigned = cells.size();
  const auto set = [&](std::uint32_t g, CellId y) {
    val[g] = y;
    trail.push_back(g);
    --unassigned;
    for (std::uint32_t u : users[g]) ++fixed[u];
    for (const Op& op : ops[g]) ++fixed[op.target];
  };
  const auto assign = [&](std::uint32_t g, CellId y) {
    set(g, y);
    queue.assign(1, g);
    while (!queue.empty()) {
      const std::uint32_t u = queue.back();
      queue.pop_back();
      for (const Op& op : ops[u]) {
        const CellId ty = apply(cells[u], op, val[u]);
        if (val[op.target] == kNone) {
          set(op.target, ty);
          queue.push_back(op.target);
        } else if (val[op.target] != ty) {
          return false;
        }
      }
    }
    return true;
  };
  const auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      const std::uint32_t g = trail.back();
      trail.pop_back();
      val[g] = kNone;
      ++unassigned;
      for (std::uint32_t u : users[g]) --fixed[u];
      for (const Op& op : ops[g]) --fixed[op.target];
    }
  };
  // only generators are branched on; every other cell follows from its route
  std::vector<std::uint32_t> gens;
  for (const auto& g : p.generators) gens.push_back(g.obj.augmentation() ? g.cell : gid(g.obj.a, g.obj.b, g.cell));
  // X cells at [a,b] by the value of one face: faces[l][t][i][value]
  std::vector<std::array<std::vector<std::vector<std::vector<CellId>>>, 2>> faces(num_index(N));
  const auto bucket = [&](const Cell& c, const Op& op, CellId v) -> const std::vector<CellId>& {
    auto& f = faces[SigmaSet::index(c.a, c.b)][op.axis];
    if (f.empty()) {
      const int k = op.axis == 0 ? c.a : c.b;
      f.resize(static_cast<std::size_t>(k + 1));
      const std::size_t lower = X.size(c.a - (op.axis == 0), c.b - (op.axis == 1));
      for (int i = 0; i <= k; ++i) {
        f[i].resize(lower);
        for (CellId y = 0; y < X.size(c.a, c.b); ++y) f[i][X.face(op.axis, c.a, c.b, i, y)].push_back(y);
      }
    }
    return f[op.i][v];
  };
  std::vector<CellId> all;
  std::function<void()> rec = [&]() {
    // candidates of an open generator: forced by an assigned degeneracy
    // (d_i s_i = id), a bucket of an assigned face, or the whole domain
    const auto source = [&](std::uint32_t u, CellId& forced) -> const std::vector<CellId>* {
      forced = kNone;
      const std::vector<CellId>* pool = nullptr;
      for (const Op& op : ops[u]) {
        if (val[op.target] == kNone) continue;
        if (op.kind == 1) {
          const Cell& t = cells[op.target];
          forced = X.face(op.axis, t.a, t.b, op.i, val[op.target]);
          return nullptr;
        }
        if (op.kind == 0) {
          const auto* b = &bucket(cells[u], op, val[op.target]);
          if (!pool || b->size() < pool->size()) pool = b;
        }
      }
      return pool;
    };
    const auto domain_of = [&](const Cell& c) { return c.a < 0 ? X.aug_size : X.size(c.a, c.b); };
    std::uint32_t g = 0;
    std::size_t best = 0;
    bool found = false;
    for (std::uint32_t u : gens) {
      if (val[u] != kNone) continue;
      CellId f;
      const auto* pool = source(u, f);
      const std::size_t est = f != kNone ? 1 : pool ? pool->size() : domain_of(cells[u]);
      if (!found || est < best || (est == best && fixed[u] > fixed[g])) {
        g = u;
        best = est;
      }
      found = true;
      if (best <= 1) break;
    }
    if (!found) {
      if (unassigned != 0) fail(ErrorCode::configuration, "probe cells not reached from its generators");
      charge(1, "mapping space");
      std::vector<CellId> img;
      for (std::uint32_t u : gens) img.push_back(val[u]);
      maps_.push_back(std::move(img));
      return;
    }
    const Cell& c = cells[g];
    CellId forced;
    const std::vector<CellId>* pool = source(g, forced);
    std::vector<CellId> mine;
    const auto consider = [&](CellId y) {
      ++tried_;
      for (const Op& op : ops[g])
        if (val[op.target] != kNone && val[op.target] != apply(c, op, y)) return;
      mine.push_back(y);
    };
    if (forced != kNone) {
      consider(forced);
    } else if (pool) {
      for (CellId y : *pool) consider(y);
    } else {
      for (CellId y = 0; y < domain_of(c); ++y) consider(y);
    }
    for (CellId y : mine) {
      const std::size_t mark = trail.size();
      if (assign(g, y)) rec();
      undo(mark);
    }
  };
  rec();
  std::sort(maps_.begin(), maps_.end());
}

CellId MappingSpace::find(const std::vector<CellId>& images) const {
  const auto it = std::lower_bound(maps_.begin(), maps_.end(), images);
  return it != maps_.end() && *it == images ? static_cast<CellId>(it - maps_.begin()) : kNone;
}

SigmaMap MappingSpace::extend(const std::vector<CellId>& images) const {
  const Probe& p = *probe_;
  const SigmaSet& A = p.set;
  SigmaMap f;
  f.aug.assign(A.aug_size, kNone);
  f.cells.assign(num_index(A.N), {});
  for_each_obj(A.N, [&](int a, int b) { f.cells[SigmaSet::index(a, b)].assign(A.size(a, b), kNone); });
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    const auto& gen = p.generators[g];
    if (gen.obj.augmentation())
      f.aug[gen.cell] = images[g];
    else
      f.cells[SigmaSet::index(gen.obj.a, gen.obj.b)][gen.cell] = images[g];
  }
  bool ok = true;
  for_each_obj(A.N, [&](int a, int b) { ok = fill_object(p, *target_, f, a, b) && ok; });
  if (!ok) fail(ErrorCode::configuration, "generator images do not define a map of Sigma-sets");
  return f;
}

std::vector<CellId> MappingSpace::restrict_to_generators(const SigmaMap& f) const {
  std::vector<CellId> img;
  for (const auto& g : probe_->generators)
    img.push_back(g.obj.augmentation() ? f.aug[g.cell] : f.cells[SigmaSet::index(g.obj.a, g.obj.b)][g.cell]);
  return img;
}

MapCheck MappingSpace::consistency() const {
  MapCheck out;
  for (std::size_t m = 0; m < maps_.size(); ++m) {
    const auto c = check_sigma_map(probe_->set, *target_, extend(m), false);
    if (!c.commutes) {
      out.commutes = false;
      for (const auto& s : c.problems)
        if (out.problems.size() < 16) out.problems.push_back("map " + std::to_string(m) + ": " + s);
    }
  }
  return out;
}

std::vector<CellId> precompose(const MappingSpace& from, const MappingSpace& to, const SigmaMap& phi, std::size_t m) {
  const SigmaMap f = from.extend(m);
  std::vector<CellId> img;
  for (const auto& g : to.probe().generators) {
    if (g.obj.augmentation())
      img.push_back(f.aug[phi.aug[g.cell]]);
    else {
      const std::size_t l = SigmaSet::index(g.obj.a, g.obj.b);
      img.push_back(f.cells[l][phi.cells[l][g.cell]]);
    }
  }
  return img;
}

SigmaMap probe_map(const Probe& from, const Probe& to, const std::vector<std::vector<int>>& maps) {
  const auto apply = [&](std::vector<std::vector<int>> v) {
    for (std::size_t t = 0; t < v.size(); ++t)
      for (int& x : v[t]) x = maps[t][x];
    return v;
  };
  SigmaMap f;
  for (CellId z = 0; z < from.set.aug_size; ++z) f.aug.push_back(to.locate({-1, -1}, apply(from.vertices({-1, -1}, z))));
  const int N = std::min(from.set.N, to.set.N);
  f.cells.assign(num_index(N), {});
  for_each_obj(N, [&](int a, int b) {
    auto& row = f.cells[SigmaSet::index(a, b)];
    for (CellId c = 0; c < from.set.size(a, b); ++c) row.push_back(to.locate({a, b}, apply(from.vertices({a, b}, c))));
  });
  return f;
}

}  // namespace sdot::sigma
