#include "sdot/simpl/simplicial.hpp"

#include <algorithm>
#include <map>

#include "sdot/simpl/grid_iso.hpp"

namespace sdot::simpl {

std::string TruncSimplicialSet::describe(int n, CellId x) const {
  if (describe_cell) return describe_cell(n, x);
  return "x" + std::to_string(n) + "#" + std::to_string(x);
}

CellId TruncSimplicialSet::restrict(int n, const std::vector<int>& vertices, CellId x) const {
  int level = n;
  for (int v = n; v >= 0; --v) {
    if (std::binary_search(vertices.begin(), vertices.end(), v)) continue;
    x = d[level][v][x];
    --level;
  }
  return x;
}

std::vector<CellId> TruncSimplicialSet::restrict_all(int n, const std::vector<int>& vertices) const {
  std::vector<CellId> out(sizes[n]);
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = static_cast<CellId>(x);
  int level = n;
  for (int v = n; v >= 0; --v) {
    if (std::binary_search(vertices.begin(), vertices.end(), v)) continue;
    const auto& t = d[level][v];
    for (auto& c : out) c = t[c];
    --level;
  }
  return out;
}

void TruncSimplicialSet::allocate(int bound, const std::vector<std::size_t>& level_sizes) {
  N = bound;
  sizes = level_sizes;
  d.assign(N + 1, {});
  s.assign(N + 1, {});
  for (int n = 1; n <= N; ++n) d[n].assign(n + 1, std::vector<CellId>(sizes[n], kNone));
  for (int n = 0; n < N; ++n) s[n].assign(n + 1, std::vector<CellId>(sizes[n], kNone));
}

namespace {

// Both sides of each identity, applied to a cell of level n.
std::pair<CellId, CellId> sides(const TruncSimplicialSet& x, IdentityForm f, int n, int i, int j, CellId c) {
  switch (f) {
    case IdentityForm::dd:  // d_i d_j = d_{j-1} d_i, i < j
      return {x.d[n - 1][i][x.d[n][j][c]], x.d[n - 1][j - 1][x.d[n][i][c]]};
    case IdentityForm::ds_low:  // d_i s_j = s_{j-1} d_i, i < j
      return {x.d[n + 1][i][x.s[n][j][c]], x.s[n - 1][j - 1][x.d[n][i][c]]};
    case IdentityForm::ds_mid:  // d_i s_j = id, i = j or j+1
      return {x.d[n + 1][i][x.s[n][j][c]], c};
    case IdentityForm::ds_high:  // d_i s_j = s_j d_{i-1}, i > j+1
      return {x.d[n + 1][i][x.s[n][j][c]], x.s[n - 1][j][x.d[n][i - 1][c]]};
    case IdentityForm::ss:  // s_i s_j = s_{j+1} s_i, i ≤ j
      return {x.s[n + 1][i][x.s[n][j][c]], x.s[n + 1][j + 1][x.s[n][i][c]]};
  }
  return {kNone, kNone};
}

std::string identity_name(IdentityForm f, int i, int j) {
  const auto I = std::to_string(i), J = std::to_string(j);
  switch (f) {
    case IdentityForm::dd: return "d" + I + " d" + J + " = d" + std::to_string(j - 1) + " d" + I;
    case IdentityForm::ds_low: return "d" + I + " s" + J + " = s" + std::to_string(j - 1) + " d" + I;
    case IdentityForm::ds_mid: return "d" + I + " s" + J + " = id";
    case IdentityForm::ds_high: return "d" + I + " s" + J + " = s" + J + " d" + std::to_string(i - 1);
    case IdentityForm::ss: return "s" + I + " s" + J + " = s" + std::to_string(j + 1) + " s" + I;
  }
  return {};
}

std::string table_problems(const TruncSimplicialSet& x) {
  if (static_cast<int>(x.sizes.size()) != x.N + 1) return "level count differs from N+1";
  if (static_cast<int>(x.d.size()) != x.N + 1 || static_cast<int>(x.s.size()) != x.N + 1) return "missing tables";
  const auto check = [&](const std::vector<std::vector<CellId>>& tables, int n, int count, std::size_t from,
                         std::size_t to, const char* op) -> std::string {
    const std::string at = std::string(op) + " at level " + std::to_string(n);
    if (static_cast<int>(tables.size()) != count) return at + " has the wrong operator count";
    for (int i = 0; i < count; ++i) {
      if (tables[i].size() != from) return at + " index " + std::to_string(i) + " is not total";
      for (CellId c : tables[i])
        if (c >= to) return at + " index " + std::to_string(i) + " leaves its target level";
    }
    return {};
  };
  for (int n = 1; n <= x.N; ++n)
    if (auto p = check(x.d[n], n, n + 1, x.sizes[n], x.sizes[n - 1], "face"); !p.empty()) return p;
  for (int n = 0; n < x.N; ++n)
    if (auto p = check(x.s[n], n, n + 1, x.sizes[n], x.sizes[n + 1], "degeneracy"); !p.empty()) return p;
  return {};
}

template <class F>
void each_instance(int N, F&& f) {
  for (int n = 2; n <= N; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i) f(IdentityForm::dd, n, i, j);
  for (int n = 0; n < N; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        if (i < j)
          f(IdentityForm::ds_low, n, i, j);
        else if (i == j || i == j + 1)
          f(IdentityForm::ds_mid, n, i, j);
        else
          f(IdentityForm::ds_high, n, i, j);
      }
  for (int n = 0; n + 1 < N; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i) f(IdentityForm::ss, n, i, j);
}

}  // namespace

SimplicialValidation validate_simplicial(const TruncSimplicialSet& x) {
  SimplicialValidation out;
  out.table_problem = table_problems(x);
  if (!out.table_problem.empty()) return out;
  each_instance(x.N, [&](IdentityForm f, int n, int i, int j) {
    for (CellId c = 0; c < x.sizes[n]; ++c) {
      const auto [l, r] = sides(x, f, n, i, j, c);
      ++out.checked;
      if (l == r) continue;
      if (out.violations.size() < 64) out.violations.push_back({identity_name(f, i, j), f, n, i, j, c, l, r});
      ++out.violation_count;
    }
  });
  return out;
}

bool verify_violation(const TruncSimplicialSet& x, const IdentityViolation& v) {
  if (!table_problems(x).empty()) return false;
  if (v.n < 0 || v.n > x.N || v.cell >= x.sizes[v.n]) return false;
  bool known = false;
  each_instance(x.N, [&](IdentityForm f, int n, int i, int j) {
    known = known || (f == v.form && n == v.n && i == v.i && j == v.j);
  });
  if (!known) return false;
  const auto [l, r] = sides(x, v.form, v.n, v.i, v.j, v.cell);
  return l == v.lhs && r == v.rhs && l != r;
}

namespace {

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int t = 1; t <= k; ++t) r = r * static_cast<std::uint64_t>(n - k + t) / static_cast<std::uint64_t>(t);
  return r;
}

// Monotone sequences of length r with values in [w, k].
std::uint64_t monotone_count(int k, int r, int w) { return binom(k - w + r, r); }

}  // namespace

CellId simplex_cell(int k, const std::vector<int>& v) {
  const int len = static_cast<int>(v.size());
  std::uint64_t rank = 0;
  int prev = 0;
  for (int t = 0; t < len; ++t) {
    for (int w = prev; w < v[t]; ++w) rank += monotone_count(k, len - 1 - t, w);
    prev = v[t];
  }
  return static_cast<CellId>(rank);
}

std::vector<int> simplex_vertices(int k, int n, CellId x) {
  std::vector<int> v(n + 1);
  std::uint64_t rank = x;
  int prev = 0;
  for (int t = 0; t <= n; ++t) {
    int w = prev;
    while (true) {
      const std::uint64_t c = monotone_count(k, n - t, w);
      if (rank < c) break;
      rank -= c;
      ++w;
    }
    v[t] = w;
    prev = w;
  }
  return v;
}

TruncSimplicialSet standard_simplex(int k, int N) {
  if (k < 0 || N < 0) fail(ErrorCode::configuration, "standard simplex needs k, N ≥ 0");
  TruncSimplicialSet x;
  x.name = "Delta[" + std::to_string(k) + "]";
  std::vector<std::size_t> sizes;
  for (int n = 0; n <= N; ++n) sizes.push_back(monotone_count(k, n + 1, 0));
  charge(sizes.back() * (N + 1), "standard simplex");
  x.allocate(N, sizes);
  for (int n = 0; n <= N; ++n)
    for (CellId c = 0; c < sizes[n]; ++c) {
      const auto v = simplex_vertices(k, n, c);
      if (n >= 1)
        for (int i = 0; i <= n; ++i) {
          auto w = v;
          w.erase(w.begin() + i);
          x.d[n][i][c] = simplex_cell(k, w);
        }
      if (n < N)
        for (int i = 0; i <= n; ++i) {
          auto w = v;
          w.insert(w.begin() + i, v[i]);
          x.s[n][i][c] = simplex_cell(k, w);
        }
    }
  x.describe_cell = [k](int n, CellId c) {
    std::string s = "[";
    for (int v : simplex_vertices(k, n, c)) s += std::to_string(v);
    return s + "]";
  };
  return x;
}

TruncSimplicialSet nerve(std::shared_ptr<const fincat::FinCategory> c, int N) {
  if (N < 0) fail(ErrorCode::configuration, "nerve needs N ≥ 0");
  using Chain = std::vector<MorId>;
  std::vector<std::vector<Chain>> cells(N + 1);
  for (ObjId a = 0; a < c->num_objects(); ++a) cells[0].push_back({c->identity(a)});
  // n-cells as strings of n morphisms; 0-cells use the identity as a marker
  if (N >= 1)
    for (MorId f = 0; f < c->num_morphisms(); ++f) cells[1].push_back({f});
  for (int n = 2; n <= N; ++n) {
    for (const Chain& ch : cells[n - 1]) {
      const ObjId b = c->target(ch.back());
      for (ObjId t = 0; t < c->num_objects(); ++t)
        for (MorId g = c->hom_begin(b, t), ge = g + c->hom_size(b, t); g < ge; ++g) {
          Chain next = ch;
          next.push_back(g);
          cells[n].push_back(std::move(next));
        }
    }
    charge(cells[n].size(), "nerve");
  }
  std::vector<std::map<Chain, CellId>> index(N + 1);
  std::vector<std::size_t> sizes;
  for (int n = 0; n <= N; ++n) {
    std::sort(cells[n].begin(), cells[n].end());
    for (CellId i = 0; i < cells[n].size(); ++i) index[n][cells[n][i]] = i;
    sizes.push_back(cells[n].size());
  }
  TruncSimplicialSet x;
  x.name = "nerve";
  x.allocate(N, sizes);
  const auto id_of = [&](int n, const Chain& ch) { return index[n].at(ch); };
  for (int n = 1; n <= N; ++n)
    for (CellId k = 0; k < sizes[n]; ++k) {
      const Chain& ch = cells[n][k];
      for (int i = 0; i <= n; ++i) {
        Chain out;
        if (n == 1) {
          out = {c->identity(i == 0 ? c->target(ch[0]) : c->source(ch[0]))};
        } else if (i == 0) {
          out.assign(ch.begin() + 1, ch.end());
        } else if (i == n) {
          out.assign(ch.begin(), ch.end() - 1);
        } else {
          out = ch;
          out[i - 1] = c->compose(ch[i], ch[i - 1]);
          out.erase(out.begin() + i);
        }
        x.d[n][i][k] = id_of(n - 1, out);
      }
    }
  for (int n = 0; n < N; ++n)
    for (CellId k = 0; k < sizes[n]; ++k) {
      const Chain& ch = cells[n][k];
      for (int i = 0; i <= n; ++i) {
        Chain out;
        if (n == 0) {
          out = ch;
        } else {
          out = ch;
          const ObjId a = i < n ? c->source(ch[i]) : c->target(ch[n - 1]);
          out.insert(out.begin() + i, c->identity(a));
        }
        x.s[n][i][k] = id_of(n + 1, out);
      }
    }
  x.describe_cell = [c, cells = std::make_shared<std::vector<std::vector<Chain>>>(std::move(cells))](int n, CellId k) {
    const Chain& ch = (*cells)[n][k];
    if (n == 0) return c->object_label(c->source(ch[0]));
    std::string s;
    for (MorId f : ch) s += (s.empty() ? "" : " | ") + c->morphism_label(f);
    return s;
  };
  return x;
}

std::vector<char> GridIsoStructure::fixed_positions(int n, const VertexMasks& masks) const {
  const auto& shape = levels_[n].groupoid->family().shape();
  std::vector<char> fixed(shape.size(), 0);
  for (std::uint32_t p = 0; p < shape.size(); ++p) {
    const int a = shape.coords[p][2 * axis_], b = shape.coords[p][2 * axis_ + 1];
    for (const auto& m : masks)
      if (std::binary_search(m.begin(), m.end(), a) && std::binary_search(m.begin(), m.end(), b)) {
        fixed[p] = 1;
        break;
      }
  }
  return fixed;
}

IsoStructure::Relative GridIsoStructure::relative_symmetry(int n, CellId x, const VertexMasks& fixed) const {
  const auto r = levels_[n].groupoid->relative_symmetry(member(n, x), fixed_positions(n, fixed), 64);
  return {r.families, r.stabilizer};
}

bool GridIsoStructure::relatively_isomorphic(int n, CellId x, CellId y, const VertexMasks& fixed) const {
  return levels_[n].groupoid->relatively_isomorphic(member(n, x), member(n, y), fixed_positions(n, fixed));
}

}  // namespace sdot::simpl
