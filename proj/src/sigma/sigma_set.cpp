#include "sdot/sigma/sigma_set.hpp"

namespace sdot::sigma {

int p_degree(const SigmaObj& o) { return o.augmentation() ? 0 : o.a + 1 + o.b; }

std::size_t SigmaSet::index(int a, int b) {
  const auto m = static_cast<std::size_t>(a + b);
  return m * (m + 1) / 2 + static_cast<std::size_t>(a);
}

CellId SigmaSet::aug_at(int a, int b, CellId z) const {
  CellId x = aug[z];
  for (int i = 0; i < a; ++i) x = degeneracy(0, i, 0, 0, x);
  for (int j = 0; j < b; ++j) x = degeneracy(1, a, j, 0, x);
  return x;
}

std::string SigmaSet::describe(const SigmaObj& o, CellId x) const {
  if (describe_cell) return describe_cell(o, x);
  if (o.augmentation()) return "[-1]#" + std::to_string(x);
  return "[" + std::to_string(o.a) + "," + std::to_string(o.b) + "]#" + std::to_string(x);
}

void SigmaSet::allocate() {
  const std::size_t L = N >= 1 ? index(0, N - 1) + static_cast<std::size_t>(N) : 0;
  if (sizes.size() != L) fail(ErrorCode::configuration, "Sigma-set sizes do not match its bound");
  for (int t = 0; t < 2; ++t) {
    d[t].assign(L, {});
    s[t].assign(L, {});
  }
  for (int a = 0; a < N; ++a)
    for (int b = 0; a + 1 + b <= N; ++b) {
      const std::size_t l = index(a, b);
      for (int t = 0; t < 2; ++t) {
        const int k = t == 0 ? a : b;
        if (k >= 1) d[t][l].assign(k + 1, std::vector<CellId>(sizes[l], kNone));
        if (a + b + 2 <= N) s[t][l].assign(k + 1, std::vector<CellId>(sizes[l], kNone));
      }
    }
  aug.assign(aug_size, kNone);
}

simpl::TruncSimplicialSet sigma_slice(const SigmaSet& x, int axis, int fixed) {
  simpl::TruncSimplicialSet out;
  out.name = x.name + (axis == 0 ? " column b=" : " row a=") + std::to_string(fixed);
  out.N = x.N - 1 - fixed;
  if (out.N < 0) fail(ErrorCode::truncation, "slice outside the truncation");
  const auto at = [&](int k) { return axis == 0 ? SigmaSet::index(k, fixed) : SigmaSet::index(fixed, k); };
  for (int k = 0; k <= out.N; ++k) out.sizes.push_back(x.sizes[at(k)]);
  out.d.resize(out.N + 1);
  out.s.resize(out.N + 1);
  for (int k = 0; k <= out.N; ++k) {
    out.d[k] = x.d[axis][at(k)];
    out.s[k] = x.s[axis][at(k)];
  }
  return out;
}

namespace {

class Collector {
 public:
  explicit Collector(SigmaValidation& v) : v_(v) {}
  void check(bool ok, const std::function<std::string()>& what) {
    ++v_.checked;
    if (ok) return;
    if (v_.violations.size() < 64) v_.violations.push_back(what());
    ++v_.violation_count;
  }

 private:
  SigmaValidation& v_;
};

std::string obj(int a, int b) { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

}  // namespace

SigmaValidation validate_sigma(const SigmaSet& x) {
  SigmaValidation out;
  const std::size_t L = x.N >= 1 ? SigmaSet::index(0, x.N - 1) + static_cast<std::size_t>(x.N) : 0;
  if (x.sizes.size() != L || x.aug.size() != x.aug_size) {
    out.table_problem = "tables do not match the truncation";
    return out;
  }
  for (int t = 0; t < 2; ++t)
    if (x.d[t].size() != L || x.s[t].size() != L) {
      out.table_problem = "operator tables do not match the truncation";
      return out;
    }
  // table ranges
  for (int a = 0; a < x.N; ++a)
    for (int b = 0; x.has(a, b); ++b)
      for (int t = 0; t < 2; ++t) {
        const std::size_t l = SigmaSet::index(a, b);
        const int k = t == 0 ? a : b;
        const auto check_table = [&](const std::vector<std::vector<CellId>>& tab, int na, int nb, bool present, int count,
                                     const char* kind) {
          if (!present) {
            if (!tab.empty()) out.table_problem = std::string("unexpected ") + kind + " table at " + obj(a, b);
            return;
          }
          if (static_cast<int>(tab.size()) != count) {
            out.table_problem = std::string("wrong number of ") + kind + " maps at " + obj(a, b);
            return;
          }
          for (const auto& row : tab) {
            if (row.size() != x.sizes[l]) out.table_problem = std::string(kind) + " table has the wrong length at " + obj(a, b);
            for (CellId c : row)
              if (c >= x.size(na, nb)) out.table_problem = std::string(kind) + " table leaves the cell range at " + obj(a, b);
          }
        };
        check_table(x.d[t][l], a - (t == 0), b - (t == 1), k >= 1, k + 1, "face");
        check_table(x.s[t][l], a + (t == 0), b + (t == 1), a + b + 2 <= x.N, k + 1, "degeneracy");
        if (!out.table_problem.empty()) return out;
      }
  if (x.N >= 1)
    for (CellId c : x.aug)
      if (c >= x.size(0, 0)) {
        out.table_problem = "augmentation map leaves the cell range";
        return out;
      }

  Collector col(out);
  // rows and columns
  for (int t = 0; t < 2; ++t)
    for (int fixed = 0; fixed + 1 <= x.N; ++fixed) {
      const auto sl = sigma_slice(x, t, fixed);
      const auto v = simpl::validate_simplicial(sl);
      out.checked += v.checked;
      if (!v.table_problem.empty()) {
        out.table_problem = v.table_problem;
        return out;
      }
      for (const auto& iv : v.violations)
        if (out.violations.size() < 64) out.violations.push_back(sl.name + ": " + iv.identity + " at level " + std::to_string(iv.n));
      out.violation_count += v.violation_count;
    }
  // mixed operators commute
  for (int a = 0; a < x.N; ++a)
    for (int b = 0; x.has(a, b); ++b) {
      const std::size_t n = x.size(a, b);
      for (CellId c = 0; c < n; ++c) {
        if (a >= 1 && b >= 1)
          for (int i = 0; i <= a; ++i)
            for (int j = 0; j <= b; ++j)
              col.check(x.face(1, a - 1, b, j, x.face(0, a, b, i, c)) == x.face(0, a, b - 1, i, x.face(1, a, b, j, c)),
                        [&] { return "front d" + std::to_string(i) + " and back d" + std::to_string(j) + " disagree on " + x.describe({a, b}, c); });
        if (a + b + 2 <= x.N) {
          if (b >= 1)
            for (int i = 0; i <= a; ++i)
              for (int j = 0; j <= b; ++j)
                col.check(x.face(1, a + 1, b, j, x.degeneracy(0, a, b, i, c)) ==
                              x.degeneracy(0, a, b - 1, i, x.face(1, a, b, j, c)),
                          [&] { return "front s" + std::to_string(i) + " and back d" + std::to_string(j) + " disagree on " + x.describe({a, b}, c); });
          if (a >= 1)
            for (int i = 0; i <= a; ++i)
              for (int j = 0; j <= b; ++j)
                col.check(x.face(0, a, b + 1, i, x.degeneracy(1, a, b, j, c)) ==
                              x.degeneracy(1, a - 1, b, j, x.face(0, a, b, i, c)),
                          [&] { return "back s" + std::to_string(j) + " and front d" + std::to_string(i) + " disagree on " + x.describe({a, b}, c); });
        }
        if (a + b + 3 <= x.N)
          for (int i = 0; i <= a; ++i)
            for (int j = 0; j <= b; ++j)
              col.check(x.degeneracy(1, a + 1, b, j, x.degeneracy(0, a, b, i, c)) ==
                            x.degeneracy(0, a, b + 1, i, x.degeneracy(1, a, b, j, c)),
                        [&] { return "front s" + std::to_string(i) + " and back s" + std::to_string(j) + " disagree on " + x.describe({a, b}, c); });
      }
    }
  // augmentation naturality
  for (CellId z = 0; z < x.aug_size && x.N >= 1; ++z)
    for (int a = 0; a < x.N; ++a)
      for (int b = 0; x.has(a, b); ++b) {
        const CellId c = x.aug_at(a, b, z);
        for (int t = 0; t < 2; ++t) {
          const int k = t == 0 ? a : b;
          const int na = a - (t == 0), nb = b - (t == 1);
          if (k >= 1)
            for (int i = 0; i <= k; ++i)
              col.check(x.face(t, a, b, i, c) == x.aug_at(na, nb, z), [&] {
                return "augmentation of " + x.describe({-1, -1}, z) + " is not natural under d" + std::to_string(i) +
                       " on axis " + std::to_string(t) + " at " + obj(a, b);
              });
          if (a + b + 2 <= x.N)
            for (int i = 0; i <= k; ++i)
              col.check(x.degeneracy(t, a, b, i, c) == x.aug_at(a + (t == 0), b + (t == 1), z), [&] {
                return "augmentation of " + x.describe({-1, -1}, z) + " is not natural under s" + std::to_string(i) +
                       " on axis " + std::to_string(t) + " at " + obj(a, b);
              });
        }
      }
  return out;
}

SigmaSet terminal_sigma(int N) {
  SigmaSet x;
  x.name = "terminal";
  x.N = N;
  x.aug_size = 1;
  for (int m = 0; m + 1 <= N; ++m)
    for (int a = 0; a <= m; ++a) x.sizes.push_back(1);
  x.allocate();
  for (int t = 0; t < 2; ++t)
    for (auto& lv : x.d[t])
      for (auto& row : lv) row.assign(row.size(), 0);
  for (int t = 0; t < 2; ++t)
    for (auto& lv : x.s[t])
      for (auto& row : lv) row.assign(row.size(), 0);
  if (N >= 1) x.aug[0] = 0;
  return x;
}

SigmaSet path_space(const simpl::TruncSimplicialSet& y) {
  SigmaSet x;
  x.name = "P(" + y.name + ")";
  x.N = y.N;
  x.aug_size = y.size(0);
  for (int m = 0; m + 1 <= x.N; ++m)
    for (int a = 0; a <= m; ++a) x.sizes.push_back(y.size(m + 1));
  x.allocate();
  for (int a = 0; a < x.N; ++a)
    for (int b = 0; x.has(a, b); ++b) {
      const std::size_t l = SigmaSet::index(a, b);
      const int n = a + 1 + b;
      for (int i = 0; i <= a && a >= 1; ++i) x.d[0][l][i] = y.d[n][i];
      for (int j = 0; j <= b && b >= 1; ++j) x.d[1][l][j] = y.d[n][a + 1 + j];
      if (n < x.N) {
        for (int i = 0; i <= a; ++i) x.s[0][l][i] = y.s[n][i];
        for (int j = 0; j <= b; ++j) x.s[1][l][j] = y.s[n][a + 1 + j];
      }
    }
  if (x.N >= 1) x.aug = y.s[0][0];
  if (y.describe_cell)
    x.describe_cell = [f = y.describe_cell](const SigmaObj& o, CellId c) { return f(p_degree(o), c); };
  return x;
}

}  // namespace sdot::sigma
