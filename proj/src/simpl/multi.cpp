#include "sdot/simpl/multi.hpp"

namespace sdot::simpl {

std::size_t MultiSimplicialSet::num_levels() const {
  std::size_t n = 1;
  for (int b : bounds) n *= static_cast<std::size_t>(b + 1);
  return n;
}

std::size_t MultiSimplicialSet::level(const std::vector<int>& deg) const {
  if (deg.size() != bounds.size()) fail(ErrorCode::configuration, "multidegree has the wrong arity");
  std::size_t l = 0;
  for (std::size_t t = 0; t < bounds.size(); ++t) {
    if (deg[t] < 0 || deg[t] > bounds[t]) fail(ErrorCode::truncation, "multidegree outside the truncation");
    l = l * static_cast<std::size_t>(bounds[t] + 1) + static_cast<std::size_t>(deg[t]);
  }
  return l;
}

std::vector<int> MultiSimplicialSet::degree(std::size_t l) const {
  std::vector<int> deg(bounds.size());
  for (std::size_t t = bounds.size(); t-- > 0;) {
    deg[t] = static_cast<int>(l % static_cast<std::size_t>(bounds[t] + 1));
    l /= static_cast<std::size_t>(bounds[t] + 1);
  }
  return deg;
}

void MultiSimplicialSet::allocate() {
  const std::size_t L = num_levels();
  d.assign(arity(), std::vector<std::vector<std::vector<CellId>>>(L));
  s.assign(arity(), std::vector<std::vector<std::vector<CellId>>>(L));
  for (std::size_t l = 0; l < L; ++l) {
    const auto deg = degree(l);
    for (std::size_t t = 0; t < arity(); ++t) {
      if (deg[t] >= 1) d[t][l].assign(deg[t] + 1, std::vector<CellId>(sizes[l], kNone));
      if (deg[t] < bounds[t]) s[t][l].assign(deg[t] + 1, std::vector<CellId>(sizes[l], kNone));
    }
  }
}

TruncSimplicialSet slice(const MultiSimplicialSet& x, int axis, const std::vector<int>& degree) {
  if (axis < 0 || axis >= static_cast<int>(x.arity())) fail(ErrorCode::configuration, "axis out of range");
  auto deg = degree;
  const int N = x.bounds[axis];
  std::vector<std::size_t> levels, sizes;
  for (int k = 0; k <= N; ++k) {
    deg[axis] = k;
    levels.push_back(x.level(deg));
    sizes.push_back(x.sizes[levels.back()]);
  }
  TruncSimplicialSet out;
  std::string name = x.name + " slice (";
  for (std::size_t t = 0; t < deg.size(); ++t)
    name += (t ? "," : "") + (static_cast<int>(t) == axis ? std::string("*") : std::to_string(deg[t]));
  out.name = name + ")";
  out.N = N;
  out.sizes = sizes;
  out.d.assign(N + 1, {});
  out.s.assign(N + 1, {});
  for (int k = 0; k <= N; ++k) {
    out.d[k] = x.d[axis][levels[k]];
    out.s[k] = x.s[axis][levels[k]];
  }
  if (x.describe_cell)
    out.describe_cell = [f = x.describe_cell, deg, axis](int k, CellId c) {
      auto g = deg;
      g[axis] = k;
      return f(g, c);
    };
  if (x.slice_iso) out.iso = x.slice_iso(axis, deg);
  return out;
}

SimplicialValidation validate_multisimplicial(const MultiSimplicialSet& x) {
  SimplicialValidation out;
  const std::size_t L = x.num_levels();
  if (x.sizes.size() != L || x.d.size() != x.arity() || x.s.size() != x.arity()) {
    out.table_problem = "tables do not match the multidegree range";
    return out;
  }
  // each axis on its own
  for (std::size_t t = 0; t < x.arity(); ++t)
    for (std::size_t l = 0; l < L; ++l) {
      const auto deg = x.degree(l);
      if (deg[t] != 0) continue;
      const auto sub = validate_simplicial(slice(x, static_cast<int>(t), deg));
      out.checked += sub.checked;
      if (!sub.table_problem.empty() && out.table_problem.empty()) out.table_problem = sub.table_problem;
      out.violation_count += sub.violation_count;
      for (auto v : sub.violations) {
        if (out.violations.size() >= 64) break;
        v.identity = "axis " + std::to_string(t) + ": " + v.identity;
        out.violations.push_back(v);
      }
    }
  if (!out.table_problem.empty()) return out;
  // operators of distinct axes commute
  const auto record = [&](const std::string& what, std::size_t l, int i, int j, CellId c, CellId a, CellId b) {
    ++out.checked;
    if (a == b) return;
    if (out.violations.size() < 64)
      out.violations.push_back({what, IdentityForm::dd, static_cast<int>(l), i, j, c, a, b});
    ++out.violation_count;
  };
  for (std::size_t t = 0; t < x.arity(); ++t)
    for (std::size_t u = 0; u < x.arity(); ++u) {
      if (t == u) continue;
      for (std::size_t l = 0; l < L; ++l) {
        auto deg = x.degree(l);
        const auto shifted = [&](int dt, int du) {
          auto g = deg;
          g[t] += dt;
          g[u] += du;
          return x.level(g);
        };
        const std::string tu = "axes " + std::to_string(t) + "/" + std::to_string(u) + ": ";
        // d^t_i d^u_j = d^u_j d^t_i (t < u suffices)
        if (t < u && deg[t] >= 1 && deg[u] >= 1)
          for (int i = 0; i <= deg[t]; ++i)
            for (int j = 0; j <= deg[u]; ++j)
              for (CellId c = 0; c < x.sizes[l]; ++c)
                record(tu + "d" + std::to_string(i) + " d'" + std::to_string(j), l, i, j, c,
                       x.d[t][shifted(0, -1)][i][x.d[u][l][j][c]], x.d[u][shifted(-1, 0)][j][x.d[t][l][i][c]]);
        // d^t_i s^u_j = s^u_j d^t_i
        if (deg[t] >= 1 && deg[u] < x.bounds[u])
          for (int i = 0; i <= deg[t]; ++i)
            for (int j = 0; j <= deg[u]; ++j)
              for (CellId c = 0; c < x.sizes[l]; ++c)
                record(tu + "d" + std::to_string(i) + " s'" + std::to_string(j), l, i, j, c,
                       x.d[t][shifted(0, 1)][i][x.s[u][l][j][c]], x.s[u][shifted(-1, 0)][j][x.d[t][l][i][c]]);
        // s^t_i s^u_j = s^u_j s^t_i (t < u suffices)
        if (t < u && deg[t] < x.bounds[t] && deg[u] < x.bounds[u])
          for (int i = 0; i <= deg[t]; ++i)
            for (int j = 0; j <= deg[u]; ++j)
              for (CellId c = 0; c < x.sizes[l]; ++c)
                record(tu + "s" + std::to_string(i) + " s'" + std::to_string(j), l, i, j, c,
                       x.s[t][shifted(0, 1)][i][x.s[u][l][j][c]], x.s[u][shifted(1, 0)][j][x.s[t][l][i][c]]);
      }
    }
  return out;
}

CheckReport multisimplicial_axis_check(const MultiSimplicialSet& x, int axis, const std::string& condition) {
  if (axis < 0 || axis >= static_cast<int>(x.arity())) fail(ErrorCode::configuration, "axis out of range");
  CheckReport r;
  r.condition = condition + " along axis " + std::to_string(axis);
  for (std::size_t l = 0; l < x.num_levels(); ++l) {
    const auto deg = x.degree(l);
    if (deg[axis] != 0) continue;
    const TruncSimplicialSet sl = slice(x, axis, deg);
    CheckReport sub;
    if (condition == "segal")
      sub = segal_check(sl, sl.N);
    else if (condition.rfind("2segal:", 0) == 0)
      sub = two_segal_check(sl, sl.N, parse_family(condition.substr(7)));
    else
      fail(ErrorCode::configuration, "unknown slice condition '" + condition + "'");
    r.mode = sub.mode;
    r.from = sub.from;
    r.to = sub.to;
    for (auto& v : sub.verdicts) {
      v.name = sl.name.substr(x.name.size() + 1) + " " + v.name;
      r.verdicts.push_back(std::move(v));
    }
  }
  return r;
}

}  // namespace sdot::simpl
