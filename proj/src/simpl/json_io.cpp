#include "sdot/simpl/json_io.hpp"

#include <fstream>
#include <map>
#include <set>

namespace sdot::simpl {

using nlohmann::json;

namespace {

std::pair<int, int> parse_key(const std::string& k) {
  const auto comma = k.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(k);
    return {std::stoi(k.substr(0, comma)), std::stoi(k.substr(comma + 1))};
  } catch (const std::exception&) {
    fail(ErrorCode::parse, "operator key '" + k + "' is not 'n,i'");
  }
}

}  // namespace

TruncSimplicialSet simplicial_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::parse, "simplicial set must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "N" && it.key() != "cells" && it.key() != "d" && it.key() != "s")
      fail(ErrorCode::parse, "unknown key '" + it.key() + "'");
  if (!j.contains("N") || !j["N"].is_number_integer()) fail(ErrorCode::parse, "'N' must be an integer");
  const int N = j["N"].get<int>();
  if (N < 0) fail(ErrorCode::parse, "'N' must be nonnegative");
  std::vector<std::map<std::string, CellId>> ids(N + 1);
  std::vector<std::vector<std::string>> names(N + 1);
  std::vector<std::size_t> sizes(N + 1, 0);
  for (int n = 0; n <= N; ++n) {
    const std::string key = std::to_string(n);
    if (!j.at("cells").contains(key)) fail(ErrorCode::parse, "no cells listed for level " + key);
    for (const json& c : j["cells"][key]) {
      const std::string id = c.is_string() ? c.get<std::string>() : c.dump();
      if (ids[n].count(id)) fail(ErrorCode::parse, "duplicate cell " + id);
      ids[n][id] = static_cast<CellId>(names[n].size());
      names[n].push_back(id);
    }
    sizes[n] = names[n].size();
  }
  TruncSimplicialSet x;
  x.name = "json";
  x.allocate(N, sizes);
  const auto fill = [&](const char* which, auto& tables, int shift) {
    if (!j.contains(which)) return;
    for (auto it = j[which].begin(); it != j[which].end(); ++it) {
      const auto [n, i] = parse_key(it.key());
      const int to = n + shift;
      if (n < 0 || n > N || to < 0 || to > N || i < 0 || i > n)
        fail(ErrorCode::parse, std::string(which) + " key " + it.key() + " is out of range");
      if (i >= static_cast<int>(tables[n].size())) fail(ErrorCode::parse, std::string(which) + " key " + it.key() + " is out of range");
      for (auto e = it.value().begin(); e != it.value().end(); ++e) {
        const auto src = ids[n].find(e.key());
        const std::string dst_name = e.value().is_string() ? e.value().get<std::string>() : e.value().dump();
        const auto dst = ids[to].find(dst_name);
        if (src == ids[n].end() || dst == ids[to].end())
          fail(ErrorCode::parse, std::string(which) + " " + it.key() + " names an unknown cell");
        tables[n][i][src->second] = dst->second;
      }
    }
  };
  fill("d", x.d, -1);
  fill("s", x.s, 1);
  x.describe_cell = [names](int n, CellId c) { return names[n][c]; };
  return x;
}

TruncSimplicialSet load_simplicial(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::configuration, "cannot open " + path);
  try {
    return simplicial_from_json(json::parse(in));
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, path + ": " + e.what());
  }
}

json simplicial_to_json(const TruncSimplicialSet& x) {
  json j;
  j["N"] = x.N;
  const auto id = [](CellId c) { return std::to_string(c); };
  for (int n = 0; n <= x.N; ++n) {
    json cells = json::array();
    for (CellId c = 0; c < x.size(n); ++c) cells.push_back(id(c));
    j["cells"][std::to_string(n)] = cells;
  }
  j["d"] = json::object();
  j["s"] = json::object();
  for (int n = 1; n <= x.N; ++n)
    for (int i = 0; i <= n; ++i) {
      json m = json::object();
      for (CellId c = 0; c < x.size(n); ++c) m[id(c)] = id(x.d[n][i][c]);
      j["d"][std::to_string(n) + "," + std::to_string(i)] = m;
    }
  for (int n = 0; n < x.N; ++n)
    for (int i = 0; i <= n; ++i) {
      json m = json::object();
      for (CellId c = 0; c < x.size(n); ++c) m[id(c)] = id(x.s[n][i][c]);
      j["s"][std::to_string(n) + "," + std::to_string(i)] = m;
    }
  return j;
}

json report_to_json(const CheckReport& r, const TruncSimplicialSet* x) {
  json j;
  j["condition"] = r.condition;
  j["mode"] = r.mode;
  j["checked_levels"] = {r.from, r.to};
  j["pass"] = r.pass();
  j["strict_pass"] = r.strict_pass();
  j["verdicts"] = json::array();
  for (const Verdict& v : r.verdicts) {
    json jv;
    jv["name"] = v.name;
    jv["n"] = v.n;
    jv["pieces"] = v.pieces;
    jv["pass"] = v.pass;
    jv["strict_pass"] = v.strict_pass;
    jv["source_size"] = v.source_size;
    jv["target_size"] = v.target_size;
    jv["image_size"] = v.image_size;
    jv["witnesses"] = json::array();
    for (const Witness& w : v.witnesses) {
      json jw{{"kind", w.kind}, {"n", w.n}, {"cells", w.cells}, {"target", w.target}, {"detail", w.detail}};
      if (x) {
        json shown = json::array();
        for (CellId c : w.cells) shown.push_back(x->describe(w.n, c));
        jw["cells_shown"] = shown;
        json tshown = json::array();
        for (std::size_t t = 0; t < w.target.size() && t < v.pieces.size(); ++t)
          tshown.push_back(x->describe(static_cast<int>(v.pieces[t].size()) - 1, w.target[t]));
        jw["target_shown"] = tshown;
      }
      jv["witnesses"].push_back(jw);
    }
    j["verdicts"].push_back(jv);
  }
  return j;
}

json validation_to_json(const SimplicialValidation& v, const TruncSimplicialSet* x) {
  json j;
  j["pass"] = v.ok();
  j["checked"] = v.checked;
  j["violation_count"] = v.violation_count;
  if (!v.table_problem.empty()) j["table_problem"] = v.table_problem;
  j["violations"] = json::array();
  for (const auto& w : v.violations) {
    json jw{{"identity", w.identity}, {"n", w.n}, {"i", w.i}, {"j", w.j},
            {"cell", w.cell}, {"lhs", w.lhs}, {"rhs", w.rhs}};
    if (x && w.n <= x->N) jw["cell_shown"] = x->describe(w.n, w.cell);
    j["violations"].push_back(jw);
  }
  return j;
}

}  // namespace sdot::simpl
