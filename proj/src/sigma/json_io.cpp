#include "sdot/sigma/json_io.hpp"

#include <fstream>
#include <map>

namespace sdot::sigma {

using nlohmann::json;

namespace {

std::string key(int a, int b) { return std::to_string(a) + "," + std::to_string(b); }
std::string key(int a, int b, int i) { return key(a, b) + "," + std::to_string(i); }

std::vector<int> parse_ints(const std::string& k, std::size_t count) {
  std::vector<int> out;
  std::size_t at = 0;
  try {
    while (at <= k.size()) {
      const auto comma = k.find(',', at);
      out.push_back(std::stoi(k.substr(at, comma == std::string::npos ? std::string::npos : comma - at)));
      if (comma == std::string::npos) break;
      at = comma + 1;
    }
  } catch (const std::exception&) {
    out.clear();
  }
  if (out.size() != count) fail(ErrorCode::parse, "key '" + k + "' is malformed");
  return out;
}

std::string name_of(const json& c) { return c.is_string() ? c.get<std::string>() : c.dump(); }

}  // namespace

json sigma_to_json(const SigmaSet& x) {
  json j;
  j["N"] = x.N;
  const auto id = [](CellId c) { return std::to_string(c); };
  j["aug_cells"] = json::array();
  for (CellId z = 0; z < x.aug_size; ++z) j["aug_cells"].push_back(id(z));
  j["aug_map"] = json::object();
  for (CellId z = 0; z < x.aug_size; ++z) j["aug_map"][id(z)] = id(x.aug[z]);
  j["cells"] = json::object();
  for (int m = 0; m + 1 <= x.N; ++m)
    for (int a = 0; a <= m; ++a) {
      json cells = json::array();
      for (CellId c = 0; c < x.size(a, m - a); ++c) cells.push_back(id(c));
      j["cells"][key(a, m - a)] = cells;
    }
  for (const char* which : {"d", "s"}) {
    const bool faces = which[0] == 'd';
    for (int t = 0; t < 2; ++t) {
      json tab = json::object();
      for (int m = 0; m + 1 <= x.N; ++m)
        for (int a = 0; a <= m; ++a) {
          const int b = m - a;
          const int own = t == 0 ? a : b;
          if (faces ? own == 0 : m + 2 > x.N) continue;
          for (int i = 0; i <= own; ++i) {
            json mp = json::object();
            for (CellId c = 0; c < x.size(a, b); ++c)
              mp[id(c)] = id(faces ? x.face(t, a, b, i, c) : x.degeneracy(t, a, b, i, c));
            tab[key(a, b, i)] = mp;
          }
        }
      j[which][std::to_string(t)] = tab;
    }
  }
  return j;
}

SigmaSet sigma_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::parse, "sigma set must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "N" && it.key() != "aug_cells" && it.key() != "aug_map" && it.key() != "cells" &&
        it.key() != "d" && it.key() != "s")
      fail(ErrorCode::parse, "unknown key '" + it.key() + "'");
  if (!j.contains("N") || !j["N"].is_number_integer()) fail(ErrorCode::parse, "'N' must be an integer");
  SigmaSet x;
  x.name = "json";
  x.N = j["N"].get<int>();
  if (x.N < 1) fail(ErrorCode::parse, "'N' must be at least 1");
  std::map<std::string, CellId> aug_ids;
  std::vector<std::string> aug_names;
  for (const json& c : j.at("aug_cells")) {
    const auto n = name_of(c);
    if (aug_ids.count(n)) fail(ErrorCode::parse, "duplicate augmentation cell " + n);
    aug_ids[n] = static_cast<CellId>(aug_names.size());
    aug_names.push_back(n);
  }
  x.aug_size = aug_names.size();
  const std::size_t objs = SigmaSet::index(0, x.N - 1) + static_cast<std::size_t>(x.N);
  std::vector<std::map<std::string, CellId>> ids(objs);
  std::vector<std::vector<std::string>> names(objs);
  x.sizes.assign(objs, 0);
  for (int m = 0; m + 1 <= x.N; ++m)
    for (int a = 0; a <= m; ++a) {
      const auto idx = SigmaSet::index(a, m - a);
      if (!j.at("cells").contains(key(a, m - a))) fail(ErrorCode::parse, "no cells listed at " + key(a, m - a));
      for (const json& c : j["cells"][key(a, m - a)]) {
        const auto n = name_of(c);
        if (ids[idx].count(n)) fail(ErrorCode::parse, "duplicate cell " + n + " at " + key(a, m - a));
        ids[idx][n] = static_cast<CellId>(names[idx].size());
        names[idx].push_back(n);
      }
      x.sizes[idx] = names[idx].size();
    }
  x.allocate();
  const auto lookup = [&](std::size_t idx, const json& c) {
    const auto it = ids[idx].find(name_of(c));
    if (it == ids[idx].end()) fail(ErrorCode::parse, "unknown cell " + name_of(c));
    return it->second;
  };
  if (j.contains("aug_map"))
    for (auto it = j["aug_map"].begin(); it != j["aug_map"].end(); ++it) {
      const auto z = aug_ids.find(it.key());
      if (z == aug_ids.end()) fail(ErrorCode::parse, "unknown augmentation cell " + it.key());
      x.aug[z->second] = lookup(SigmaSet::index(0, 0), it.value());
    }
  for (const char* which : {"d", "s"}) {
    if (!j.contains(which)) continue;
    const bool faces = which[0] == 'd';
    for (auto ax = j[which].begin(); ax != j[which].end(); ++ax) {
      if (ax.key() != "0" && ax.key() != "1") fail(ErrorCode::parse, "axis must be 0 or 1");
      const int t = ax.key()[0] - '0';
      for (auto it = ax.value().begin(); it != ax.value().end(); ++it) {
        const auto v = parse_ints(it.key(), 3);
        const int a = v[0], b = v[1], i = v[2];
        const int own = t == 0 ? a : b;
        const int ta = faces ? a - (t == 0) : a + (t == 0), tb = faces ? b - (t == 1) : b + (t == 1);
        if (!x.has(a, b) || !x.has(ta, tb) || i < 0 || i > own)
          fail(ErrorCode::parse, std::string(which) + " key " + it.key() + " is out of range");
        auto& table = (faces ? x.d : x.s)[t][SigmaSet::index(a, b)][i];
        for (auto e = it.value().begin(); e != it.value().end(); ++e)
          table[lookup(SigmaSet::index(a, b), e.key())] = lookup(SigmaSet::index(ta, tb), e.value());
      }
    }
  }
  x.describe_cell = [names, aug_names](const SigmaObj& o, CellId c) {
    return o.augmentation() ? aug_names[c] : names[SigmaSet::index(o.a, o.b)][c];
  };
  return x;
}

SigmaSet load_sigma(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::configuration, "cannot open " + path);
  try {
    return sigma_from_json(json::parse(in));
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, path + ": " + e.what());
  }
}

json condition_to_json(const ConditionReport& r) {
  json j{{"condition", r.condition}, {"mode", r.mode}, {"pass", r.pass()}, {"clauses", json::array()}};
  for (const Clause& c : r.clauses)
    j["clauses"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"domain", c.domain}, {"codomain", c.codomain}, {"witnesses", c.witnesses}});
  return j;
}

json sigma_validation_to_json(const SigmaValidation& v) {
  json j{{"pass", v.ok()}, {"checked", v.checked}, {"violation_count", v.violation_count}, {"violations", v.violations}};
  if (!v.table_problem.empty()) j["table_problem"] = v.table_problem;
  return j;
}

json probe_to_json(const Probe& p) {
  json j;
  j["set"] = sigma_to_json(p.set);
  j["ks"] = p.ks;
  j["generators"] = json::array();
  for (const auto& g : p.generators) {
    json jg{{"a", g.obj.a}, {"b", g.obj.b}, {"cell", g.cell}};
    if (p.vertices) jg["vertices"] = p.vertices(g.obj, g.cell);
    j["generators"].push_back(jg);
  }
  j["routes"] = json::object();
  for (int m = 0; m + 1 <= p.set.N; ++m)
    for (int a = 0; a <= m; ++a) {
      json rs = json::array();
      for (const auto& r : p.routes[SigmaSet::index(a, m - a)]) {
        switch (r.kind) {
          case Probe::Route::generator: rs.push_back({{"generator", r.index}}); break;
          case Probe::Route::augmentation: rs.push_back({{"augmentation", r.index}}); break;
          case Probe::Route::degeneracy:
            rs.push_back({{"degeneracy", {{"axis", r.axis}, {"i", r.i}, {"source", r.source}}}});
            break;
        }
      }
      j["routes"][key(a, m - a)] = rs;
    }
  return j;
}

}  // namespace sdot::sigma
