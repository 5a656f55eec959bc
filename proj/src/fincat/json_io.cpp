#include "sdot/fincat/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

namespace sdot::fincat {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::parse, where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(ErrorCode::parse, "unknown key '" + it.key() + "' in " + where);
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) fail(ErrorCode::parse, where + " must be a string id");
  return j.get<std::string>();
}

bool flag(const json& j, const char* key) {
  if (!j.contains(key)) return false;
  if (!j[key].is_boolean()) fail(ErrorCode::parse, std::string("'") + key + "' must be boolean");
  return j[key].get<bool>();
}

}  // namespace

ExactPtr exact_from_json(const json& j, const std::string& name) {
  only_keys(j, {"objects", "morphisms", "identities", "composition", "bicartesian"}, "category");
  for (const char* k : {"objects", "morphisms", "identities", "composition"})
    if (!j.contains(k)) fail(ErrorCode::parse, std::string("category lacks '") + k + "'");

  FinCategory::Builder b;
  std::map<std::string, ObjId> obj;
  std::vector<char> zero;
  for (const json& o : j["objects"]) {
    only_keys(o, {"id", "label", "zero"}, "object");
    const std::string id = str(o.at("id"), "object id");
    if (obj.count(id)) fail(ErrorCode::parse, "duplicate object id " + id);
    obj[id] = b.add_object(o.contains("label") ? str(o["label"], "label") : id);
    zero.push_back(flag(o, "zero"));
  }
  std::map<std::string, MorId> mor;
  std::vector<char> mono, epi;
  for (const json& m : j["morphisms"]) {
    only_keys(m, {"id", "label", "src", "dst", "mono", "epi"}, "morphism");
    const std::string id = str(m.at("id"), "morphism id");
    if (mor.count(id)) fail(ErrorCode::parse, "duplicate morphism id " + id);
    const auto src = obj.find(str(m.at("src"), "src")), dst = obj.find(str(m.at("dst"), "dst"));
    if (src == obj.end() || dst == obj.end()) fail(ErrorCode::parse, "morphism " + id + " has an unknown endpoint");
    mor[id] = b.add_morphism(src->second, dst->second, m.contains("label") ? str(m["label"], "label") : id);
    mono.push_back(flag(m, "mono"));
    epi.push_back(flag(m, "epi"));
  }
  const auto mor_of = [&](const json& v) {
    const auto it = mor.find(str(v, "morphism reference"));
    if (it == mor.end()) fail(ErrorCode::parse, "unknown morphism " + v.dump());
    return it->second;
  };
  if (!j["identities"].is_object()) fail(ErrorCode::parse, "'identities' must map object ids to morphism ids");
  for (auto it = j["identities"].begin(); it != j["identities"].end(); ++it) {
    const auto o = obj.find(it.key());
    if (o == obj.end()) fail(ErrorCode::parse, "identity for unknown object " + it.key());
    b.set_identity(o->second, mor_of(it.value()));
  }
  for (const json& t : j["composition"]) {
    if (!t.is_array() || t.size() != 3) fail(ErrorCode::parse, "composition entries are [g, f, gf]");
    b.set_composite(mor_of(t[0]), mor_of(t[1]), mor_of(t[2]));
  }
  std::vector<MorId> remap;
  auto cat = std::make_shared<const FinCategory>(std::move(b).build(&remap));
  std::vector<char> mono2(mono.size()), epi2(epi.size());
  for (std::size_t i = 0; i < remap.size(); ++i) {
    mono2[remap[i]] = mono[i];
    epi2[remap[i]] = epi[i];
  }
  if (std::find(zero.begin(), zero.end(), 1) == zero.end()) fail(ErrorCode::parse, "category has no zero object");
  auto e = std::make_shared<ProtoExactStructure>(cat, std::move(mono2), std::move(epi2), std::move(zero), name);
  if (j.contains("bicartesian")) {
    std::vector<Square> sq;
    for (const json& s : j["bicartesian"]) {
      if (!s.is_array() || s.size() != 8) fail(ErrorCode::parse, "bicartesian entries have 8 ids");
      const auto o = [&](int i) {
        const auto it = obj.find(str(s[i], "object reference"));
        if (it == obj.end()) fail(ErrorCode::parse, "unknown object " + s[i].dump());
        return it->second;
      };
      sq.push_back({o(0), o(1), o(2), o(3), remap[mor_of(s[4])], remap[mor_of(s[5])], remap[mor_of(s[6])],
                    remap[mor_of(s[7])]});
    }
    e->use_designated(std::move(sq));
  } else {
    e->use_universal();
  }
  return e;
}

ExactPtr load_exact(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::configuration, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    fail(ErrorCode::parse, path + ": " + ex.what());
  }
  return exact_from_json(j, path);
}

json exact_to_json(const ProtoExactStructure& e) {
  const FinCategory& c = e.category();
  const auto oid = [](ObjId a) { return "o" + std::to_string(a); };
  const auto mid = [](MorId f) { return "m" + std::to_string(f); };
  json j;
  j["objects"] = json::array();
  for (ObjId a = 0; a < c.num_objects(); ++a)
    j["objects"].push_back({{"id", oid(a)}, {"label", c.object_label(a)}, {"zero", e.is_zero(a)}});
  j["morphisms"] = json::array();
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    j["morphisms"].push_back({{"id", mid(f)},
                              {"label", c.morphism_label(f)},
                              {"src", oid(c.source(f))},
                              {"dst", oid(c.target(f))},
                              {"mono", e.is_mono(f)},
                              {"epi", e.is_epi(f)}});
  j["identities"] = json::object();
  for (ObjId a = 0; a < c.num_objects(); ++a) j["identities"][oid(a)] = mid(c.identity(a));
  j["composition"] = json::array();
  std::uint64_t pairs = 0;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    for (ObjId b = 0; b < c.num_objects(); ++b)
      for (ObjId x = 0; x < c.num_objects(); ++x) pairs += std::uint64_t{c.hom_size(a, b)} * c.hom_size(b, x);
  charge(pairs, "category export");
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (ObjId x = 0; x < c.num_objects(); ++x) {
      const ObjId b = c.target(f);
      for (MorId g = c.hom_begin(b, x), ge = g + c.hom_size(b, x); g < ge; ++g)
        j["composition"].push_back({mid(g), mid(f), mid(c.compose(g, f))});
    }
  if (e.rule() != BicartesianRule::universal) {
    j["bicartesian"] = json::array();
    // native rules are exported extensionally
    for (MorId top = 0; top < c.num_morphisms(); ++top) {
      if (!e.is_mono(top)) continue;
      const ObjId tl = c.source(top);
      for (ObjId bl = 0; bl < c.num_objects(); ++bl)
        for (MorId left = c.hom_begin(tl, bl), le = left + c.hom_size(tl, bl); left < le; ++left) {
          if (!e.is_epi(left)) continue;
          for (const Square& s : span_completions(e, top, left))
            j["bicartesian"].push_back({oid(s.tl), oid(s.tr), oid(s.bl), oid(s.br), mid(s.top), mid(s.left),
                                        mid(s.right), mid(s.bottom)});
        }
    }
  }
  return j;
}

json diagram_to_json(const ProtoExactStructure& e, const Shape& shape, const Diagram& d) {
  const FinCategory& c = e.category();
  json j = json::object();
  json objs = json::object(), edges = json::array();
  for (std::uint32_t p = 0; p < shape.size(); ++p) objs[shape.label(p)] = c.object_label(d.objects[p]);
  for (std::uint32_t i = 0; i < shape.edges.size(); ++i)
    edges.push_back({shape.label(shape.edges[i].src), shape.label(shape.edges[i].dst), c.morphism_label(d.morphisms[i])});
  j["objects"] = objs;
  j["edges"] = edges;
  return j;
}

}  // namespace sdot::fincat
