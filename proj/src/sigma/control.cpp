#include "sdot/sigma/control.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

#include "sdot/fincat/json_io.hpp"
#include "sdot/simpl/json_io.hpp"

#ifndef SDOT_DATA_DIR
#define SDOT_DATA_DIR "data"
#endif

namespace sdot::sigma {

using fincat::FinCategory;
using fincat::Square;
using nlohmann::json;

namespace {

struct ControlCategory {
  std::shared_ptr<const FinCategory> cat;
  std::vector<char> mono, epi, zero;
};

ControlCategory build_category() {
  FinCategory::Builder b;
  const ObjId O = b.add_object("0"), A = b.add_object("A"), B = b.add_object("B");
  struct M {
    ObjId s, t;
    const char* label;
    bool mono, epi;
  };
  const std::vector<M> ms{{O, O, "id_0", true, true}, {O, A, "z_A", true, false}, {O, B, "z_B", true, false},
                          {A, O, "t_A", false, true}, {A, A, "id_A", true, true}, {A, A, "e_A", false, false},
                          {A, B, "h", true, false},   {B, O, "t_B", false, true}, {B, A, "g", false, false},
                          {B, B, "id_B", true, true}, {B, B, "e_B", false, false}};
  std::vector<MorId> id(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) id[i] = b.add_morphism(ms[i].s, ms[i].t, ms[i].label);
  const auto is_id = [&](std::size_t i) { return ms[i].label[0] == 'i'; };
  b.set_identity(O, id[0]);
  b.set_identity(A, id[4]);
  b.set_identity(B, id[9]);
  // the non-identity morphism between two objects
  const auto zero_map = [&](ObjId s, ObjId t) {
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (ms[i].s == s && ms[i].t == t && (!is_id(i) || s == O)) return i;
    return ms.size();
  };
  for (std::size_t f = 0; f < ms.size(); ++f)
    for (std::size_t g = 0; g < ms.size(); ++g) {
      if (ms[f].t != ms[g].s) continue;
      const std::size_t gf = is_id(f) ? g : is_id(g) ? f : zero_map(ms[f].s, ms[g].t);
      b.set_composite(id[g], id[f], id[gf]);
    }
  std::vector<MorId> remap;
  ControlCategory cc;
  cc.cat = std::make_shared<const FinCategory>(std::move(b).build(&remap));
  cc.mono.assign(ms.size(), 0);
  cc.epi.assign(ms.size(), 0);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    cc.mono[remap[i]] = ms[i].mono;
    cc.epi[remap[i]] = ms[i].epi;
  }
  cc.zero = {1, 0, 0};
  return cc;
}

std::vector<Square> trivial_squares(const ControlCategory& cc) {
  const FinCategory& c = *cc.cat;
  std::vector<Square> out;
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    const MorId is = c.identity(c.source(f)), it = c.identity(c.target(f));
    if (cc.mono[f]) out.push_back(fincat::make_square(c, f, is, it, f));
    if (cc.epi[f] && !(cc.mono[f] && f == is)) out.push_back(fincat::make_square(c, is, f, f, it));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Square> control_candidates() {
  const auto cc = build_category();
  const FinCategory& c = *cc.cat;
  const auto trivial = trivial_squares(cc);
  std::vector<Square> out;
  for (MorId top = 0; top < c.num_morphisms(); ++top)
    for (MorId left = 0; left < c.num_morphisms(); ++left)
      for (MorId right = 0; right < c.num_morphisms(); ++right)
        for (MorId bottom = 0; bottom < c.num_morphisms(); ++bottom) {
          if (!cc.mono[top] || !cc.mono[bottom] || !cc.epi[left] || !cc.epi[right]) continue;
          if (c.source(top) != c.source(left) || c.target(top) != c.source(right) ||
              c.target(left) != c.source(bottom) || c.target(right) != c.target(bottom))
            continue;
          const Square s = fincat::make_square(c, top, left, right, bottom);
          if (!fincat::commutes(c, s)) continue;
          if (std::binary_search(trivial.begin(), trivial.end(), s)) continue;
          out.push_back(s);
        }
  return out;
}

ExactPtr control_category(const std::vector<Square>& extra_squares) {
  const auto cc = build_category();
  auto e = std::make_shared<fincat::ProtoExactStructure>(cc.cat, cc.mono, cc.epi, cc.zero, "control");
  auto sq = trivial_squares(cc);
  sq.insert(sq.end(), extra_squares.begin(), extra_squares.end());
  e->use_designated(std::move(sq));
  return e;
}

ControlOutcome evaluate_control(const ExactPtr& e) {
  ControlOutcome out;
  if (!fincat::validate_exact(*e).ok()) return out;
  std::shared_ptr<const ExactNerve> nv;
  try {
    nv = exact_nerve(e, 5);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::not_exact_closed) return out;
    throw;
  }
  if (!validate_sigma(*nv->set).ok()) return out;
  out.valid = true;
  out.pointedness = check_pointedness(*nv->set);
  out.stability_semi = check_stability(*nv, Stability::semi);
  out.stability_full = check_stability(*nv, Stability::full);
  out.pointed = out.pointedness.pass();
  out.semi = out.stability_semi.pass();
  out.full = out.stability_full.pass();
  if (!out.pointed || !out.semi || out.full) return out;
  const auto sc = s_construction_sigma(nv->set, 4);
  const auto lower = simpl::two_segal_check(sc.simplicial, 4, simpl::Family::lower);
  const auto upper = simpl::two_segal_check(sc.simplicial, 4, simpl::Family::upper);
  out.lower_through = 2;
  for (int n = 3; n <= 4; ++n) {
    bool ok = true;
    for (const auto& v : lower.verdicts)
      if (v.n == n && !v.pass) ok = false;
    if (!ok) break;
    out.lower_through = n;
  }
  for (const auto& v : upper.verdicts)
    if (!v.pass && (out.upper_fails_at < 0 || v.n < out.upper_fails_at) && !v.witnesses.empty()) {
      out.upper_fails_at = v.n;
      out.upper_witness = v.witnesses.front();
      out.upper_witness_verifies = simpl::verify_witness(sc.simplicial, v, v.witnesses.front());
    }
  return out;
}

ControlSearch search_semi_stable_control(std::uint64_t seed, std::size_t max_subset) {
  ControlSearch s;
  s.seed = seed;
  auto cands = control_candidates();
  std::mt19937_64 rng(seed);
  std::shuffle(cands.begin(), cands.end(), rng);
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
    if (left == 0) {
      ++s.subsets_tried;
      std::vector<Square> sq;
      for (auto i : pick) sq.push_back(cands[i]);
      const auto e = control_category(sq);
      auto out = evaluate_control(e);
      if (!out.accepted()) return false;
      std::sort(sq.begin(), sq.end());
      s.squares = sq;
      s.exact = e;
      s.outcome = std::move(out);
      return true;
    }
    for (std::size_t i = from; i < cands.size(); ++i) {
      pick.push_back(i);
      if (rec(i + 1, left - 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (std::size_t size = 0; size <= max_subset; ++size)
    if (rec(0, size)) return s;
  fail(ErrorCode::fixture_missing, "no semi-stable control among subsets of size <= " + std::to_string(max_subset));
}

namespace {

json outcome_json(const ControlOutcome& o) {
  return {{"pointed", o.pointed},
          {"semi", o.semi},
          {"full", o.full},
          {"lower_through", o.lower_through},
          {"upper_fails_at", o.upper_fails_at},
          {"full_witnesses", o.stability_full.pass() ? json::array() : json(o.stability_full.clause("cospan").witnesses)},
          {"upper_witness",
           {{"kind", o.upper_witness.kind},
            {"n", o.upper_witness.n},
            {"cells", o.upper_witness.cells},
            {"target", o.upper_witness.target}}}};
}

}  // namespace

json control_to_json(const ControlSearch& s) {
  return {{"format", "sdot-control/1"},
          {"seed", s.seed},
          {"subsets_tried", s.subsets_tried},
          {"exact", fincat::exact_to_json(*s.exact)},
          {"expected", outcome_json(s.outcome)}};
}

std::string default_control_path() { return std::string(SDOT_DATA_DIR) + "/semi_stable_control.json"; }

ControlFixture load_semi_stable_control(const std::string& path) {
  if (!std::filesystem::exists(path)) fail(ErrorCode::fixture_missing, "control fixture " + path + " is missing");
  ControlFixture fx;
  fx.path = path;
  std::ifstream in(path);
  try {
    in >> fx.data;
  } catch (const json::exception& ex) {
    fail(ErrorCode::parse, path + ": " + ex.what());
  }
  if (fx.data.value("format", "") != "sdot-control/1") fail(ErrorCode::parse, path + " is not a control fixture");
  fx.exact = fincat::exact_from_json(fx.data.at("exact"), "control");
  fx.outcome = evaluate_control(fx.exact);
  const json now = outcome_json(fx.outcome), rec = fx.data.at("expected");
  for (auto it = rec.begin(); it != rec.end(); ++it)
    if (!now.contains(it.key()) || now[it.key()] != it.value()) fx.mismatches.push_back(it.key());
  fx.matches_record = fx.mismatches.empty() && now.size() == rec.size();
  return fx;
}

std::shared_ptr<const ExactNerve> semi_stable_negative_control(const std::string& path) {
  const auto fx = load_semi_stable_control(path);
  if (!fx.ok()) fail(ErrorCode::fixture_missing, "control fixture " + path + " does not re-verify");
  return exact_nerve(fx.exact, 5);
}

}  // namespace sdot::sigma
