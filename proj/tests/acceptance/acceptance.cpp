#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdot/cli/job.hpp"
#include "sdot/error.hpp"
#include "sdot/fincat/builtin.hpp"
#include "sdot/ktheory/k0.hpp"
#include "sdot/sigma/conditions.hpp"
#include "sdot/sigma/construction.hpp"
#include "sdot/sigma/control.hpp"
#include "sdot/sigma/exact_nerve.hpp"
#include "sdot/sigma/probe.hpp"
#include "sdot/simpl/checks.hpp"
#include "sdot/simpl/esd.hpp"
#include "sdot/simpl/multi.hpp"
#include "sdot/waldhausen/grid.hpp"
#include "sdot/waldhausen/iterated.hpp"
#include "sdot/waldhausen/low_degree.hpp"
#include "sdot/waldhausen/seq.hpp"

using namespace sdot;
using fincat::ZeroPolicy;
using nlohmann::json;
using simpl::Family;

namespace {

// seconds
constexpr double kLimit1 = 60, kLimit2 = 120, kLimit3 = 120, kLimit4 = 120, kLimit5 = 300, kLimit6 = 300,
                 kLimit7 = 60, kLimit8 = 300, kLimit9 = 60, kLimit10 = 600, kLimit11 = 10, kLimit12 = 1200;

struct Outcome {
  bool pass = true;
  std::string detail;
  void need(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return since(t0);
}

std::string secs(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", t);
  return buf;
}

Outcome crit1() {
  Outcome o;
  for (auto [spec, N] : {std::pair{"vect:2,2", 4}, {"pointed:3", 3}}) {
    simpl::SimplicialValidation v;
    const double t = timed([&] { v = simpl::validate_simplicial(waldhausen::s_simplicial(fincat::builtin_from_spec(spec), N).simplicial); });
    o.need(v.ok(), std::string(spec) + " has " + std::to_string(v.violation_count) + " violations");
    o.need(t < kLimit1, std::string(spec) + " over time");
    o.note(std::string(spec) + " N=" + std::to_string(N) + " " + std::to_string(v.checked) + " identities in " + secs(t));
  }
  return o;
}

Outcome crit2() {
  Outcome o;
  const auto e = fincat::builtin_vect(2, 3);
  bool any = false;
  for (auto tie : {fincat::TieBreak::least, fincat::TieBreak::greatest}) {
    const auto w = waldhausen::seq_nonsimpliciality_witness(e, tie, 4);
    const bool ok = verify_seq_witness(e, w) && (w.strict_failure ? !w.iso.empty() : w.certificate_length3);
    any = any || ok;
    o.note(std::string(tie == fincat::TieBreak::least ? "least" : "greatest") + ": " +
           (w.strict_failure ? "strict failure at length " + std::to_string(w.length)
                             : "certificate " + std::to_string(w.length3_equal) + "/" + std::to_string(w.length3_checked)) +
           (ok ? " verified" : " not verified"));
  }
  o.need(any, "no tie-break gives a verified witness or certificate");
  return o;
}

Outcome crit3() {
  Outcome o;
  for (const char* spec : {"vect:2,2", "pointed:3"})
    for (int k = 0; k <= 3; ++k) {
      const auto r = waldhausen::row0_equivalence(fincat::builtin_from_spec(spec), k);
      o.need(r.essentially_surjective, std::string(spec) + " k=" + std::to_string(k) + " not essentially surjective");
      o.need(r.fully_faithful, std::string(spec) + " k=" + std::to_string(k) + " not fully faithful");
    }
  o.note("k=0..3 on vect:2,2 and pointed:3");
  return o;
}

Outcome crit4() {
  Outcome o;
  const auto r = waldhausen::low_degree_identifications(fincat::builtin_vect(2, 2));
  o.need(r.items.size() == 4, "expected four identifications");
  for (const auto& it : r.items) {
    o.need(it.pass(), it.name + " fails");
    o.note(it.name + " " + std::to_string(it.grid_count) + "/" + std::to_string(it.target_count));
  }
  return o;
}

Outcome crit5() {
  Outcome o;
  const auto s = waldhausen::s_simplicial(fincat::builtin_vect(2, 2), 4);
  const auto r = simpl::two_segal_check(s.simplicial, 4, Family::all);
  o.need(r.pass(), "S(vect:2,2) is not 2-Segal");
  o.note("S(vect:2,2) " + r.mode);
  const auto pent = simpl::pentagon_audit(s.simplicial);
  o.need(pent.pass(), "pentagon audit fails");

  const auto e = fincat::builtin_vect(2, 1);
  const auto nv = sigma::exact_nerve(e, 4);
  auto sc = sigma::s_construction_sigma(nv->set, 3);
  const auto rs = simpl::two_segal_check(sc.simplicial, 3, Family::all);
  if (rs.pass()) {
    o.note("S(Nex vect:2,1) strict");
  } else {
    const auto grids = waldhausen::s_simplicial(e, 3, ZeroPolicy::canonical);
    const auto bridge = sigma::sigma_bridge(*nv, sc, grids);
    o.need(bridge.ok(), "bridge needed for isomorphisms fails");
    sigma::transport_isos(sc, grids, bridge);
    const auto rg = simpl::two_segal_check(sc.simplicial, 3, Family::all);
    o.need(rg.pass(), "S(Nex vect:2,1) is not 2-Segal");
    o.note("S(Nex vect:2,1) " + rg.mode);
  }
  return o;
}

Outcome crit6() {
  Outcome o;
  const auto fx = sigma::load_semi_stable_control();
  const auto& c = fx.outcome;
  o.need(fx.matches_record, "recomputed outcome differs from the record");
  o.need(c.semi, "semi-stability fails");
  o.need(!c.full && !c.stability_full.clauses.empty(), "full stability does not fail");
  bool witnessed = false;
  for (const auto& cl : c.stability_full.clauses) witnessed = witnessed || (!cl.pass && !cl.witnesses.empty());
  o.need(witnessed, "full stability failure has no witness");
  o.need(c.lower_through >= 4, "lower family fails below 4");
  o.need(c.upper_fails_at > 0 && c.upper_fails_at <= 4, "no upper failure at n <= 4");
  o.need(c.upper_witness_verifies, "upper witness does not verify");
  o.note("lower through " + std::to_string(c.lower_through) + ", upper fails at " + std::to_string(c.upper_fails_at) +
         " (" + c.upper_witness.kind + ")");
  return o;
}

Outcome crit7() {
  Outcome o;
  const auto es = simpl::edgewise_subdivision(waldhausen::s_simplicial(fincat::builtin_vect(2, 2), 4).simplicial);
  const auto r = simpl::segal_check(es, es.N);
  o.need(r.pass(), "esd is not Segal");
  o.note("vect:2,2 esd levels 0.." + std::to_string(es.N) + ", " + std::to_string(r.verdicts.size()) + " Segal maps");
  // levels 0..1 carry no Segal map; one level higher fits the budget with canonical zeros
  const auto es5 = simpl::edgewise_subdivision(
      waldhausen::s_simplicial(fincat::builtin_vect(2, 2), 5, ZeroPolicy::canonical).simplicial);
  const auto r5 = simpl::segal_check(es5, es5.N);
  o.need(r5.pass() && !r5.verdicts.empty(), "esd of canonical S(vect:2,2) at 5 is not Segal");
  o.note("canonical vect:2,2 N=5 esd levels 0.." + std::to_string(es5.N) + ", " + std::to_string(r5.verdicts.size()) +
         " Segal maps");
  return o;
}

Outcome crit8() {
  Outcome o;
  const auto e = fincat::builtin_vect(2, 1);
  const auto nv = sigma::exact_nerve(e, 4);
  const auto sc = sigma::s_construction_sigma(nv->set, 3);
  const auto grids = waldhausen::s_simplicial(e, 3, ZeroPolicy::canonical);
  const auto b = sigma::sigma_bridge(*nv, sc, grids);
  o.need(b.ok(), "bridge fails");
  o.need(b.natural, "bridge not natural");
  for (int k = 0; k <= 3; ++k) {
    const auto audit = waldhausen::enumeration_cross_check(e, k, ZeroPolicy::canonical);
    o.need(audit.ok(), "enumeration audit fails at k=" + std::to_string(k));
    o.need(sc.levels[k]->consistency().ok(), "mapping space inconsistent at k=" + std::to_string(k));
    o.need(b.levels[k].maps == audit.backtracking && b.levels[k].grids == audit.backtracking,
           "counts disagree at k=" + std::to_string(k));
    o.note("k=" + std::to_string(k) + ": " + std::to_string(b.levels[k].maps));
  }
  return o;
}

Outcome crit9() {
  Outcome o;
  // ordered tuples of k_i >= 0 with sum(k_i + 1) <= 6
  std::vector<std::vector<int>> tuples;
  std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& ks, int room) {
    if (!ks.empty()) tuples.push_back(ks);
    for (int k = 0; k + 1 <= room; ++k) {
      ks.push_back(k);
      grow(ks, room - k - 1);
      ks.pop_back();
    }
  };
  std::vector<int> ks;
  grow(ks, 6);
  std::uint64_t cells = 0;
  for (const auto& t : tuples) {
    const auto r = sigma::product_iso_check(t);
    cells += r.cells;
    std::string name = "(";
    for (std::size_t i = 0; i < t.size(); ++i) name += (i ? "," : "") + std::to_string(t[i]);
    o.need(r.pass(), name + ") fails");
  }
  o.note(std::to_string(tuples.size()) + " tuples, " + std::to_string(cells) + " cells");
  return o;
}

Outcome crit10() {
  Outcome o;
  const auto e = fincat::builtin_vect(2, 1);
  const std::vector<int> bounds{2, 2};
  const auto w = waldhausen::s_iterated(e, bounds, ZeroPolicy::canonical);
  o.need(simpl::validate_multisimplicial(w.multi).ok(), "validation fails");

  bool functor_ok = true;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      const auto fc = waldhausen::functor_exact_category(e, b);
      const auto ob = waldhausen::s_disc(fc.exact, a, ZeroPolicy::canonical)->size();
      functor_ok = functor_ok && ob == w.multi.size({a, b});
      if (a >= 1 && b >= 1) functor_ok = functor_ok && waldhausen::iteration_bijection(e, a, b).bijective();
    }
  o.need(functor_ok, "no bijection with the functor category");

  const auto nv = sigma::exact_nerve(e, 5);
  const auto si = sigma::s_iterated_sigma(nv->set, bounds);
  const bool sigma_sizes = si.multi.sizes == w.multi.sizes;
  o.need(sigma_sizes, "sizes differ from the Sigma side (" + std::to_string(w.multi.size({0, 1})) + " vs " +
                          std::to_string(si.multi.size({0, 1})) + " at (0,1))");
  if (sigma_sizes) o.need(sigma::sigma_bridge(*nv, si, w).ok(), "Sigma bridge fails");

  // the other zero convention is the one matching the Sigma side
  const auto g = waldhausen::s_iterated(e, bounds, ZeroPolicy::canonical, fincat::MultiConvention::diagonal);
  const bool diag_bridge = si.multi.sizes == g.multi.sizes && sigma::sigma_bridge(*nv, si, g).ok();
  o.note(std::string("diagonal zeros: Sigma bridge ") + (diag_bridge ? "ok" : "fails") + ", functor category " +
         (g.multi.sizes == w.multi.sizes ? "ok" : "differs"));

  for (int axis = 0; axis < 2; ++axis) {
    const bool ok = simpl::multisimplicial_axis_check(w.multi, axis, "2segal:all").pass();
    o.need(ok, "axis " + std::to_string(axis) + " not 2-Segal");
    o.note("axis " + std::to_string(axis) + " 2-Segal " + (ok ? "yes" : "no"));
  }
  return o;
}

Outcome crit11() {
  Outcome o;
  const auto v = ktheory::k0(fincat::builtin_vect(2, 3));
  o.need(v.group.rank == 1 && v.group.torsion.empty(), "vect:2,3 is not Z");
  const auto p = ktheory::k0(fincat::builtin_pointed_sets(3));
  o.need(p.group.rank == 1 && p.group.torsion.empty(), "pointed:3 is not Z");
  const auto z = ktheory::k0(fincat::builtin_zeros(1));
  o.need(z.group.trivial(), "zeros:1 is not trivial");
  o.need(v.certificate_ok && p.certificate_ok && z.certificate_ok, "certificate fails");
  return o;
}

std::vector<cli::JobSpec> jobs() {
  std::vector<cli::JobSpec> out;
  const auto add = [&](std::string builtin, std::string input, std::string construction, std::vector<std::string> checks,
                       std::vector<int> levels, std::string policy = "all") {
    cli::JobSpec s;
    s.builtin = std::move(builtin);
    s.input = std::move(input);
    s.construction = std::move(construction);
    s.checks = std::move(checks);
    s.levels = std::move(levels);
    s.zero_policy = std::move(policy);
    out.push_back(s);
  };
  add("vect:2,2", "", "s", {"identities", "2segal:all"}, {4});
  add("pointed:3", "", "s", {"identities"}, {3});
  add("vect:2,3", "", "seq", {"identities"}, {3});
  add("vect:2,2", "", "s", {"row0", "low-degree"}, {3});
  add("", sigma::default_control_path(), "sigma-s",
      {"pointed", "stable:semi", "stable:full", "2segal:lower", "2segal:upper"}, {4});
  add("vect:2,2", "", "esd", {"identities", "segal"}, {4});
  add("vect:2,1", "", "nerve", {"pointed", "stable:full"}, {4});
  add("vect:2,1", "", "sigma-s", {"identities", "2segal:all"}, {3});
  add("vect:2,1", "", "s", {"product-iso"}, {2, 2});
  add("vect:2,1", "", "s2", {"identities", "2segal:all"}, {2, 2}, "canonical");
  add("vect:2,3", "", "s", {"k0"}, {2});
  return out;
}

Outcome crit12() {
  Outcome o;
  int n = 0;
  for (const auto& spec : jobs()) {
    const auto a = cli::run(spec), b = cli::run(spec);
    const bool same = a.report.dump() == b.report.dump() && cli::json_diff(a.full(), b.full()).empty();
    o.need(same, "job " + std::to_string(n) + " (" + spec.construction + ") differs");
    o.need(!a.report.contains("error"), "job " + std::to_string(n) + " errored");
    ++n;
  }
  o.note(std::to_string(n) + " jobs run twice");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "S is simplicial", 2 * kLimit1, crit1},
      {2, "Seq is not simplicial", kLimit2, crit2},
      {3, "row-0 equivalence", kLimit3, crit3},
      {4, "low-degree identifications", kLimit4, crit4},
      {5, "2-Segal", kLimit5, crit5},
      {6, "semi-stable control is lower only", kLimit6, crit6},
      {7, "edgewise subdivision is Segal", kLimit7, crit7},
      {8, "Sigma adjunction compatibility", kLimit8, crit8},
      {9, "product probe", kLimit9, crit9},
      {10, "iterated construction coherence", kLimit10, crit10},
      {11, "K0", kLimit11, crit11},
      {12, "determinism", kLimit12, crit12},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.need(false, std::string("exception: ") + ex.what());
    }
    const double t = since(t0);
    o.need(t < c.limit, "over the " + secs(c.limit) + " limit");
    if (!o.pass) ++failed;
    std::printf("criterion %d %s: %s [%s] %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs(t).c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, all.size());
  return failed == 0 ? 0 : 1;
}
