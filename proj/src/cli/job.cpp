#include "sdot/cli/job.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>

#include "sdot/fincat/builtin.hpp"
#include "sdot/fincat/json_io.hpp"
#include "sdot/ktheory/k0.hpp"
#include "sdot/sigma/conditions.hpp"
#include "sdot/sigma/construction.hpp"
#include "sdot/sigma/json_io.hpp"
#include "sdot/simpl/esd.hpp"
#include "sdot/simpl/json_io.hpp"
#include "sdot/simpl/multi.hpp"
#include "sdot/waldhausen/grid.hpp"
#include "sdot/waldhausen/iterated.hpp"
#include "sdot/waldhausen/low_degree.hpp"

namespace sdot::cli {

using nlohmann::json;
using fincat::ExactPtr;
using fincat::ZeroPolicy;

namespace {

const std::set<std::string> kConstructions{"seq", "s", "s2", "sigma-s", "esd", "nerve"};
const std::set<std::string> kChecks{"identities",  "segal",   "2segal:all", "2segal:lower", "2segal:upper", "pointed",
                                    "stable:full", "stable:semi", "low-degree", "row0",        "product-iso",  "k0"};

int max_level(const std::string& c) {
  if (c == "seq" || c == "sigma-s") return 4;
  if (c == "nerve") return 6;
  return 5;
}

ZeroPolicy policy_of(const JobSpec& s) { return s.zero_policy == "canonical" ? ZeroPolicy::canonical : ZeroPolicy::all; }
fincat::TieBreak tie_of(const JobSpec& s) {
  return s.tie == "greatest" ? fincat::TieBreak::greatest : fincat::TieBreak::least;
}

class Clock {
 public:
  explicit Clock(json& into) : into_(into) {}
  template <class F>
  auto operator()(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto finish = [&] {
      into_[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto r = f();
      finish();
      return r;
    }
  }

 private:
  json& into_;
};

struct Input {
  ExactPtr exact;
  std::shared_ptr<const sigma::SigmaSet> sigma;
  std::string source;
};

Input load_input(const JobSpec& spec) {
  Input in;
  if (!spec.builtin.empty()) {
    in.exact = fincat::builtin_from_spec(spec.builtin);
    in.source = "builtin " + spec.builtin;
    return in;
  }
  if (!std::filesystem::exists(spec.input)) fail(ErrorCode::configuration, "input file " + spec.input + " does not exist");
  std::ifstream f(spec.input);
  json j;
  try {
    f >> j;
  } catch (const json::exception& ex) {
    fail(ErrorCode::parse, spec.input + ": " + ex.what());
  }
  in.source = "file " + std::filesystem::path(spec.input).filename().string();
  if (j.value("format", "") == "sdot-control/1") {
    in.exact = fincat::exact_from_json(j.at("exact"), "control");
  } else if (j.contains("aug_cells")) {
    in.sigma = std::make_shared<const sigma::SigmaSet>(sigma::sigma_from_json(j));
  } else {
    in.exact = fincat::exact_from_json(j, std::filesystem::path(spec.input).stem().string());
  }
  return in;
}

int N_of(const JobSpec& s) { return s.levels.front(); }

json sizes_json(const simpl::TruncSimplicialSet& x) {
  json j = json::array();
  for (int n = 0; n <= x.N; ++n) j.push_back(x.size(n));
  return j;
}

json sizes_json(const sigma::SigmaSet& x) {
  json j{{"aug", x.aug_size}};
  for (int m = 0; m + 1 <= x.N; ++m)
    for (int a = 0; a <= m; ++a) j[std::to_string(a) + "," + std::to_string(m - a)] = x.size(a, m - a);
  return j;
}

json sizes_json(const simpl::MultiSimplicialSet& x) {
  json j = json::object();
  for (std::size_t l = 0; l < x.num_levels(); ++l) {
    std::string k;
    for (int v : x.degree(l)) k += (k.empty() ? "" : ",") + std::to_string(v);
    j[k] = x.sizes[l];
  }
  return j;
}

json equivalence_json(const fincat::EquivalenceReport& r) {
  return {{"essentially_surjective", r.essentially_surjective},
          {"fully_faithful", r.fully_faithful},
          {"source_classes", r.source_classes},
          {"target_classes", r.target_classes},
          {"witnesses", r.witnesses}};
}

// Everything the pipeline built.
struct Built {
  Input input;
  std::optional<simpl::TruncSimplicialSet> simplicial;
  std::optional<simpl::MultiSimplicialSet> multi;
  std::shared_ptr<const sigma::SigmaSet> sigma_set;
  std::shared_ptr<const sigma::ExactNerve> nerve;
  json construction;
};

Built build(const JobSpec& spec, Clock& clock) {
  Built b;
  b.input = clock("load", [&] { return load_input(spec); });
  const auto& c = spec.construction;
  const int N = N_of(spec);
  if (b.input.sigma && c != "nerve" && c != "sigma-s")
    fail(ErrorCode::configuration, "a Σ-set input supports only the nerve and sigma-s constructions");
  const auto e = b.input.exact;
  b.construction = {{"name", c}, {"levels", spec.levels}};
  clock("construct", [&] {
    if (c == "s") {
      b.simplicial = waldhausen::s_simplicial(e, N, policy_of(spec)).simplicial;
    } else if (c == "seq") {
      b.simplicial = waldhausen::seq_complex(e, N, tie_of(spec), policy_of(spec)).simplicial;
    } else if (c == "esd") {
      b.simplicial = simpl::edgewise_subdivision(waldhausen::s_simplicial(e, N, policy_of(spec)).simplicial);
    } else if (c == "s2") {
      b.multi = waldhausen::s_iterated(e, spec.levels, policy_of(spec), fincat::parse_multi_convention(spec.convention)).multi;
    } else if (c == "nerve") {
      if (!b.input.sigma) b.nerve = sigma::exact_nerve(e, N);
      b.sigma_set = b.input.sigma ? b.input.sigma : b.nerve->set;
    } else if (c == "sigma-s") {
      if (!b.input.sigma) b.nerve = sigma::exact_nerve(e, N + 1);
      b.sigma_set = b.input.sigma ? b.input.sigma : b.nerve->set;
      b.simplicial = sigma::s_construction_sigma(b.sigma_set, N).simplicial;
    }
  });
  if (b.simplicial) b.construction["sizes"] = sizes_json(*b.simplicial);
  if (b.multi) b.construction["sizes"] = sizes_json(*b.multi);
  if (b.sigma_set) b.construction["sigma_sizes"] = sizes_json(*b.sigma_set);
  return b;
}

ExactPtr need_exact(const Built& b, const std::string& check) {
  if (!b.input.exact) fail(ErrorCode::configuration, "check " + check + " needs an exact category input");
  return b.input.exact;
}

json run_check(const JobSpec& spec, const Built& b, const std::string& check, Clock& clock) {
  return clock("check:" + check, [&]() -> json {
    if (check == "identities") {
      if (b.simplicial) {
        const auto v = simpl::validate_simplicial(*b.simplicial);
        json j = simpl::validation_to_json(v, &*b.simplicial);
        if (spec.construction == "seq") {
          const int len = std::clamp(N_of(spec), 3, 4);
          const auto w = waldhausen::seq_nonsimpliciality_witness(b.input.exact, tie_of(spec), len);
          j["seq_witness"] = {{"strict_failure", w.strict_failure},
                              {"certificate_length3", w.certificate_length3},
                              {"length3_checked", w.length3_checked},
                              {"length3_equal", w.length3_equal},
                              {"verified", waldhausen::verify_seq_witness(b.input.exact, w)},
                              {"detail", w.describe(*b.input.exact)}};
        }
        return j;
      }
      if (b.multi) return simpl::validation_to_json(simpl::validate_multisimplicial(*b.multi));
      return sigma::sigma_validation_to_json(sigma::validate_sigma(*b.sigma_set));
    }
    if (check == "segal" || check.rfind("2segal:", 0) == 0) {
      if (b.multi) {
        json j{{"axes", json::array()}};
        bool pass = true;
        for (std::size_t t = 0; t < b.multi->arity(); ++t) {
          const auto r = simpl::multisimplicial_axis_check(*b.multi, static_cast<int>(t), check);
          pass = pass && r.pass();
          j["axes"].push_back(simpl::report_to_json(r));
        }
        j["pass"] = pass;
        return j;
      }
      if (!b.simplicial) fail(ErrorCode::configuration, "check " + check + " needs a simplicial construction");
      const auto& x = *b.simplicial;
      const auto r = check == "segal" ? simpl::segal_check(x, x.N)
                                      : simpl::two_segal_check(x, x.N, simpl::parse_family(check.substr(7)));
      return simpl::report_to_json(r, &x);
    }
    if (check == "pointed" || check.rfind("stable:", 0) == 0) {
      if (b.input.sigma) {
        const auto& x = *b.input.sigma;
        return sigma::condition_to_json(check == "pointed" ? sigma::check_pointedness(x)
                                                           : sigma::check_stability(x, sigma::parse_stability(check.substr(7))));
      }
      auto nv = b.nerve;
      if (!nv || nv->set->N < 3) nv = sigma::exact_nerve(need_exact(b, check), 3);
      if (check == "pointed") return sigma::condition_to_json(sigma::check_pointedness(*nv->set));
      const auto mode = sigma::parse_stability(check.substr(7));
      json j = sigma::condition_to_json(sigma::check_stability(*nv, mode));
      j["strict_pass"] = sigma::check_stability(*nv->set, mode).pass();
      return j;
    }
    if (check == "low-degree") {
      const auto r = waldhausen::low_degree_identifications(need_exact(b, check), policy_of(spec));
      json j{{"pass", r.pass()}, {"items", json::array()}};
      for (const auto& it : r.items)
        j["items"].push_back({{"name", it.name},
                              {"pass", it.pass()},
                              {"grid_count", it.grid_count},
                              {"target_count", it.target_count},
                              {"forward", equivalence_json(it.forward)},
                              {"backward", equivalence_json(it.backward)},
                              {"roundtrip", it.roundtrip},
                              {"objects_bijective", it.objects_bijective}});
      return j;
    }
    if (check == "row0") {
      const auto e = need_exact(b, check);
      json j{{"pass", true}, {"levels", json::array()}};
      for (int k = 0; k <= std::min(N_of(spec), 3); ++k) {
        const auto r = waldhausen::row0_equivalence(e, k, policy_of(spec));
        json jk = equivalence_json(r);
        jk["k"] = k;
        j["levels"].push_back(jk);
        if (!r.equivalence()) j["pass"] = false;
      }
      return j;
    }
    if (check == "product-iso") {
      const auto r = sigma::product_iso_check(spec.levels);
      return {{"pass", r.pass()},
              {"ks", r.ks},
              {"degree", r.degree},
              {"objects_checked", r.objects_checked},
              {"cells", r.cells},
              {"forward_problems", r.forward.problems},
              {"backward_problems", r.backward.problems},
              {"inverse", r.inverse}};
    }
    if (check == "k0") {
      const auto r = ktheory::k0(need_exact(b, check));
      json j = ktheory::k0_to_json(r);
      j["pass"] = r.certificate_ok;
      return j;
    }
    fail(ErrorCode::configuration, "unknown check " + check);
  });
}

json job_json(const JobSpec& s) {
  return {{"builtin", s.builtin},
          {"input", s.input.empty() ? "" : std::filesystem::path(s.input).filename().string()},
          {"construction", s.construction},
          {"checks", s.checks},
          {"levels", s.levels},
          {"family", s.family},
          {"tie_break", s.tie},
          {"zero_policy", s.zero_policy},
          {"convention", s.convention},
          {"seed", s.seed}};
}

json conventions_json(const JobSpec& s) {
  return {{"lower_family", "diagonals (0,j) of the (n+1)-gon"},
          {"upper_family", "diagonals (i,n) of the (n+1)-gon"},
          {"tie_break", s.tie},
          {"zero_policy", s.zero_policy},
          {"nerve_zero_policy", "canonical"},
          {"s2_zeros", s.convention == "diagonal" ? "only where every axis is diagonal, all squares bicartesian"
                                                  : "wherever one axis is diagonal, mixed squares commute"},
          {"truncation", s.levels},
          {"two_segal_mode", "groupoid fibers when the construction carries grid isomorphisms, strict otherwise"},
          {"stability_corners", "span at the top-left vertex, cospan at the bottom-right vertex"}};
}

}  // namespace

void validate_job(JobSpec& s) {
  if (s.builtin.empty() == s.input.empty()) fail(ErrorCode::configuration, "give exactly one of --builtin and --input");
  if (!kConstructions.count(s.construction)) fail(ErrorCode::configuration, "unknown construction " + s.construction);
  if (s.family != "all" && s.family != "lower" && s.family != "upper")
    fail(ErrorCode::configuration, "unknown family " + s.family);
  if (s.tie != "least" && s.tie != "greatest") fail(ErrorCode::configuration, "unknown tie-break " + s.tie);
  if (s.zero_policy != "all" && s.zero_policy != "canonical")
    fail(ErrorCode::configuration, "unknown zero policy " + s.zero_policy);
  if (s.convention != "waldhausen" && s.convention != "diagonal")
    fail(ErrorCode::configuration, "unknown convention " + s.convention);
  if (s.checks.empty()) s.checks = {"identities"};
  for (auto& c : s.checks) {
    if (c == "2segal") c = "2segal:" + s.family;
    if (!kChecks.count(c)) fail(ErrorCode::configuration, "unknown check " + c);
  }
  std::sort(s.checks.begin(), s.checks.end());
  s.checks.erase(std::unique(s.checks.begin(), s.checks.end()), s.checks.end());
  if (s.levels.empty()) fail(ErrorCode::configuration, "no levels given");
  for (int k : s.levels)
    if (k < 0) fail(ErrorCode::configuration, "levels must be nonnegative");
  const bool multi_levels = s.construction == "s2" ||
                            std::find(s.checks.begin(), s.checks.end(), "product-iso") != s.checks.end();
  if (!multi_levels && s.levels.size() != 1)
    fail(ErrorCode::configuration, "construction " + s.construction + " takes one level bound");
  if (s.construction == "s2") {
    if (s.levels.size() > 3 || std::accumulate(s.levels.begin(), s.levels.end(), 0) > 4)
      fail(ErrorCode::configuration, "s2 takes at most 3 levels summing to at most 4");
  } else if (N_of(s) > max_level(s.construction)) {
    fail(ErrorCode::configuration,
         "level bound " + std::to_string(N_of(s)) + " exceeds " + std::to_string(max_level(s.construction)) +
             " for " + s.construction);
  }
  if (s.construction == "nerve" && N_of(s) < 1) fail(ErrorCode::configuration, "the exact nerve needs degree >= 1");
  if (std::find(s.checks.begin(), s.checks.end(), "product-iso") != s.checks.end()) {
    if (s.levels.size() > 3) fail(ErrorCode::configuration, "product-iso takes at most 3 levels");
    for (int k : s.levels)
      if (k > 3) fail(ErrorCode::configuration, "product-iso takes levels at most 3");
  }
}

json JobResult::full() const {
  json j = report;
  j["timings"] = timings;
  return j;
}

JobResult error_result(const JobSpec& spec, const std::string& code, const std::string& message, int status) {
  JobResult r;
  r.report = {{"schema", kReportSchema}, {"job", job_json(spec)}, {"pass", false},
              {"error", {{"code", code}, {"message", message}}}};
  r.timings = json::object();
  r.pass = false;
  r.exit_status = status;
  return r;
}

JobResult run(JobSpec spec) {
  JobResult out;
  out.timings = json::object();
  Clock clock(out.timings);
  try {
    validate_job(spec);
    const Built b = build(spec, clock);
    json checks = json::object();
    for (const auto& c : spec.checks) {
      checks[c] = run_check(spec, b, c, clock);
      if (!checks[c].value("pass", false)) out.pass = false;
    }
    out.report = {{"schema", kReportSchema},
                  {"job", job_json(spec)},
                  {"source", b.input.source},
                  {"conventions", conventions_json(spec)},
                  {"construction", b.construction},
                  {"checks", checks},
                  {"pass", out.pass}};
    out.exit_status = out.pass ? 0 : 1;
  } catch (const Error& e) {
    auto t = out.timings;
    out = error_result(spec, to_string(e.code()), e.what(), exit_code(e.code()));
    out.timings = t;
  }
  return out;
}

json construct(JobSpec spec) {
  validate_job(spec);
  json timings;
  Clock clock(timings);
  const Built b = build(spec, clock);
  json j{{"construction", b.construction}};
  if (b.simplicial) j["simplicial"] = simpl::simplicial_to_json(*b.simplicial);
  if (b.sigma_set) j["sigma"] = sigma::sigma_to_json(*b.sigma_set);
  return j;
}

std::vector<std::string> json_diff(const json& a, const json& b) {
  std::vector<std::string> out;
  const std::function<void(const json&, const json&, const std::string&)> walk = [&](const json& x, const json& y,
                                                                                     const std::string& path) {
    if (x.type() != y.type()) {
      out.push_back(path + ": " + x.dump() + " -> " + y.dump());
      return;
    }
    if (x.is_object()) {
      std::set<std::string> keys;
      for (auto it = x.begin(); it != x.end(); ++it) keys.insert(it.key());
      for (auto it = y.begin(); it != y.end(); ++it) keys.insert(it.key());
      for (const auto& k : keys) {
        if (path.empty() && k == "timings") continue;
        if (!x.contains(k)) out.push_back(path + "/" + k + ": added");
        else if (!y.contains(k)) out.push_back(path + "/" + k + ": removed");
        else walk(x[k], y[k], path + "/" + k);
      }
    } else if (x.is_array()) {
      const std::size_t n = std::max(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        const std::string p = path + "/" + std::to_string(i);
        if (i >= x.size()) out.push_back(p + ": added");
        else if (i >= y.size()) out.push_back(p + ": removed");
        else walk(x[i], y[i], p);
      }
    } else if (x != y) {
      out.push_back(path + ": " + x.dump() + " -> " + y.dump());
    }
  };
  walk(a, b, "");
  return out;
}

std::vector<std::string> report_diff(const std::string& a, const std::string& b) {
  const auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::parse, "cannot read report " + path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      fail(ErrorCode::parse, path + ": " + e.what());
    }
    if (!j.is_object() || j.value("schema", "") != kReportSchema)
      fail(ErrorCode::parse, path + " is not an " + std::string(kReportSchema) + " report");
    return j;
  };
  return json_diff(load(a), load(b));
}

}  // namespace sdot::cli
