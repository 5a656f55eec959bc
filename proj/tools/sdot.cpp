#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdot/cli/job.hpp"
#include "sdot/error.hpp"
#include "sdot/fincat/builtin.hpp"
#include "sdot/fincat/json_io.hpp"
#include "sdot/sigma/control.hpp"

using nlohmann::json;
using sdot::cli::JobSpec;

namespace {

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) sdot::fail(sdot::ErrorCode::configuration, "cannot write " + out);
  f << j.dump(2) << "\n";
}

void add_input(CLI::App* app, JobSpec& s) {
  app->add_option("--builtin", s.builtin, "vect:q,dmax | pointed:nmax | zeros:count");
  app->add_option("--input", s.input, "exact category, control fixture or Σ-set JSON");
  app->add_option("--levels", s.levels, "level bound, or bounds k1,k2,..")->delimiter(',');
  app->add_option("--zero-policy", s.zero_policy, "all | canonical");
  app->add_option("--tie-break", s.tie, "least | greatest");
  app->add_option("--convention", s.convention, "zeros of s2: waldhausen | diagonal");
  app->add_option("--out", s.out, "output path, stdout when absent");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S-construction toolkit for finite exact categories"};
  app.require_subcommand(1);

  JobSpec spec;
  std::string checks_arg;
  std::string diff_a, diff_b;
  bool control = false;

  auto* gen = app.add_subcommand("generate", "write a builtin category or the negative-control fixture");
  gen->add_option("--builtin", spec.builtin);
  gen->add_flag("--control", control, "search for the semi-stable negative control");
  gen->add_option("--seed", spec.seed);
  gen->add_option("--out", spec.out);

  auto* con = app.add_subcommand("construct", "build a construction and write it as JSON");
  add_input(con, spec);
  con->add_option("--construction", spec.construction, "seq | s | s2 | sigma-s | esd | nerve");

  auto* chk = app.add_subcommand("check", "run checks and write a report");
  add_input(chk, spec);
  chk->add_option("--construction", spec.construction, "seq | s | s2 | sigma-s | esd | nerve");
  chk->add_option("--checks", spec.checks, "comma separated")->delimiter(',');
  chk->add_option("--family", spec.family, "all | lower | upper, for a bare 2segal");
  chk->add_option("--seed", spec.seed);

  auto* k0 = app.add_subcommand("k0", "Grothendieck group of a category");
  add_input(k0, spec);

  auto* dif = app.add_subcommand("diff", "compare two reports, ignoring timings");
  dif->add_option("a", diff_a)->required();
  dif->add_option("b", diff_b)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (control) {
        const auto s = sdot::sigma::search_semi_stable_control(spec.seed);
        emit(sdot::sigma::control_to_json(s), spec.out);
      } else {
        if (spec.builtin.empty()) sdot::fail(sdot::ErrorCode::configuration, "generate needs --builtin or --control");
        emit(sdot::fincat::exact_to_json(*sdot::fincat::builtin_from_spec(spec.builtin)), spec.out);
      }
      return 0;
    }
    if (con->parsed()) {
      emit(sdot::cli::construct(spec), spec.out);
      return 0;
    }
    if (chk->parsed() || k0->parsed()) {
      if (k0->parsed()) {
        spec.construction = "s";
        spec.checks = {"k0"};
      }
      const auto r = sdot::cli::run(spec);
      emit(r.full(), spec.out);
      if (r.report.contains("error")) std::cerr << "error: " << r.report["error"]["message"].get<std::string>() << "\n";
      return r.exit_status;
    }
    if (dif->parsed()) {
      const auto d = sdot::cli::report_diff(diff_a, diff_b);
      for (const auto& line : d) std::cout << line << "\n";
      return d.empty() ? 0 : 1;
    }
  } catch (const sdot::Error& e) {
    std::cerr << "error (" << sdot::to_string(e.code()) << "): " << e.what() << "\n";
    return sdot::exit_code(e.code());
  }
  return 0;
}
