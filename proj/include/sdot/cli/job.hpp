#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace sdot::cli {

struct JobSpec {
  std::string builtin;  // "vect:2,2", "pointed:3", "zeros:1"
  std::string input;    // JSON path: exact category, control fixture or Σ-set
  std::string construction = "s";  // seq | s | s2 | sigma-s | esd | nerve
  std::vector<std::string> checks;
  std::vector<int> levels{2};
  std::string family = "all";  // for a bare "2segal"
  std::string tie = "least";
  std::string zero_policy = "all";
  std::string convention = "waldhausen";  // s2 zeros: waldhausen | diagonal
  std::uint64_t seed = 1;
  std::string out;
};

// Normalises the spec; configuration error when something is unknown or over budget.
void validate_job(JobSpec& spec);

struct JobResult {
  nlohmann::json report;   // deterministic part
  nlohmann::json timings;  // seconds per stage
  bool pass = true;
  int exit_status = 0;
  // report with the timing block attached
  nlohmann::json full() const;
};

JobResult run(JobSpec spec);
// Report for a failure before or during the pipeline.
JobResult error_result(const JobSpec& spec, const std::string& code, const std::string& message, int status);

// The construction itself as JSON (simplicial, Σ-set or multisimplicial sizes).
nlohmann::json construct(JobSpec spec);

// Paths of fields that differ, ignoring "timings". Parse error on unreadable
// files or a schema other than sdot-report/1.
std::vector<std::string> report_diff(const std::string& a, const std::string& b);
std::vector<std::string> json_diff(const nlohmann::json& a, const nlohmann::json& b);

inline constexpr const char* kReportSchema = "sdot-report/1";

}  // namespace sdot::cli
