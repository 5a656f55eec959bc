#include "sdot/error.hpp"

#include <cstdlib>

namespace sdot {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::truncation: return "truncation";
    case ErrorCode::not_exact_closed: return "not-exact-closed";
    case ErrorCode::scale: return "scale";
    case ErrorCode::rejected_square: return "rejected-square";
    case ErrorCode::parse: return "parse";
    case ErrorCode::fixture_missing: return "fixture-missing";
  }
  return "unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::configuration: return 2;
    case ErrorCode::fixture_missing: return 2;
    case ErrorCode::truncation: return 3;
    case ErrorCode::not_exact_closed: return 4;
    case ErrorCode::scale: return 5;
    case ErrorCode::rejected_square: return 6;
    case ErrorCode::parse: return 7;
  }
  return 2;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

std::uint64_t work_budget() {
  static const std::uint64_t budget = [] {
    if (const char* env = std::getenv("SDOT_WORK_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1} << 26;
  }();
  return budget;
}

void charge(std::uint64_t amount, const char* what) {
  if (amount > work_budget())
    fail(ErrorCode::scale, std::string(what) + " needs " + std::to_string(amount) +
                               " units, budget is " + std::to_string(work_budget()));
}

}  // namespace sdot
