#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sdot {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;
using CellId = std::uint32_t;
inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

enum class ErrorCode {
  configuration,
  truncation,
  not_exact_closed,
  scale,
  rejected_square,
  parse,
  fixture_missing,
};

const char* to_string(ErrorCode code);
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

// Upper bound on the number of cells/candidates a single operation may
// materialise. Read once from SDOT_WORK_BUDGET, default 2^26.
std::uint64_t work_budget();
void charge(std::uint64_t amount, const char* what);

}  // namespace sdot
