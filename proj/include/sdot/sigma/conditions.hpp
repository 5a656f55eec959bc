#pragma once

#include <string>
#include <vector>

#include "sdot/sigma/exact_nerve.hpp"
#include "sdot/sigma/sigma_set.hpp"

namespace sdot::sigma {

struct Clause {
  std::string name;
  bool pass = true;
  std::uint64_t domain = 0, codomain = 0;
  std::vector<std::string> witnesses;  // first 8
};

struct ConditionReport {
  std::string condition;
  std::string mode = "strict";
  std::vector<Clause> clauses;
  bool pass() const;
  const Clause& clause(const std::string& name) const;
};

// horizontal: {(z, e) : e ∈ X_{0,1}, source(e) = aug(z)} -> X_{0,0} by target;
// vertical: {(z, e) : e ∈ X_{1,0}, target(e) = aug(z)} -> X_{0,0} by source.
ConditionReport check_pointedness(const SigmaSet& x);

enum class Stability { full, semi };
const char* to_string(Stability s);
Stability parse_stability(const std::string& s);

// span: X_{1,1} -> X_{1,0} ×_{X_{0,0}} X_{0,1} at the top-left corner;
// cospan: the same at the bottom-right corner. semi asks only for the span.
ConditionReport check_stability(const SigmaSet& x, Stability mode);
// Groupoid form on an exact nerve: every fiber of a corner restriction is a
// single class of squares isomorphic relative to the corner, with no
// nontrivial relative automorphism.
ConditionReport check_stability(const ExactNerve& nv, Stability mode);

}  // namespace sdot::sigma
