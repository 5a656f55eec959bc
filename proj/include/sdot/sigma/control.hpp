#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdot/sigma/conditions.hpp"
#include "sdot/sigma/construction.hpp"
#include "sdot/simpl/checks.hpp"

namespace sdot::sigma {

// Objects 0, A, B; every non-identity morphism factors through 0. Monos are
// the identities, 0 -> A, 0 -> B and h: A -> B; epis the identities, A -> 0 and
// B -> 0. The designated squares are the ones given plus all squares with two
// identity sides.
ExactPtr control_category(const std::vector<fincat::Square>& extra_squares);
// Commuting squares of the control category with admissible sides and no two identity sides.
std::vector<fincat::Square> control_candidates();

struct ControlOutcome {
  bool valid = false;  // proto-exact, nerve closed under pasting
  bool pointed = false, semi = false, full = false;
  int lower_through = -1;   // lower family passes for all n ≤ this
  int upper_fails_at = -1;  // least n with an upper failure
  simpl::Witness upper_witness;
  bool upper_witness_verifies = false;
  ConditionReport pointedness, stability_semi, stability_full;
  bool accepted() const { return valid && pointed && semi && !full && lower_through >= 4 && upper_fails_at > 0; }
};

// Runs every check on N^ex of the candidate at degree 5 and its S-construction up to 4.
ControlOutcome evaluate_control(const ExactPtr& e);

struct ControlSearch {
  std::uint64_t seed = 0;
  std::uint64_t subsets_tried = 0;
  std::vector<fincat::Square> squares;  // the extra designated squares found
  ExactPtr exact;
  ControlOutcome outcome;
};
// Subsets of the candidates in a seed-dependent order, smallest first.
ControlSearch search_semi_stable_control(std::uint64_t seed, std::size_t max_subset = 3);

nlohmann::json control_to_json(const ControlSearch& s);

struct ControlFixture {
  std::string path;
  nlohmann::json data;
  ExactPtr exact;
  ControlOutcome outcome;
  bool matches_record = false;  // recomputed outcome equals the recorded one
  std::vector<std::string> mismatches;
  bool ok() const { return outcome.accepted() && matches_record && outcome.upper_witness_verifies; }
};

std::string default_control_path();
// fixture_missing when the file is absent.
ControlFixture load_semi_stable_control(const std::string& path = default_control_path());

// The fixture's exact nerve at degree 5.
std::shared_ptr<const ExactNerve> semi_stable_negative_control(const std::string& path = default_control_path());

}  // namespace sdot::sigma
