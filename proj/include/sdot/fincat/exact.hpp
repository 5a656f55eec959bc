#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sdot/fincat/category.hpp"

namespace sdot::fincat {

// tl --top--> tr
//  |           |
// left       right
//  v           v
// bl --bottom-> br
struct Square {
  ObjId tl = kNone, tr = kNone, bl = kNone, br = kNone;
  MorId top = kNone, left = kNone, right = kNone, bottom = kNone;
  auto operator<=>(const Square&) const = default;
};

Square make_square(const FinCategory& c, MorId top, MorId left, MorId right, MorId bottom);
bool commutes(const FinCategory& c, const Square& s);

// Universal-property checks in the bare category.
bool is_pushout(const FinCategory& c, const Square& s);
bool is_pullback(const FinCategory& c, const Square& s);

enum class BicartesianRule { designated, universal, native };
enum class TieBreak { least, greatest };

class ProtoExactStructure {
 public:
  ProtoExactStructure(std::shared_ptr<const FinCategory> c, std::vector<char> mono, std::vector<char> epi,
                      std::vector<char> zero, std::string name);

  const FinCategory& category() const { return *cat_; }
  const std::shared_ptr<const FinCategory>& category_ptr() const { return cat_; }
  const std::string& name() const { return name_; }

  bool is_mono(MorId f) const { return mono_[f] != 0; }
  bool is_epi(MorId f) const { return epi_[f] != 0; }
  bool is_zero(ObjId a) const { return zero_[a] != 0; }
  const std::vector<ObjId>& zeros() const { return zeros_; }
  ObjId canonical_zero() const { return zeros_.front(); }

  void use_designated(std::vector<Square> squares);
  void use_universal();
  void use_native(std::function<bool(const Square&)> rule);
  BicartesianRule rule() const { return rule_; }
  const std::set<std::array<MorId, 4>>& designated() const { return designated_; }

  // Assumes the classes of the four edges are right and the square commutes.
  bool bicartesian_unchecked(const Square& s) const;

 private:
  std::shared_ptr<const FinCategory> cat_;
  std::vector<char> mono_, epi_, zero_;
  std::vector<ObjId> zeros_;
  std::string name_;
  BicartesianRule rule_ = BicartesianRule::universal;
  std::set<std::array<MorId, 4>> designated_;
  std::function<bool(const Square&)> native_;
};

using ExactPtr = std::shared_ptr<const ProtoExactStructure>;

// Throws rejected_square when the boundary is malformed, does not commute or
// has edges outside the admissible classes.
bool is_bicartesian(const ProtoExactStructure& e, const Square& s);

// All bicartesian completions, ordered by (br, right, bottom) ids.
std::vector<Square> span_completions(const ProtoExactStructure& e, MorId top, MorId left);
// All bicartesian completions, ordered by (tl, top, left) ids.
std::vector<Square> cospan_completions(const ProtoExactStructure& e, MorId right, MorId bottom);

Square complete_span_to_pushout(const ProtoExactStructure& e, MorId top, MorId left,
                                TieBreak tie = TieBreak::least);
Square complete_cospan_to_pullback(const ProtoExactStructure& e, MorId right, MorId bottom,
                                   TieBreak tie = TieBreak::least);

// Identities in both classes, closure under composition, zero-object axioms and,
// for designated rules, well-formed designated squares.
Validation validate_exact(const ProtoExactStructure& e);

}  // namespace sdot::fincat
