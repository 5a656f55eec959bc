#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sdot/fincat/category.hpp"

namespace sdot::fincat {

// A morphism of an implicit groupoid: one component morphism per position.
using Arrow = std::vector<MorId>;

// Groupoid with explicit objects and hom-sets produced on demand.
class FiniteGroupoid {
 public:
  virtual ~FiniteGroupoid() = default;
  virtual std::size_t size() const = 0;
  // Must agree on isomorphic objects.
  virtual std::uint64_t invariant(std::size_t x) const = 0;
  // Calls `visit` on isomorphisms x -> y until it returns false.
  virtual void for_each_iso(std::size_t x, std::size_t y, const std::function<bool(const Arrow&)>& visit) const = 0;
  virtual std::string describe(std::size_t x) const { return "#" + std::to_string(x); }

  std::optional<Arrow> find_iso(std::size_t x, std::size_t y) const;
  std::vector<Arrow> automorphisms(std::size_t x) const;
};

struct GroupoidClasses {
  std::vector<std::uint32_t> class_of;
  std::vector<std::size_t> representatives;  // least member of each class
  std::size_t size() const { return representatives.size(); }
};

GroupoidClasses groupoid_classes(const FiniteGroupoid& g);

struct GroupoidFunctor {
  std::function<std::size_t(std::size_t)> object;
  // image of an isomorphism x -> y
  std::function<Arrow(std::size_t x, std::size_t y, const Arrow&)> arrow;
};

struct EquivalenceReport {
  bool essentially_surjective = true;
  bool fully_faithful = true;
  std::size_t source_classes = 0, target_classes = 0;
  std::vector<std::string> witnesses;
  bool equivalence() const { return essentially_surjective && fully_faithful; }
};

// Full faithfulness is decided per component: π0 injective and Aut(x) -> Aut(Fx)
// bijective for one representative x of each source class.
EquivalenceReport check_groupoid_equivalence(const FiniteGroupoid& source, const FiniteGroupoid& target,
                                             const GroupoidFunctor& f);

// Literal check over every pair of source objects, for explicit groupoids.
EquivalenceReport check_groupoid_equivalence(const FinFunctor& f);

// An explicit category viewed through its isomorphisms.
class CategoryGroupoid : public FiniteGroupoid {
 public:
  explicit CategoryGroupoid(std::shared_ptr<const FinCategory> c) : c_(std::move(c)) {}
  std::size_t size() const override { return c_->num_objects(); }
  std::uint64_t invariant(std::size_t x) const override;
  void for_each_iso(std::size_t x, std::size_t y, const std::function<bool(const Arrow&)>& visit) const override;
  std::string describe(std::size_t x) const override { return c_->object_label(static_cast<ObjId>(x)); }

 private:
  std::shared_ptr<const FinCategory> c_;
};

bool is_groupoid(const FinCategory& c);

}  // namespace sdot::fincat
