#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdot/error.hpp"

namespace sdot::fincat {

struct Violation {
  std::string kind;
  std::vector<std::uint32_t> ids;
  std::string message;
};

struct Validation {
  std::vector<Violation> violations;
  std::uint64_t checked = 0;
  bool ok() const { return violations.empty(); }
  void add(std::string kind, std::vector<std::uint32_t> ids, std::string message);
};

// Finite category with dense object ids. Morphisms are numbered so that each
// hom-set hom(a,b) is a contiguous id range; the position inside the range is
// the morphism's local index.
class FinCategory {
 public:
  class Builder;

  // Used when the full composition table would be too large to store.
  struct NativeOps {
    std::function<MorId(MorId g, MorId f)> compose;
    std::function<MorId(MorId f)> inverse;
  };

  std::size_t num_objects() const { return object_labels_.size(); }
  std::size_t num_morphisms() const { return sources_.size(); }

  const std::string& object_label(ObjId a) const { return object_labels_[a]; }
  const std::string& morphism_label(MorId f) const { return morphism_labels_[f]; }
  std::optional<ObjId> find_object(const std::string& label) const;
  std::optional<MorId> find_morphism(const std::string& label) const;

  ObjId source(MorId f) const { return sources_[f]; }
  ObjId target(MorId f) const { return targets_[f]; }
  MorId identity(ObjId a) const { return identities_[a]; }

  MorId hom_begin(ObjId a, ObjId b) const { return hom_begin_[a * num_objects() + b]; }
  std::uint32_t hom_size(ObjId a, ObjId b) const { return hom_size_[a * num_objects() + b]; }
  std::uint32_t max_hom_size() const { return max_hom_size_; }
  std::uint32_t local_index(MorId f) const { return f - hom_begin(sources_[f], targets_[f]); }

  // g∘f, or kNone when f and g are not composable or the table has a hole.
  MorId compose(MorId g, MorId f) const;
  // Inverse of f, or kNone.
  MorId inverse(MorId f) const { return inverses_[f]; }
  bool is_iso(MorId f) const { return inverses_[f] != kNone; }
  // All isomorphisms with source a, ascending.
  std::span<const MorId> isos_from(ObjId a) const { return isos_from_[a]; }
  bool uses_native_composition() const { return static_cast<bool>(native_.compose); }

 private:
  std::vector<std::string> object_labels_;
  std::vector<std::string> morphism_labels_;
  std::vector<ObjId> sources_, targets_;
  std::vector<MorId> identities_;
  std::vector<MorId> hom_begin_;
  std::vector<std::uint32_t> hom_size_;
  std::uint32_t max_hom_size_ = 0;
  std::vector<std::uint64_t> comp_offset_;  // per (a,b,c)
  std::vector<std::uint32_t> comp_table_;   // local index in hom(a,c), kNone for holes
  NativeOps native_;
  std::vector<MorId> inverses_;
  std::vector<std::vector<MorId>> isos_from_;

  void finish();
};

class FinCategory::Builder {
 public:
  ObjId add_object(std::string label);
  MorId add_morphism(ObjId src, ObjId dst, std::string label);
  void set_identity(ObjId a, MorId f);
  void set_composite(MorId g, MorId f, MorId gf);
  // Morphisms must have been added in (source, target) order, so that builder
  // ids already are final ids.
  void set_native(NativeOps ops);
  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return src_.size(); }

  // `remap`, when given, receives builder id -> final id.
  FinCategory build(std::vector<MorId>* remap = nullptr) &&;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> labels_;
  std::vector<ObjId> src_, dst_;
  std::vector<MorId> identity_;
  std::vector<std::array<MorId, 3>> composites_;
  FinCategory::NativeOps native_;
};

// Exhaustive check of identity laws, closure and associativity.
Validation validate_category(const FinCategory& c);

struct FinFunctor {
  std::shared_ptr<const FinCategory> source, target;
  std::vector<ObjId> on_objects;
  std::vector<MorId> on_morphisms;
};

Validation validate_functor(const FinFunctor& f);

struct IsoClassIndex {
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint32_t> representatives;  // least member of each class
  std::size_t size() const { return representatives.size(); }
};

IsoClassIndex iso_classes(const FinCategory& c);

struct Subcategory {
  std::shared_ptr<const FinCategory> category;
  FinFunctor inclusion;
};

Subcategory core(std::shared_ptr<const FinCategory> c);
Subcategory full_subcategory(std::shared_ptr<const FinCategory> c, const std::vector<ObjId>& objects);

}  // namespace sdot::fincat
