#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sdot/fincat/diagram.hpp"
#include "sdot/ktheory/snf.hpp"

namespace sdot::ktheory {

struct K0Presentation {
  std::vector<std::string> generators;   // one per iso class of objects
  std::vector<ObjId> representatives;    // least object of each class
  std::vector<std::uint32_t> class_of;   // object -> generator
  IntMatrix relations;                   // rows: [A02] - [A01] - [A12], then [Z]
  std::uint64_t s2_cells = 0, s2_classes = 0, zero_classes = 0;
  // rows reference valid columns, zero rows are unit rows
  bool well_formed() const;
};

// With `per_cell`, one relation per S_2 cell instead of per iso class.
K0Presentation k0_presentation(fincat::ExactPtr e, bool per_cell = false);

struct AbelianGroupInvariants {
  int rank = 0;
  std::vector<std::int64_t> torsion;  // > 1, each dividing the next
  bool trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroupInvariants&) const = default;
};

AbelianGroupInvariants cokernel(const SmithForm& f, Eigen::Index columns);

struct K0Result {
  K0Presentation presentation;
  SmithForm snf;
  AbelianGroupInvariants group;
  bool certificate_ok = false;
};
K0Result k0(fincat::ExactPtr e, bool per_cell = false);

// {"generators", "relations", "rank", "torsion"}
nlohmann::json k0_to_json(const K0Result& r);

}  // namespace sdot::ktheory
