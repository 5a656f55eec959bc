#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace sdot::ktheory {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm {
  IntMatrix U, V, D;
  std::vector<std::int64_t> diagonal;  // nonzero entries
  // Recomputes U*A*V exactly and checks D, the divisibility chain and det(U), det(V) = ±1.
  bool verify(const IntMatrix& A) const;
};

// Throws scale on int64 overflow.
SmithForm smith_normal_form(const IntMatrix& A);

}  // namespace sdot::ktheory
