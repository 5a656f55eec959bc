#pragma once

#include <string>

#include "sdot/fincat/exact.hpp"

namespace sdot::fincat {

// F_q vector spaces of dimension 0..dmax plus a duplicate zero 0' (the last
// object). Matrices are enumerated by the digits of M - I, so the standard
// inclusion/projection is the first morphism of every hom-set.
ExactPtr builtin_vect(int q, int dmax);

// Pointed sets {*,1,..,n-1} for n = 1..nmax; object id n-1.
ExactPtr builtin_pointed_sets(int nmax);

// `count` zero objects with exactly one morphism between any two.
ExactPtr builtin_zeros(int count = 1);

// "vect:q,dmax", "pointed:nmax" or "zeros:count".
ExactPtr builtin_from_spec(const std::string& spec);

// Dimension of a builtin_vect object.
int vect_dimension(const ProtoExactStructure& e, ObjId a);

}  // namespace sdot::fincat
