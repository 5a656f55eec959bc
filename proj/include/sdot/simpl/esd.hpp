#pragma once

#include "sdot/simpl/simplicial.hpp"

namespace sdot::simpl {

// esd(X)_k = X_{2k+1}; vertex v of esd(X)_k stands for {v, 2k+1-v}.
TruncSimplicialSet edgewise_subdivision(const TruncSimplicialSet& x);

}  // namespace sdot::simpl
