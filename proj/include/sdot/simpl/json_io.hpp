#pragma once

#include <string>

#include <json.hpp>

#include "sdot/simpl/checks.hpp"
#include "sdot/simpl/simplicial.hpp"

namespace sdot::simpl {

TruncSimplicialSet simplicial_from_json(const nlohmann::json& j);
TruncSimplicialSet load_simplicial(const std::string& path);
nlohmann::json simplicial_to_json(const TruncSimplicialSet& x);

// Witness cells are rendered through `x` when given.
nlohmann::json report_to_json(const CheckReport& r, const TruncSimplicialSet* x = nullptr);
nlohmann::json validation_to_json(const SimplicialValidation& v, const TruncSimplicialSet* x = nullptr);

}  // namespace sdot::simpl
