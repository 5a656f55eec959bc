#pragma once

#include <string>

#include <json.hpp>

#include "sdot/fincat/diagram.hpp"
#include "sdot/fincat/exact.hpp"

namespace sdot::fincat {

// Category format with string ids. Without "bicartesian" the squares are
// decided by the universal property.
ExactPtr exact_from_json(const nlohmann::json& j, const std::string& name = "json");
ExactPtr load_exact(const std::string& path);
nlohmann::json exact_to_json(const ProtoExactStructure& e);

nlohmann::json diagram_to_json(const ProtoExactStructure& e, const Shape& shape, const Diagram& d);

}  // namespace sdot::fincat
