#pragma once

#include <string>

#include <json.hpp>

#include "sdot/sigma/conditions.hpp"
#include "sdot/sigma/probe.hpp"
#include "sdot/sigma/sigma_set.hpp"

namespace sdot::sigma {

// {"N", "aug_cells", "cells": {"a,b": [...]}, "aug_map": {z: x},
//  "d": {"0": {"a,b,i": {x: y}}, "1": ...}, "s": {...}}
nlohmann::json sigma_to_json(const SigmaSet& x);
SigmaSet sigma_from_json(const nlohmann::json& j);
SigmaSet load_sigma(const std::string& path);

nlohmann::json condition_to_json(const ConditionReport& r);
nlohmann::json sigma_validation_to_json(const SigmaValidation& v);
// The probe with its generators and, per cell, the route that produces it.
nlohmann::json probe_to_json(const Probe& p);

}  // namespace sdot::sigma
