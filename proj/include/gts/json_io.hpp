#pragma once

#include <string>

#include "gts/model.hpp"

namespace gts {

// JSON document schema:
//   {gamma, T, nu, sigma, eps_max?, autonomous?,
//    perturbation: {x: [{m, n, mean, harmonics: [{j, cos, sin}]}], y: [...]},
//    perturbation1?: {...}}
SystemSpec spec_from_json(const std::string& text);
std::string spec_to_json(const SystemSpec& spec);
SystemSpec load_spec(const std::string& path);

}  // namespace gts
