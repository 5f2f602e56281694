#pragma once

#include <string>

#include "toricdyn/dynamics/monomial_map.hpp"

namespace toricdyn::io {

/// log deg_k(f^l) against l as a polyline, with the reference slope log lambda_k dashed.
std::string growth_svg(const dynamics::GrowthFit& fit);

}  // namespace toricdyn::io
