#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "toricdyn/dynamics/corpus.hpp"
#include "toricdyn/dynamics/monomial_map.hpp"
#include "toricdyn/error.hpp"
#include "toricdyn/fans/fan.hpp"
#include "toricdyn/weights/minkowski_weight.hpp"

namespace toricdyn::io {

using Json = nlohmann::ordered_json;

// Integers are written as decimal strings. Readers accept strings and JSON integers.
Json to_json(const BigInt& x);
Json to_json_int(long x);
BigInt big_from_json(const Json& j);
Json to_json(const LatticeVector& v);
LatticeVector vector_from_json(const Json& j);
/// 1-based element list.
Json to_json(const lattice::IndexSet& s);

Json matrix_to_json(const lattice::IntegerMatrix& a);
lattice::IntegerMatrix matrix_from_json(const Json& j);
/// First line "n", then n rows of n integers.
lattice::IntegerMatrix matrix_from_text(std::string_view text);
std::string matrix_to_text(const lattice::IntegerMatrix& a);
/// JSON when the first non-blank character is '[' or '{', plain text otherwise.
lattice::IntegerMatrix read_matrix(const std::filesystem::path& path);

/// {"rank", "complete", "cones": [{"generators"}]} with maximal cones only.
Json fan_to_json(const fans::Fan& fan);
/// Rebuilds faces from the listed cones. "complete" defaults to true.
fans::Fan fan_from_json(const Json& j);
Json to_json(const fans::ValidationReport& report);

Json weight_to_json(const weights::MinkowskiWeight& c);
/// Cones absent from "values" carry zero.
weights::MinkowskiWeight weight_from_json(const Json& j, weights::FanPtr fan);
Json to_json(const weights::WeightReport& report);

Json to_json(const dynamics::PullbackMatrix& m);
Json to_json(const dynamics::DegreeReport& r, bool log2_entropy = false);
Json to_json(const dynamics::GrowthFit& fit);
Json to_json(const dynamics::LimitCheck& check);

Json error_to_json(ErrorKind kind, std::string_view message);

Json read_json(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);

}  // namespace toricdyn::io
