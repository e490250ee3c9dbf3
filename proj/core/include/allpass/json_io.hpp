#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "allpass/blaschke.hpp"
#include "allpass/mirror.hpp"
#include "allpass/polymat.hpp"
#include "allpass/roots.hpp"
#include "allpass/statespace.hpp"

// Polynomial matrices: {"dim": n, "degree": q, "coeffs": [M0, ..., Mq]} with row-major nested
// arrays of numbers, or of [re, im] pairs for complex coefficients. Doubles are written in their
// shortest round-trip form, so a write/read cycle is bit-exact.
namespace allpass::io {

using nlohmann::json;

json to_json(const PolyMatrix& p);
json to_json(const CPolyMatrix& p);
json to_json(const ScalarPoly& s);
json to_json(const RootRecord& r);
json to_json(const std::vector<RootRecord>& rs);
json to_json(const RationalAllPass& V);
json to_json(const StateSpace& s);
json to_json(const MirrorReport& rep);
json to_json(const AllPassReport& rep);

/// Throws Error(Parse) on malformed input, including complex entries in a real matrix.
PolyMatrix polymatrix_from_json(const json& j);
CPolyMatrix cpolymatrix_from_json(const json& j);
ScalarPoly scalarpoly_from_json(const json& j);
RootRecord rootrecord_from_json(const json& j);
RationalAllPass allpass_from_json(const json& j);
StateSpace statespace_from_json(const json& j);

/// Parses text, mapping syntax errors to Error(Parse).
json parse(const std::string& text);
std::string read_file(const std::string& path);

std::string_view to_string(RootKind k) noexcept;
std::string_view to_string(RootLocation l) noexcept;
std::string_view to_string(MirrorCase c) noexcept;

}  // namespace allpass::io
