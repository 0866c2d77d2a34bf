#pragma once

#include <json.hpp>

#include "detmax/reductions.hpp"

namespace detmax {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

// Encoders. Rationals serialize as canonical "p/q" strings ("p" when the
// denominator is 1); this encoding is shared by every file format here.
Json to_json(const Rat& r);
Json to_json(const RatVectorSet& v);
Json to_json(const GramMatrix& g);
Json to_json(const GridTilingInstance& inst);
Json to_json(const GtAssignment& a);
Json to_json(const BcspInstance& inst);
Json to_json(const KSumInstance& inst);
Json to_json(const ArrowheadReductionOutput& out);
Json to_json(const OrthoReductionOutput& out);
Json to_json(const DetMaxReductionOutput& out);

// Decoders validate the full type invariants, so every emitted instance
// re-validates on load. Malformed input throws std::invalid_argument.
Rat rat_from_json(const Json& j);
RatVectorSet vectors_from_json(const Json& j);
GramMatrix gram_from_json(const Json& j);
GridTilingInstance gridtiling_from_json(const Json& j);
GtAssignment assignment_from_json(const Json& j, int k);
BcspInstance bcsp_from_json(const Json& j);
KSumInstance ksum_from_json(const Json& j);

/// Dispatches on the "type" field: vectors | gram | gridtiling | bcsp | ksum.
std::string instance_type(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
std::string dump(const Json& j);  // canonical text form (sorted keys, 2-space indent)

}  // namespace detmax
