#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "toric/bounds.hpp"
#include "toric/code.hpp"
#include "toric/decomp.hpp"
#include "toric/field.hpp"
#include "toric/polygon.hpp"

namespace toric {

using Json = nlohmann::ordered_json;

/// {"vertices": [[x, y], ...]}; any order, duplicates and interior points
/// allowed. ParseError on malformed input, EmptyInput on an empty list.
LatticePolygon parse_polygon_json(std::string_view text);
LatticePolygon load_polygon_file(const std::string& path);

Json to_json(LatticePoint p);
Json to_json(const LatticePolygon& p);
Json to_json(const FieldSpec& f);
Json to_json(const PolygonCounts& c);
Json to_json(const MinkowskiDecomposition& d);
Json to_json(const DecompositionSearch& s);
Json to_json(const SectionPoly& s);
Json to_json(const BoundEntry& e);
Json to_json(const BoundReport& r);

}  // namespace toric
