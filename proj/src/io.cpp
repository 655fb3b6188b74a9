#include "toric/io.hpp"

#include <fstream>
#include <sstream>

#include "toric/error.hpp"

namespace toric {

LatticePolygon parse_polygon_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw Error(ErrorKind::ParseError, "expected an object with a \"vertices\" array");
  }
  std::vector<LatticePoint> pts;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
      throw Error(ErrorKind::ParseError, "each vertex must be a pair of integers");
    }
    const auto x = v[0].get<std::int64_t>(), y = v[1].get<std::int64_t>();
    if (x > kCoordinateLimit || x < -kCoordinateLimit || y > kCoordinateLimit || y < -kCoordinateLimit) {
      throw Error(ErrorKind::CoordinateOverflow, "vertex coordinate out of range");
    }
    pts.push_back({x, y});
  }
  if (pts.empty()) throw Error(ErrorKind::EmptyInput, "vertex list is empty");
  return LatticePolygon::hull(pts);
}

LatticePolygon load_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_polygon_json(buf.str());
}

Json to_json(LatticePoint p) { return Json::array({p.x, p.y}); }

Json to_json(const LatticePolygon& p) {
  Json v = Json::array();
  for (const auto& pt : p.vertices()) v.push_back(to_json(pt));
  return Json{{"vertices", v}};
}

Json to_json(const FieldSpec& f) {
  return Json{{"q", f.q()}, {"p", f.p()}, {"e", f.e()}, {"modulus", f.modulus()}};
}

Json to_json(const PolygonCounts& c) {
  return Json{{"volume2", c.volume2}, {"total", c.total}, {"boundary", c.boundary}, {"interior", c.interior}};
}

Json to_json(const MinkowskiDecomposition& d) {
  Json summands = Json::array();
  for (const auto& s : d.summands) summands.push_back(to_json(s));
  return Json{{"subpolygon", to_json(d.subpolygon)},
              {"translation", to_json(d.translation)},
              {"ell", d.ell()},
              {"summands", summands}};
}

Json to_json(const DecompositionSearch& s) {
  Json list = Json::array();
  for (const auto& d : s.decompositions) list.push_back(to_json(d));
  return Json{{"ell", s.ell}, {"exhaustive", s.exhaustive}, {"candidates", s.candidates}, {"decompositions", list}};
}

Json to_json(const SectionPoly& s) {
  Json terms = Json::array();
  for (const auto& [m, c] : s.terms()) terms.push_back(Json{{"exponent", to_json(m)}, {"coefficient", c.value}});
  return Json{{"terms", terms}};
}

Json to_json(const BoundEntry& e) {
  Json j{{"name", e.name},
         {"kind", std::string(to_string(e.kind))},
         {"value", e.value},
         {"applicable", e.applicable},
         {"conditional", e.conditional},
         {"hypothetical", e.hypothetical},
         {"provenance", e.provenance},
         {"detail", e.detail}};
  j["decomposition"] = e.decomposition ? to_json(*e.decomposition) : Json(nullptr);
  j["section"] = e.section ? to_json(*e.section) : Json(nullptr);
  return j;
}

Json to_json(const BoundReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  Json j{{"format", "toricode.bounds.v1"},
         {"polygon", to_json(r.polygon)},
         {"field", to_json(r.field)},
         {"counts", to_json(r.counts)},
         {"n", r.n},
         {"k", r.k},
         {"genus", r.genus},
         {"hasse_weil", Json::array({r.hasse_weil.first, r.hasse_weil.second})},
         {"decompositions", to_json(r.decompositions)}};
  j["exact_d"] = r.exact_d ? Json(*r.exact_d) : Json(nullptr);
  j["exact_complete"] = r.exact_complete;
  j["entries"] = entries;
  j["mismatches"] = r.mismatches;
  j["violations"] = r.violations;
  return j;
}

}  // namespace toric
