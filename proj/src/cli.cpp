#include "toric/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "toric/error.hpp"

namespace toric::cli {

namespace {

FieldSpec field_for(const RunConfig& c) {
  if (!c.q) throw Error(ErrorKind::ParseError, "--q is required for " + c.command);
  if (*c.q < 3) throw Error(ErrorKind::ParseError, "--q must be at least 3");
  return FieldSpec::from_order(*c.q, c.modulus);
}

LatticePolygon polygon_for(const RunConfig& c) {
  if (c.polygon_path.empty()) throw Error(ErrorKind::ParseError, "--polygon is required for " + c.command);
  return load_polygon_file(c.polygon_path);
}

bool is_prime_power(std::uint32_t q) {
  if (q < 2) return false;
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

Json edges_json(const LatticePolygon& p) {
  Json out = Json::array();
  for (const auto& e : p.edges()) out.push_back(Json{{"direction", to_json(e.direction)}, {"length", e.length}});
  return out;
}

CommandResult cmd_info(const RunConfig& c) {
  const LatticePolygon p = polygon_for(c);
  const PolygonCounts k = counts(p);
  Json j{{"format", "toricode.info.v1"}, {"polygon", to_json(p)}, {"dim", p.dim()}, {"counts", to_json(k)}};
  if (p.dim() == 2) {
    j["genus"] = genus(p);
    j["canonical_degree"] = canonical_degree(p);
    j["scott"] = k.interior > 0 ? Json(scott_check(p)) : Json(nullptr);
  } else {
    j["genus"] = nullptr;
    j["canonical_degree"] = nullptr;
    j["scott"] = nullptr;
  }
  j["edges"] = edges_json(p);
  const LatticePoint lo = p.min_corner(), hi = p.max_corner();
  const std::int64_t extent = std::max(hi.x - lo.x, hi.y - lo.y);
  std::uint32_t min_q = static_cast<std::uint32_t>(std::max<std::int64_t>(3, extent + 2));
  while (min_q <= FieldSpec::kMaxOrder && !is_prime_power(min_q)) ++min_q;
  j["min_q"] = min_q <= FieldSpec::kMaxOrder ? Json(min_q) : Json(nullptr);
  if (c.q) {
    const FieldSpec f = field_for(c);
    const auto t = fits_in_box(p, f.q());
    j["field"] = Json{{"q", f.q()}, {"fits", t.has_value()}, {"translation", t ? to_json(*t) : Json(nullptr)}};
  } else {
    j["field"] = nullptr;
  }
  if (p.dim() == 2 && k.interior > 0 && !j["scott"].get<bool>()) {
    return {kInvariantViolation, render(j, c.output), "Scott inequality fails\n"};
  }
  return {kOk, render(j, c.output), ""};
}

CommandResult cmd_code(const RunConfig& c) {
  const LatticePolygon p = polygon_for(c);
  const FieldSpec f = field_for(c);
  const ToricCode code = ToricCode::build(p, f);
  Json monomials = Json::array();
  for (const auto& m : code.monomials()) {
    monomials.push_back(to_json(LatticePoint{m.x - code.translation().x, m.y - code.translation().y}));
  }
  Json j{{"format", "toricode.code.v1"}, {"field", to_json(f)}, {"polygon", to_json(p)},
         {"translation", to_json(code.translation())}, {"n", code.n()}, {"k", code.k()},
         {"fingerprint", code.fingerprint()}, {"monomials", monomials}};
  if (!c.dump.empty()) {
    std::ofstream out(c.dump);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + c.dump);
    for (std::size_t r = 0; r < code.k(); ++r) {
      for (std::size_t col = 0; col < code.n(); ++col) out << (col ? " " : "") << code.generator(r, col).value;
      out << '\n';
    }
  }
  return {kOk, render(j, c.output), ""};
}

CommandResult cmd_mindist(const RunConfig& c) {
  const LatticePolygon p = polygon_for(c);
  const FieldSpec f = field_for(c);
  const ToricCode code = ToricCode::build(p, f);
  MinDistanceOptions o;
  o.threads = c.threads;
  if (c.deadline_s) o.deadline = std::chrono::duration<double>(*c.deadline_s);
  o.checkpoint_path = c.checkpoint;
  const MinDistanceResult r = min_distance_exact(code, o);

  Json message = Json::array();
  SectionPoly section;
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    message.push_back(r.witness[i].value);
    if (r.witness[i] != f.zero()) {
      const LatticePoint m = code.monomials()[i];
      section.set_term({m.x - code.translation().x, m.y - code.translation().y}, r.witness[i]);
    }
  }
  Json j{{"format", "toricode.mindist.v1"}, {"field", to_json(f)}, {"polygon", to_json(p)},
         {"n", code.n()}, {"k", code.k()}, {"distance", r.distance}, {"exact", r.exact},
         {"codewords", r.codewords}, {"chunks_done", r.chunks_done}, {"chunks_total", r.chunks_total}};
  j["witness"] = r.witness.empty() ? Json(nullptr) : Json{{"message", message}, {"section", to_json(section)}};
  if (!c.dump.empty() && !r.witness.empty()) {
    std::ofstream out(c.dump);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + c.dump);
    const auto word = code.encode(r.witness);
    const std::size_t side = f.q() - 1;
    for (std::size_t t = 0; t < word.size(); ++t) out << t / side << ' ' << t % side << ' ' << word[t].value << '\n';
  }
  return {kOk, render(j, c.output), ""};
}

CommandResult cmd_bounds(const RunConfig& c) {
  const LatticePolygon p = polygon_for(c);
  const FieldSpec f = field_for(c);
  ReportOptions o;
  o.exact = c.exact;
  o.threads = c.threads;
  if (c.deadline_s) o.deadline = std::chrono::duration<double>(*c.deadline_s);
  if (c.budget) o.subpolygon_budget = *c.budget;
  if (c.exact && !c.long_tests) {
    // without --long, keep exhaustive search to runs of about a minute
    const std::uint64_t words = message_count(ToricCode::build(p, f));
    if (words > std::uint64_t{2'000'000'000} && !c.deadline_s) o.deadline = std::chrono::duration<double>(60.0);
  }
  const BoundReport rep = full_report(p, f, o);
  std::string err;
  for (const auto& m : rep.mismatches) err += "mismatch: " + m + "\n";
  for (const auto& v : rep.violations) err += "violation: " + v + "\n";
  const int code = !rep.violations.empty() ? kInvariantViolation : !rep.mismatches.empty() ? kMismatch : kOk;
  return {code, render(to_json(rep), c.output), err};
}

CommandResult cmd_decompose(const RunConfig& c) {
  const LatticePolygon p = polygon_for(c);
  const auto s = best_subpolygon_decomposition(p, c.budget.value_or(kDefaultSubpolygonBudget));
  Json j{{"format", "toricode.decompose.v1"}, {"polygon", to_json(p)}};
  const Json body = to_json(s);
  for (const auto& [key, value] : body.items()) j[key] = value;
  return {kOk, render(j, c.output), ""};
}

CommandResult cmd_reproduce(const RunConfig& c) {
  const auto rows = reproduce_rows(c.long_tests, c.threads);
  Json list = Json::array();
  bool ok = true;
  for (const auto& r : rows) {
    list.push_back(Json{{"source", r.source}, {"claim", r.claim}, {"expected", r.expected},
                        {"computed", r.computed}, {"match", r.match}, {"long", r.long_only}});
    ok = ok && r.match;
  }
  Json j{{"format", "toricode.reproduce.v1"}, {"long", c.long_tests}, {"rows", list}};
  return {ok ? kOk : kMismatch, render(j, c.output), ok ? "" : "some claims did not reproduce\n"};
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return r + "\"";
}

std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvariantViolation: return kInvariantViolation;
    default: return kInputError;
  }
}

std::string render(const Json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  const bool table = doc.contains("rows") && doc["rows"].is_array() && !doc["rows"].empty();
  std::ostringstream out;
  if (table) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc["rows"][0].items()) keys.push_back(k);
    if (format == "csv") {
      for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
      out << '\n';
      for (const auto& row : doc["rows"]) {
        for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << csv_cell(scalar(row[keys[i]]));
        out << '\n';
      }
    } else {
      std::vector<std::size_t> width(keys.size());
      for (std::size_t i = 0; i < keys.size(); ++i) {
        width[i] = keys[i].size();
        for (const auto& row : doc["rows"]) width[i] = std::max(width[i], scalar(row[keys[i]]).size());
      }
      auto line = [&](auto cell) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
          const std::string s = cell(i);
          out << s << (i + 1 < keys.size() ? std::string(width[i] - s.size() + 2, ' ') : "");
        }
        out << '\n';
      };
      line([&](std::size_t i) { return keys[i]; });
      for (const auto& row : doc["rows"]) line([&](std::size_t i) { return scalar(row[keys[i]]); });
    }
    return out.str();
  }
  std::vector<std::pair<std::string, std::string>> flat;
  flatten(doc, "", flat);
  if (format == "csv") out << "key,value\n";
  for (const auto& [k, v] : flat) {
    if (format == "csv") {
      out << csv_cell(k) << ',' << csv_cell(v) << '\n';
    } else {
      out << k << ": " << v << '\n';
    }
  }
  return out.str();
}

CommandResult run(const RunConfig& config) {
  try {
    if (config.output != "json" && config.output != "csv" && config.output != "text") {
      throw Error(ErrorKind::ParseError, "--output must be json, csv or text");
    }
    if (config.command == "info") return cmd_info(config);
    if (config.command == "code") return cmd_code(config);
    if (config.command == "mindist") return cmd_mindist(config);
    if (config.command == "bounds") return cmd_bounds(config);
    if (config.command == "decompose") return cmd_decompose(config);
    if (config.command == "reproduce") return cmd_reproduce(config);
    return {kInputError, "", "unknown command: " + config.command + "\n"};
  } catch (const Error& e) {
    return {exit_code_for(e.kind()), "", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace toric::cli
