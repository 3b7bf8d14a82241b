/**
 * @file io.hpp
 * @brief Instance documents (JSON) and atomic file output.
 *
 * Document layout:
 *
 *     {
 *       "n": 2,
 *       "scenarios": ["1", "2"]            or {"ids": [...], "A": [[...]], "b": [...], "convex_closure": false},
 *       "objectives": {"table": {"<cand>": {"<scen>": [y...]}}}
 *                  or {"affine_family": {"<scen>": [[row], ...]}}
 *                  or {"linear_in_s": {"F": [[[row], ...], ...], "points": {"<scen>": [s...]}}},
 *       "candidates": ["a", "b"]  or  [{"id": "a", "x": [...]}]  or  {"simplex": 2, "step": 0.05},
 *       "ambiguity": {"distributions": [[...]], "ids": [...], "convex_closure": true},
 *       "constraint": {"rows": 1, "table" | "affine_family" | "linear_in_s": ...}
 *     }
 *
 * "ambiguity" and "constraint" are optional. For tables the candidate list
 * may be omitted, in which case the table keys define it.
 */
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "robpareto/core.hpp"
#include "robpareto/distro.hpp"

namespace robpareto {

using Json = nlohmann::ordered_json;

/// An instance together with the optional distributionally robust data.
struct InstanceDocument {
  Instance instance;
  std::optional<AmbiguitySet> ambiguity;
  std::optional<ExpectationConstraint> constraint;
};

namespace detail {

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

inline Vector vector_of(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of numbers");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(number(e, what));
  return v;
}

inline Matrix matrix_of(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + " must be a nonempty array of rows");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vector_of(r, what));
  try {
    return Matrix::from_rows(rows);
  } catch (const DomainError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

inline Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.to_rows()) rows.push_back(r);
  return rows;
}

inline ScenarioSet parse_scenarios(const Json& j) {
  std::vector<std::string> ids;
  std::optional<Polyhedron> poly;
  bool convex = false;
  const Json* list = &j;
  if (j.is_object()) {
    list = &require(j, "ids");
    if (j.contains("A") || j.contains("b")) {
      poly = Polyhedron{matrix_of(require(j, "A"), "scenarios.A"), vector_of(require(j, "b"), "scenarios.b")};
    }
    if (j.contains("convex_closure")) {
      if (!j.at("convex_closure").is_boolean()) throw ParseError("convex_closure must be a boolean");
      convex = j.at("convex_closure").get<bool>();
    }
  }
  if (!list->is_array()) throw ParseError("scenarios must be an array of ids or an object");
  for (const auto& id : *list) {
    if (!id.is_string()) throw ParseError("scenario ids must be strings");
    ids.push_back(id.get<std::string>());
  }
  return ScenarioSet(std::move(ids), std::move(poly), convex);
}

struct ParsedCandidates {
  std::vector<Candidate> list;
  std::optional<SimplexGrid> simplex;
  bool present = false;
};

inline ParsedCandidates parse_candidates(const Json& root) {
  ParsedCandidates out;
  if (!root.contains("candidates")) return out;
  out.present = true;
  const Json& j = root.at("candidates");
  if (j.is_object()) {
    SimplexGrid grid;
    const double dim = number(require(j, "simplex"), "candidates.simplex");
    if (dim < 1 || dim != std::floor(dim)) throw ParseError("candidates.simplex must be a positive integer");
    grid.dimension = static_cast<std::size_t>(dim);
    if (j.contains("step")) grid.step = number(j.at("step"), "candidates.step");
    out.simplex = grid;
    for (auto& x : simplex_lattice(grid.dimension, grid.step)) {
      std::string id = simplex_label(x);
      out.list.push_back({std::move(id), std::move(x)});
    }
    return out;
  }
  if (!j.is_array()) throw ParseError("candidates must be an array or a simplex object");
  for (const auto& c : j) {
    if (c.is_string()) {
      out.list.push_back({c.get<std::string>(), {}});
    } else if (c.is_object()) {
      const auto& id = require(c, "id");
      if (!id.is_string()) throw ParseError("candidate id must be a string");
      out.list.push_back({id.get<std::string>(), c.contains("x") ? vector_of(c.at("x"), "candidate x") : Vector{}});
    } else {
      throw ParseError("candidates must be ids or {id, x} objects");
    }
  }
  return out;
}

/// Parses one of the three map forms. `cands` may be filled from table keys
/// when the document does not list candidates.
inline UncertainObjectiveMap parse_map(const Json& j, const ScenarioSet& scen, std::vector<Candidate>& cands,
                                       bool cands_given, const char* what) {
  if (!j.is_object() || j.size() != 1) throw ParseError(std::string(what) + " must hold exactly one map form");
  const auto& [kind, body] = *j.items().begin();
  if (kind == "table") {
    if (!body.is_object()) throw ParseError("table must map candidate ids to scenario objects");
    if (!cands_given) {
      for (const auto& [id, _] : body.items()) cands.push_back({id, {}});
    }
    ObjectiveTable t;
    for (const auto& c : cands) {
      if (!body.contains(c.id)) throw ParseError("table has no entry for candidate '" + c.id + "'");
      const Json& row = body.at(c.id);
      if (!row.is_object()) throw ParseError("table rows must be objects keyed by scenario");
      std::vector<ObjectiveVector> values;
      for (const auto& s : scen.ids()) {
        if (!row.contains(s)) throw ParseError("table misses scenario '" + s + "' for candidate '" + c.id + "'");
        values.emplace_back(vector_of(row.at(s), "table entry"));
      }
      t.values.push_back(std::move(values));
    }
    return t;
  }
  if (kind == "affine_family") {
    AffineFamily a;
    for (const auto& s : scen.ids()) a.vertex_images.push_back(matrix_of(require(body, s.c_str()), "affine_family"));
    return a;
  }
  if (kind == "linear_in_s") {
    LinearInScenario l;
    const Json& terms = require(body, "F");
    if (!terms.is_array() || terms.empty()) throw ParseError("linear_in_s.F must be a nonempty array of matrices");
    for (const auto& f : terms) l.terms.push_back(matrix_of(f, "linear_in_s.F"));
    const Json& points = require(body, "points");
    for (const auto& s : scen.ids()) l.scenario_points.push_back(vector_of(require(points, s.c_str()), "points"));
    return l;
  }
  throw ParseError("unknown map form '" + kind + "'");
}

inline Json map_json(const UncertainObjectiveMap& map, const Instance& inst) {
  Json out = Json::object();
  const auto& ids = inst.scenarios().ids();
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ObjectiveTable>) {
          Json t = Json::object();
          for (std::size_t c = 0; c < m.values.size(); ++c) {
            Json row = Json::object();
            for (std::size_t s = 0; s < ids.size(); ++s) row[ids[s]] = m.values[c][s].values();
            t[inst.candidates()[c].id] = std::move(row);
          }
          out["table"] = std::move(t);
        } else if constexpr (std::is_same_v<T, AffineFamily>) {
          Json a = Json::object();
          for (std::size_t s = 0; s < ids.size(); ++s) a[ids[s]] = matrix_json(m.vertex_images[s]);
          out["affine_family"] = std::move(a);
        } else {
          Json f = Json::array();
          for (const auto& t : m.terms) f.push_back(matrix_json(t));
          Json pts = Json::object();
          for (std::size_t s = 0; s < ids.size(); ++s) pts[ids[s]] = m.scenario_points[s];
          out["linear_in_s"] = {{"F", std::move(f)}, {"points", std::move(pts)}};
        }
      },
      map);
  return out;
}

}  // namespace detail

/// Parses an instance document. Throws ParseError on malformed input and
/// EmptyFeasibleSet when the candidate list is empty.
inline InstanceDocument parse_instance(const Json& root) {
  if (!root.is_object()) throw ParseError("instance document must be a JSON object");
  const double n_raw = detail::number(detail::require(root, "n"), "n");
  if (n_raw < 1 || n_raw != std::floor(n_raw)) throw ParseError("n must be a positive integer");
  const auto n = static_cast<std::size_t>(n_raw);
  try {
    ScenarioSet scen = detail::parse_scenarios(detail::require(root, "scenarios"));
    auto cands = detail::parse_candidates(root);
    if (cands.present && cands.list.empty()) throw EmptyFeasibleSet("candidate list is empty");
    auto map = detail::parse_map(detail::require(root, "objectives"), scen, cands.list, cands.present, "objectives");
    if (cands.list.empty()) throw EmptyFeasibleSet("candidate list is empty");

    std::optional<AmbiguitySet> amb;
    if (root.contains("ambiguity")) {
      const Json& a = root.at("ambiguity");
      AmbiguitySet set{scen, {}, false, {}};
      for (const auto& d : detail::require(a, "distributions")) set.distributions.push_back(detail::vector_of(d, "distribution"));
      if (a.contains("ids")) {
        for (const auto& id : a.at("ids")) {
          if (!id.is_string()) throw ParseError("ambiguity ids must be strings");
          set.ids.push_back(id.get<std::string>());
        }
      }
      if (a.contains("convex_closure")) set.convex_closure = a.at("convex_closure").get<bool>();
      set.validate();
      amb = std::move(set);
    }
    std::optional<ExpectationConstraint> con;
    if (root.contains("constraint")) {
      Json body = root.at("constraint");
      ExpectationConstraint c;
      if (body.contains("rows")) {
        c.rows = static_cast<std::size_t>(detail::number(body.at("rows"), "constraint.rows"));
        body.erase("rows");
      }
      auto copy = cands.list;
      c.map = detail::parse_map(body, scen, copy, true, "constraint");
      con = std::move(c);
    }
    Instance inst(n, std::move(scen), std::move(map), std::move(cands.list), cands.simplex);
    return {std::move(inst), std::move(amb), std::move(con)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

inline Json to_json(const Instance& inst, const std::optional<AmbiguitySet>& amb = std::nullopt) {
  Json root = Json::object();
  root["n"] = inst.n();
  const auto& sc = inst.scenarios();
  if (sc.polyhedral() || sc.convex_closure()) {
    Json s = {{"ids", sc.ids()}};
    if (sc.polyhedral()) {
      s["A"] = detail::matrix_json(sc.polyhedral()->A);
      s["b"] = sc.polyhedral()->b;
    }
    if (sc.convex_closure()) s["convex_closure"] = true;
    root["scenarios"] = std::move(s);
  } else {
    root["scenarios"] = sc.ids();
  }
  root["objectives"] = detail::map_json(inst.objectives(), inst);
  if (inst.simplex()) {
    root["candidates"] = {{"simplex", inst.simplex()->dimension}, {"step", inst.simplex()->step}};
  } else {
    Json list = Json::array();
    for (const auto& c : inst.candidates()) {
      if (c.x.empty()) {
        list.push_back(c.id);
      } else {
        list.push_back({{"id", c.id}, {"x", c.x}});
      }
    }
    root["candidates"] = std::move(list);
  }
  if (amb) {
    Json a = {{"distributions", amb->distributions}};
    if (!amb->ids.empty()) a["ids"] = amb->ids;
    a["convex_closure"] = amb->convex_closure;
    root["ambiguity"] = std::move(a);
  }
  return root;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write to '" + path.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into '" + path.string() + "'");
  }
}

inline InstanceDocument load_instance(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_instance(root);
}

inline void save_instance(const Instance& inst, const std::filesystem::path& path,
                          const std::optional<AmbiguitySet>& amb = std::nullopt) {
  write_file_atomic(path, to_json(inst, amb).dump(2) + "\n");
}

}  // namespace robpareto
