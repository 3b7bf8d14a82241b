/**
 * @file core.hpp
 * @brief Problem model for robust multiobjective optimization over a finite
 * scenario set: objective vectors, scenario sets, the three supported forms of
 * the uncertain objective map, candidate decisions and their images.
 *
 * Everything here is immutable after construction and safe to share between
 * threads.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "robpareto/errors.hpp"
#include "robpareto/matrix.hpp"

namespace robpareto {

/// Comparison tolerances shared by every dominance test.
///
/// A dominance claim needs componentwise `<=` within `eq_tol` and a total
/// improvement larger than `strict_tol`; equal vectors never dominate.
struct Tolerances {
  double eq_tol = 1e-9;
  double strict_tol = 1e-9;
};

/// Point in objective space (minimization). Entries are always finite.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;

  explicit ObjectiveVector(Vector values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("objective vector entries must be finite");
    }
  }

  ObjectiveVector(std::initializer_list<double> values) : ObjectiveVector(Vector(values)) {}

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] const Vector& values() const { return values_; }
  [[nodiscard]] std::span<const double> span() const { return values_; }
  [[nodiscard]] auto begin() const { return values_.begin(); }
  [[nodiscard]] auto end() const { return values_.end(); }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;

 private:
  Vector values_;
};

/// {s : A s <= b, s >= 0}
struct Polyhedron {
  Matrix A;
  Vector b;
};

/// Finite, ordered set of labelled scenarios.
///
/// `convex_closure` marks sets whose listed members generate a convex
/// uncertainty set on which the objective is linear (convex ambiguity sets,
/// segments of a linear-in-s map). The image of a candidate is then the convex
/// hull of the listed image points.
class ScenarioSet {
 public:
  ScenarioSet() = default;

  explicit ScenarioSet(std::vector<std::string> ids, std::optional<Polyhedron> polyhedral = std::nullopt,
                       bool convex_closure = false)
      : ids_(std::move(ids)), polyhedral_(std::move(polyhedral)), convex_closure_(convex_closure) {
    if (ids_.empty()) throw DomainError("scenario set must be nonempty");
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (ids_[i].empty()) throw DomainError("scenario ids must be nonempty");
      if (!index_.emplace(ids_[i], i).second) {
        throw DomainError("duplicate scenario id '" + ids_[i] + "'");
      }
    }
    if (polyhedral_) {
      const auto& p = *polyhedral_;
      if (p.A.rows() != p.b.size()) throw DomainError("polyhedral form: A and b disagree in row count");
      if (p.A.cols() == 0) throw DomainError("polyhedral form: A needs at least one column");
      for (double v : p.b) {
        if (!std::isfinite(v)) throw DomainError("polyhedral form: b must be finite");
      }
      for (std::size_t r = 0; r < p.A.rows(); ++r) {
        for (double v : p.A.row(r)) {
          if (!std::isfinite(v)) throw DomainError("polyhedral form: A must be finite");
        }
      }
    }
  }

  [[nodiscard]] const std::vector<std::string>& ids() const { return ids_; }
  [[nodiscard]] std::size_t size() const { return ids_.size(); }
  [[nodiscard]] const std::optional<Polyhedron>& polyhedral() const { return polyhedral_; }
  [[nodiscard]] bool convex_closure() const { return convex_closure_; }

  [[nodiscard]] std::size_t index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw LookupError("unknown scenario '" + std::string(id) + "'");
    return it->second;
  }

  [[nodiscard]] bool contains(std::string_view id) const { return index_.count(std::string(id)) != 0; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::optional<Polyhedron> polyhedral_;
  bool convex_closure_ = false;
};

/// Explicit (candidate, scenario) -> objective vector table, indexed
/// `values[candidate][scenario]` in instance order.
struct ObjectiveTable {
  std::vector<std::vector<ObjectiveVector>> values;
};

/// f(x;s) = V_s x for x in the unit simplex; one n-by-k matrix per scenario.
struct AffineFamily {
  std::vector<Matrix> vertex_images;
};

/// f(x;s) = F(x) s with F(x) = sum_j x_j F_j. Each F_j is n-by-ns and
/// `scenario_points` holds one point of R^ns per scenario.
struct LinearInScenario {
  std::vector<Matrix> terms;
  std::vector<Vector> scenario_points;
};

using UncertainObjectiveMap = std::variant<ObjectiveTable, AffineFamily, LinearInScenario>;

/// A decision. `x` is the decision vector for affine and linear forms; for
/// table instances it is optional and informational only.
struct Candidate {
  std::string id;
  Vector x;
};

/// Uniform lattice over the unit simplex of the given dimension.
struct SimplexGrid {
  std::size_t dimension = 2;
  double step = 0.05;
};

/// One scenario's point in a candidate image.
struct ImagePoint {
  std::string scenario;
  ObjectiveVector value;
};

/// The finite set f(x;S) of one candidate, in scenario order.
struct ObjectiveImage {
  std::vector<ImagePoint> points;

  [[nodiscard]] std::size_t size() const { return points.size(); }
  [[nodiscard]] bool empty() const { return points.empty(); }
  [[nodiscard]] std::size_t dimension() const { return points.empty() ? 0 : points.front().value.size(); }

  [[nodiscard]] std::vector<ObjectiveVector> values() const {
    std::vector<ObjectiveVector> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.value);
    return out;
  }
};

namespace detail {

inline bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

}  // namespace detail

/// Formats a real for labels and CSV cells (10 significant digits, no
/// trailing zeros).
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// True when x >= 0 and sum(x) = 1 within `tol`.
inline bool on_simplex(std::span<const double> x, double tol = 1e-12) {
  if (x.empty()) return false;
  double sum = 0.0;
  for (double v : x) {
    if (!std::isfinite(v) || v < -tol) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

/// Number of lattice divisions 1/step; the step must divide 1.
inline std::size_t lattice_divisions(double step) {
  if (!(step > 0.0) || step > 1.0) throw DomainError("simplex step must lie in (0, 1]");
  const double d = std::round(1.0 / step);
  if (std::abs(d * step - 1.0) > 1e-9) throw DomainError("simplex step must divide 1");
  return static_cast<std::size_t>(d);
}

/// All points of the simplex lattice {m / D : m in N^k, sum m = D}, in
/// lexicographic order of the leading k-1 coordinates.
inline std::vector<Vector> simplex_lattice(std::size_t dimension, double step) {
  if (dimension == 0) throw DomainError("simplex dimension must be positive");
  const std::size_t divisions = lattice_divisions(step);
  std::vector<Vector> out;
  std::vector<std::size_t> counts(dimension, 0);
  // Odometer over the first k-1 coordinates with the running sum bounded.
  auto emit = [&] {
    Vector x(dimension);
    std::size_t used = 0;
    for (std::size_t i = 0; i + 1 < dimension; ++i) {
      x[i] = static_cast<double>(counts[i]) / static_cast<double>(divisions);
      used += counts[i];
    }
    x[dimension - 1] = static_cast<double>(divisions - used) / static_cast<double>(divisions);
    out.push_back(std::move(x));
  };
  if (dimension == 1) {
    out.push_back(Vector{1.0});
    return out;
  }
  std::size_t used = 0;
  while (true) {
    emit();
    // advance the last free coordinate first so order is lexicographic
    std::size_t pos = dimension - 1;
    while (pos > 0) {
      --pos;
      if (used < divisions) {
        ++counts[pos];
        ++used;
        break;
      }
      used -= counts[pos];
      counts[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

/// Display label of a simplex point: its leading k-1 coordinates. A
/// two-vertex simplex (x, 1-x) is labelled by x alone.
inline std::string simplex_label(std::span<const double> x) {
  if (x.size() <= 1) return "()";
  if (x.size() == 2) return format_number(x[0]);
  std::string s = "(";
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (i) s += ',';
    s += format_number(x[i]);
  }
  return s + ")";
}

/// Lexicographic order on decision vectors, falling back to ids.
inline bool candidate_less(const Candidate& a, const Candidate& b) {
  if (!a.x.empty() && a.x.size() == b.x.size()) {
    return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
  }
  return a.id < b.id;
}

/// An instance of the robust multiobjective problem: objective count,
/// scenarios, uncertain objective map and the candidate decisions.
class Instance {
 public:
  Instance(std::size_t n, ScenarioSet scenarios, UncertainObjectiveMap objectives, std::vector<Candidate> candidates,
           std::optional<SimplexGrid> simplex = std::nullopt)
      : n_(n),
        scenarios_(std::move(scenarios)),
        objectives_(std::move(objectives)),
        candidates_(std::move(candidates)),
        simplex_(simplex) {
    validate();
  }

  /// Instance whose candidates are the simplex lattice at `grid.step`.
  static Instance on_simplex(std::size_t n, ScenarioSet scenarios, UncertainObjectiveMap objectives, SimplexGrid grid) {
    std::vector<Candidate> cands;
    for (auto& x : simplex_lattice(grid.dimension, grid.step)) {
      std::string id = simplex_label(x);
      cands.push_back({std::move(id), std::move(x)});
    }
    return Instance(n, std::move(scenarios), std::move(objectives), std::move(cands), grid);
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] const ScenarioSet& scenarios() const { return scenarios_; }
  [[nodiscard]] const UncertainObjectiveMap& objectives() const { return objectives_; }
  [[nodiscard]] const std::vector<Candidate>& candidates() const { return candidates_; }
  [[nodiscard]] const std::optional<SimplexGrid>& simplex() const { return simplex_; }
  [[nodiscard]] bool is_table() const { return std::holds_alternative<ObjectiveTable>(objectives_); }

  [[nodiscard]] std::size_t candidate_index(std::string_view id) const {
    auto it = candidate_index_.find(std::string(id));
    if (it == candidate_index_.end()) throw LookupError("unknown candidate '" + std::string(id) + "'");
    return it->second;
  }

  [[nodiscard]] bool has_candidate(std::string_view id) const {
    return candidate_index_.count(std::string(id)) != 0;
  }

  /// Length of the decision vector for affine and linear forms (0 for tables).
  [[nodiscard]] std::size_t decision_dimension() const {
    if (const auto* a = std::get_if<AffineFamily>(&objectives_)) return a->vertex_images.front().cols();
    if (const auto* l = std::get_if<LinearInScenario>(&objectives_)) return l->terms.size();
    return 0;
  }

  /// Validates a decision vector for the affine and linear forms.
  void check_decision(std::span<const double> x) const {
    if (is_table()) throw DomainError("table instances have no decision vectors");
    if (x.size() != decision_dimension()) throw DomainError("decision vector has wrong dimension");
    if (!detail::all_finite(x)) throw DomainError("decision vector must be finite");
    if (std::holds_alternative<AffineFamily>(objectives_) && !robpareto::on_simplex(x)) {
      throw DomainError("decision vector must lie on the unit simplex");
    }
  }

 private:
  void validate() {
    if (n_ == 0) throw DomainError("objective count must be at least 1");
    if (candidates_.empty()) throw DomainError("candidate set must be nonempty");
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      if (!candidate_index_.emplace(candidates_[i].id, i).second) {
        throw DomainError("duplicate candidate id '" + candidates_[i].id + "'");
      }
    }
    const std::size_t ns = scenarios_.size();
    std::visit(
        [&](const auto& map) {
          using T = std::decay_t<decltype(map)>;
          if constexpr (std::is_same_v<T, ObjectiveTable>) {
            if (map.values.size() != candidates_.size()) {
              throw DomainError("objective table must have one row per candidate");
            }
            for (const auto& row : map.values) {
              if (row.size() != ns) throw DomainError("objective table must cover every scenario");
              for (const auto& v : row) {
                if (v.size() != n_) throw DomainError("objective table vectors must have length n");
              }
            }
          } else if constexpr (std::is_same_v<T, AffineFamily>) {
            if (map.vertex_images.size() != ns) throw DomainError("affine family needs one matrix per scenario");
            const auto& first = map.vertex_images.front();
            if (first.rows() != n_ || first.cols() == 0) throw DomainError("affine family matrices must be n-by-k");
            for (const auto& v : map.vertex_images) {
              if (v.rows() != first.rows() || v.cols() != first.cols()) {
                throw DomainError("affine family matrices must share one shape");
              }
            }
          } else {
            if (map.terms.empty()) throw DomainError("linear-in-s map needs at least one term");
            if (map.scenario_points.size() != ns) throw DomainError("linear-in-s map needs one point per scenario");
            const std::size_t dim = map.terms.front().cols();
            for (const auto& t : map.terms) {
              if (t.rows() != n_ || t.cols() != dim) throw DomainError("linear-in-s terms must be n-by-ns");
            }
            for (const auto& s : map.scenario_points) {
              if (s.size() != dim) throw DomainError("scenario point dimension mismatch");
            }
            if (scenarios_.polyhedral() && scenarios_.polyhedral()->A.cols() != dim) {
              throw DomainError("polyhedral form needs one column per scenario coordinate");
            }
          }
        },
        objectives_);
    if (!is_table()) {
      for (const auto& c : candidates_) check_decision(c.x);
    }
    if (simplex_ && std::holds_alternative<ObjectiveTable>(objectives_)) {
      throw DomainError("simplex candidates require an affine or linear objective map");
    }
  }

  std::size_t n_;
  ScenarioSet scenarios_;
  UncertainObjectiveMap objectives_;
  std::vector<Candidate> candidates_;
  std::optional<SimplexGrid> simplex_;
  std::unordered_map<std::string, std::size_t> candidate_index_;
};

/// f(x;s) for a decision vector x (affine and linear forms).
inline ObjectiveVector evaluate_at(const Instance& inst, std::span<const double> x, std::size_t scenario) {
  if (scenario >= inst.scenarios().size()) throw LookupError("scenario index out of range");
  inst.check_decision(x);
  if (const auto* a = std::get_if<AffineFamily>(&inst.objectives())) {
    return ObjectiveVector(a->vertex_images[scenario].multiply(x));
  }
  const auto& l = std::get<LinearInScenario>(inst.objectives());
  const Vector& s = l.scenario_points[scenario];
  Vector y(inst.n(), 0.0);
  for (std::size_t j = 0; j < l.terms.size(); ++j) {
    if (x[j] == 0.0) continue;
    const Vector fs = l.terms[j].multiply(s);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += x[j] * fs[i];
  }
  return ObjectiveVector(std::move(y));
}

inline ObjectiveVector evaluate(const Instance& inst, std::size_t candidate, std::size_t scenario) {
  if (candidate >= inst.candidates().size()) throw LookupError("candidate index out of range");
  if (scenario >= inst.scenarios().size()) throw LookupError("scenario index out of range");
  if (const auto* t = std::get_if<ObjectiveTable>(&inst.objectives())) return t->values[candidate][scenario];
  return evaluate_at(inst, inst.candidates()[candidate].x, scenario);
}

inline ObjectiveVector evaluate(const Instance& inst, std::string_view candidate, std::string_view scenario) {
  return evaluate(inst, inst.candidate_index(candidate), inst.scenarios().index_of(scenario));
}

inline ObjectiveImage image(const Instance& inst, std::size_t candidate) {
  ObjectiveImage img;
  img.points.reserve(inst.scenarios().size());
  for (std::size_t s = 0; s < inst.scenarios().size(); ++s) {
    img.points.push_back({inst.scenarios().ids()[s], evaluate(inst, candidate, s)});
  }
  return img;
}

inline ObjectiveImage image(const Instance& inst, std::string_view candidate) {
  return image(inst, inst.candidate_index(candidate));
}

inline ObjectiveImage image_at(const Instance& inst, std::span<const double> x) {
  ObjectiveImage img;
  img.points.reserve(inst.scenarios().size());
  for (std::size_t s = 0; s < inst.scenarios().size(); ++s) {
    img.points.push_back({inst.scenarios().ids()[s], evaluate_at(inst, x, s)});
  }
  return img;
}

/// Copy of `inst` with objective i divided by `factors[i]` in every form.
inline Instance with_scaled_objectives(const Instance& inst, std::span<const double> factors) {
  if (factors.size() != inst.n()) throw DomainError("one scale factor per objective required");
  for (double f : factors) {
    if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("scale factors must be positive and finite");
  }
  auto scale_rows = [&](Matrix m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) /= factors[r];
    }
    return m;
  };
  UncertainObjectiveMap map = std::visit(
      [&](const auto& src) -> UncertainObjectiveMap {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, ObjectiveTable>) {
          ObjectiveTable out;
          out.values.reserve(src.values.size());
          for (const auto& row : src.values) {
            std::vector<ObjectiveVector> scaled;
            scaled.reserve(row.size());
            for (const auto& v : row) {
              Vector y = v.values();
              for (std::size_t i = 0; i < y.size(); ++i) y[i] /= factors[i];
              scaled.emplace_back(std::move(y));
            }
            out.values.push_back(std::move(scaled));
          }
          return out;
        } else if constexpr (std::is_same_v<T, AffineFamily>) {
          AffineFamily out;
          for (const auto& m : src.vertex_images) out.vertex_images.push_back(scale_rows(m));
          return out;
        } else {
          LinearInScenario out{{}, src.scenario_points};
          for (const auto& m : src.terms) out.terms.push_back(scale_rows(m));
          return out;
        }
      },
      inst.objectives());
  return Instance(inst.n(), inst.scenarios(), std::move(map), inst.candidates(), inst.simplex());
}

/// Largest value of each objective over every candidate and scenario.
inline Vector objective_maxima(const Instance& inst) {
  Vector hi(inst.n(), -std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < inst.candidates().size(); ++c) {
    for (std::size_t s = 0; s < inst.scenarios().size(); ++s) {
      const auto v = evaluate(inst, c, s);
      for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = std::max(hi[i], v[i]);
    }
  }
  return hi;
}

namespace builtin {

inline ScenarioSet three_scenarios() { return ScenarioSet({"1", "2", "3"}); }

/// min over x in [0,1] of max_s f(x;s) with
///   f(x;1) = x (0,2) + (1-x) (1,4)
///   f(x;2) = x (2,2) + (1-x) (1,1)
///   f(x;3) = x (2,0) + (1-x) (4,1)
/// The decision x is the first coordinate of the simplex point (x, 1-x).
inline Instance problem_1(double step = 0.05) {
  AffineFamily map;
  map.vertex_images = {
      Matrix::from_rows({{0, 1}, {2, 4}}),
      Matrix::from_rows({{2, 1}, {2, 1}}),
      Matrix::from_rows({{2, 4}, {0, 1}}),
  };
  return Instance::on_simplex(2, three_scenarios(), std::move(map), SimplexGrid{2, step});
}

/// min over x1 + x2 <= 1, x >= 0 of max_s f(x;s) with
///   f(x;1) = x1 (0,6)   + x2 (3,5/2) + (1-x1-x2) (2,4)
///   f(x;2) = x1 (0,3)   + x2 (3,0)   + (1-x1-x2) (4,4)
///   f(x;3) = x1 (5/2,3) + x2 (6,0)   + (1-x1-x2) (4,2)
inline Instance problem_2(double step = 0.05) {
  AffineFamily map;
  map.vertex_images = {
      Matrix::from_rows({{0, 3, 2}, {6, 2.5, 4}}),
      Matrix::from_rows({{0, 3, 4}, {3, 0, 4}}),
      Matrix::from_rows({{2.5, 6, 4}, {3, 0, 2}}),
  };
  return Instance::on_simplex(2, three_scenarios(), std::move(map), SimplexGrid{3, step});
}

inline std::vector<std::string> names() { return {"problem-1", "problem-2"}; }

}  // namespace builtin

/// Loads a builtin fixture by name ("problem-1" or "problem-2").
inline Instance builtin_instance(std::string_view name, double step = 0.05) {
  if (name == "problem-1") return builtin::problem_1(step);
  if (name == "problem-2") return builtin::problem_2(step);
  throw LookupError("unknown builtin instance '" + std::string(name) + "'");
}

}  // namespace robpareto
