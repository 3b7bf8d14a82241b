/**
 * @file scalarize.hpp
 * @brief Scalarizing functions, worst-case evaluation over an image, the
 * epigraph LP and the LP-dual worst case for polyhedral scenario sets.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "robpareto/core.hpp"
#include "robpareto/geometry.hpp"
#include "robpareto/linprog.hpp"

namespace robpareto {

/// Monotonicity classes, weakest first. Each level implies the ones before it.
enum class Monotonicity { increasing, strictly_increasing, strongly_increasing };

inline const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::strictly_increasing: return "strictly_increasing";
    case Monotonicity::strongly_increasing: return "strongly_increasing";
  }
  return "?";
}

/// sum_i w_i y_i
struct WeightedSum {
  Vector w;
};

/// (sum_i w_i |y_i - ref_i|^p / n)^(1/p); p = infinity gives max_i w_i |y_i - ref_i|.
struct WeightedPnorm {
  Vector w;
  double p = 2.0;
  Vector ref;
};

/// max_i w_i (y_i - ref_i)
struct Chebyshev {
  Vector w;
  Vector ref;
};

/// Signed max-coordinate distance to anchors - R^n_+ (or its hull version).
struct SignedDistanceU {
  std::vector<ObjectiveVector> anchors;
  DominanceMode mode = DominanceMode::plain;
  std::string anchor_candidate;
};

/// Weight and reference vectors of length 1 are broadcast over all
/// objectives; an empty reference is the origin.
class Scalarizer {
 public:
  using Kind = std::variant<WeightedSum, WeightedPnorm, Chebyshev, SignedDistanceU>;

  static Scalarizer weighted_sum(Vector w) {
    check_weights(w, false);
    if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) {
      throw DomainError("weighted sum needs a nonzero weight");
    }
    return Scalarizer(WeightedSum{std::move(w)});
  }

  static Scalarizer weighted_pnorm(Vector w, double p, Vector ref = {}) {
    check_weights(w, true);
    check_p(p);
    check_finite(ref, "reference point");
    return Scalarizer(WeightedPnorm{std::move(w), p, std::move(ref)});
  }

  static Scalarizer chebyshev(Vector w, Vector ref = {}) {
    check_weights(w, true);
    check_finite(ref, "reference point");
    return Scalarizer(Chebyshev{std::move(w), std::move(ref)});
  }

  static Scalarizer signed_distance(std::vector<ObjectiveVector> anchors, DominanceMode mode,
                                    std::string anchor_candidate = {}) {
    if (anchors.empty()) throw DomainError("signed distance needs a nonempty anchor set");
    for (const auto& a : anchors) {
      if (a.size() != anchors.front().size()) throw DomainError("anchor dimension mismatch");
    }
    return Scalarizer(SignedDistanceU{std::move(anchors), mode, std::move(anchor_candidate)});
  }

  [[nodiscard]] const Kind& kind() const { return kind_; }

  /// Declared monotonicity. For p-norms and Chebyshev the claim assumes the
  /// reference point lies below every attainable objective vector.
  [[nodiscard]] Monotonicity monotonicity() const {
    return std::visit(
        [](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, WeightedSum>) {
            const bool positive = std::all_of(k.w.begin(), k.w.end(), [](double v) { return v > 0.0; });
            return positive ? Monotonicity::strongly_increasing : Monotonicity::strictly_increasing;
          } else if constexpr (std::is_same_v<T, WeightedPnorm>) {
            return std::isinf(k.p) ? Monotonicity::strictly_increasing : Monotonicity::strongly_increasing;
          } else {
            return Monotonicity::strictly_increasing;
          }
        },
        kind_);
  }

  [[nodiscard]] bool at_least(Monotonicity m) const {
    return static_cast<int>(monotonicity()) >= static_cast<int>(m);
  }

  [[nodiscard]] bool convex() const {
    if (const auto* sd = std::get_if<SignedDistanceU>(&kind_)) return sd->mode == DominanceMode::hull;
    return true;
  }

  [[nodiscard]] bool linear() const { return std::holds_alternative<WeightedSum>(kind_); }

  /// Canonical spec string, e.g. "pnorm:p=2,w=1,ref=0".
  [[nodiscard]] std::string label() const {
    auto list = [](const Vector& v) {
      if (v.empty()) return std::string("0");
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
      return s;
    };
    return std::visit(
        [&](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, WeightedSum>) {
            return "wsum:w=" + list(k.w);
          } else if constexpr (std::is_same_v<T, WeightedPnorm>) {
            return "pnorm:p=" + (std::isinf(k.p) ? std::string("inf") : format_number(k.p)) + ",w=" + list(k.w) +
                   ",ref=" + list(k.ref);
          } else if constexpr (std::is_same_v<T, Chebyshev>) {
            return "cheb:w=" + list(k.w) + ",ref=" + list(k.ref);
          } else {
            return "construct:anchor=" + (k.anchor_candidate.empty() ? std::string("?") : k.anchor_candidate) +
                   ",mode=" + to_string(k.mode);
          }
        },
        kind_);
  }

  /// u(y). Throws DomainError on dimension mismatch.
  [[nodiscard]] double operator()(const ObjectiveVector& y) const {
    const std::size_t n = y.size();
    return std::visit(
        [&](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, WeightedSum>) {
            check_dim(k.w, n, false);
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += at(k.w, i, 0.0) * y[i];
            return s;
          } else if constexpr (std::is_same_v<T, WeightedPnorm>) {
            check_dim(k.w, n, false);
            check_dim(k.ref, n, true);
            check_p(k.p);
            if (std::isinf(k.p)) {
              double m = 0.0;
              for (std::size_t i = 0; i < n; ++i) m = std::max(m, at(k.w, i, 0.0) * std::abs(y[i] - at(k.ref, i, 0.0)));
              return m;
            }
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              s += at(k.w, i, 0.0) * std::pow(std::abs(y[i] - at(k.ref, i, 0.0)), k.p);
            }
            return std::pow(s / static_cast<double>(n), 1.0 / k.p);
          } else if constexpr (std::is_same_v<T, Chebyshev>) {
            check_dim(k.w, n, false);
            check_dim(k.ref, n, true);
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) m = std::max(m, at(k.w, i, 0.0) * (y[i] - at(k.ref, i, 0.0)));
            return m;
          } else {
            return robpareto::signed_distance(y, k.anchors, k.mode);
          }
        },
        kind_);
  }

 private:
  explicit Scalarizer(Kind k) : kind_(std::move(k)) {}

  static double at(const Vector& v, std::size_t i, double fallback) {
    if (v.empty()) return fallback;
    return v.size() == 1 ? v[0] : v[i];
  }

  static void check_dim(const Vector& v, std::size_t n, bool may_be_empty) {
    if (v.empty() && may_be_empty) return;
    if (v.size() != 1 && v.size() != n) throw DomainError("scalarizer parameter length does not match n");
  }

  static void check_finite(const Vector& v, const char* what) {
    if (!detail::all_finite(v)) throw DomainError(std::string(what) + " must be finite");
  }

  static void check_weights(const Vector& w, bool positive) {
    if (w.empty()) throw DomainError("weights must be nonempty");
    check_finite(w, "weights");
    for (double v : w) {
      if (positive ? !(v > 0.0) : v < 0.0) {
        throw DomainError(positive ? "weights must be positive" : "weights must be nonnegative");
      }
    }
  }

  static void check_p(double p) {
    if (std::isnan(p) || p < 1.0) throw DomainError("p must lie in [1, inf]");
  }

  Kind kind_;
};

inline double apply(const Scalarizer& u, const ObjectiveVector& y) { return u(y); }

struct WorstCase {
  double value = 0.0;
  std::size_t index = 0;
  std::string scenario;
};

/// max over the image of u; ties go to the first scenario.
inline WorstCase worst_case(const Scalarizer& u, const ObjectiveImage& img) {
  if (img.empty()) throw DomainError("image must be nonempty");
  WorstCase out{-std::numeric_limits<double>::infinity(), 0, {}};
  for (std::size_t s = 0; s < img.size(); ++s) {
    const double v = u(img.points[s].value);
    if (v > out.value) out = {v, s, img.points[s].scenario};
  }
  return out;
}

/// Joint LP in (x, lambda): minimize lambda subject to
/// sum_i w_i f_i(x;s) <= lambda for every s and x in the unit simplex.
/// Variables are x_0..x_{k-1} followed by lambda.
struct EpigraphLp {
  LpProblem problem;
  std::size_t decision_dimension = 0;
};

struct EpigraphConstraint {
  std::string scenario;
  double value = 0.0;  // lambda >= value
};

/// Per-scenario constraints lambda >= u(f(x;s)) at a fixed candidate.
struct EpigraphRecord {
  std::string candidate;
  std::vector<EpigraphConstraint> constraints;

  [[nodiscard]] double min_lambda() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& c : constraints) m = std::max(m, c.value);
    return m;
  }
};

using EpigraphForm = std::variant<EpigraphLp, EpigraphRecord>;

/// Per-scenario scalar coefficients c_s with u(f(x;s)) = c_s . x for a
/// linear u over affine or linear-in-s maps.
inline std::vector<Vector> linear_scenario_coefficients(const Instance& inst, const WeightedSum& ws) {
  const std::size_t n = inst.n();
  auto weight = [&](std::size_t i) { return ws.w.size() == 1 ? ws.w[0] : ws.w[i]; };
  if (ws.w.size() != 1 && ws.w.size() != n) throw DomainError("weight length does not match n");
  std::vector<Vector> out;
  if (const auto* a = std::get_if<AffineFamily>(&inst.objectives())) {
    for (const auto& V : a->vertex_images) {
      Vector c(V.cols(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < V.cols(); ++j) c[j] += weight(i) * V(i, j);
      }
      out.push_back(std::move(c));
    }
    return out;
  }
  const auto& l = std::get<LinearInScenario>(inst.objectives());
  for (const auto& s : l.scenario_points) {
    Vector c(l.terms.size(), 0.0);
    for (std::size_t j = 0; j < l.terms.size(); ++j) {
      const Vector fs = l.terms[j].multiply(s);
      for (std::size_t i = 0; i < n; ++i) c[j] += weight(i) * fs[i];
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// True when the joint epigraph LP applies: weighted-sum u and a decision
/// set equal to the unit simplex.
inline bool epigraph_lp_applies(const Instance& inst, const Scalarizer& u) {
  if (!u.linear() || inst.is_table()) return false;
  return std::holds_alternative<AffineFamily>(inst.objectives()) || inst.simplex().has_value();
}

/// Epigraph form of min_x max_s u(f(x;s)). Linear u over a simplex-valued
/// decision gives the joint LP; anything else gives the constraint record at
/// `candidate`.
inline EpigraphForm epigraph_form(const Instance& inst, const Scalarizer& u, std::size_t candidate) {
  if (epigraph_lp_applies(inst, u)) {
    const auto coeffs = linear_scenario_coefficients(inst, std::get<WeightedSum>(u.kind()));
    const std::size_t k = inst.decision_dimension();
    EpigraphLp out{LpProblem(k + 1), k};
    out.problem.objective[k] = 1.0;
    out.problem.set_free(k);
    for (const auto& c : coeffs) {
      Vector row(k + 1);
      std::copy(c.begin(), c.end(), row.begin());
      row[k] = -1.0;
      out.problem.add_le(std::move(row), 0.0);
    }
    Vector simplex(k + 1, 1.0);
    simplex[k] = 0.0;
    out.problem.add_eq(std::move(simplex), 1.0);
    return out;
  }
  EpigraphRecord rec;
  rec.candidate = inst.candidates().at(candidate).id;
  const auto img = image(inst, candidate);
  for (const auto& p : img.points) rec.constraints.push_back({p.scenario, u(p.value)});
  return rec;
}

inline EpigraphForm epigraph_form(const Instance& inst, const Scalarizer& u, std::string_view candidate) {
  return epigraph_form(inst, u, inst.candidate_index(candidate));
}

/// Dual of max { c.s : A s <= b, s >= 0 } with c = F(x)^T w:
///   minimize b.y  subject to  A^T y >= c,  y >= 0.
/// An unbounded scenario polytope shows up as an infeasible dual.
inline LpProblem dual_reformulate(const Instance& inst, std::span<const double> w, std::span<const double> x) {
  const auto* l = std::get_if<LinearInScenario>(&inst.objectives());
  if (l == nullptr) throw DomainError("dual reformulation needs a linear-in-s objective map");
  const auto& poly = inst.scenarios().polyhedral();
  if (!poly) throw DomainError("dual reformulation needs a polyhedral scenario set");
  if (w.size() != inst.n()) throw DomainError("weight length does not match n");
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("weights must be nonnegative and finite");
  }
  inst.check_decision(x);
  const std::size_t ns = poly->A.cols();
  Vector c(ns, 0.0);
  for (std::size_t j = 0; j < l->terms.size(); ++j) {
    const Vector ftw = l->terms[j].multiply_transposed(w);
    for (std::size_t t = 0; t < ns; ++t) c[t] += x[j] * ftw[t];
  }
  const std::size_t m = poly->A.rows();
  LpProblem lp(m);
  lp.objective = poly->b;
  for (std::size_t t = 0; t < ns; ++t) {
    Vector row(m);
    for (std::size_t r = 0; r < m; ++r) row[r] = poly->A(r, t);
    lp.add_ge(std::move(row), c[t]);
  }
  return lp;
}

inline LpProblem dual_reformulate(const Instance& inst, std::span<const double> w, std::string_view candidate) {
  return dual_reformulate(inst, w, inst.candidates()[inst.candidate_index(candidate)].x);
}

/// Signed-distance scalarizer anchored at f(x*;S). Its worst case is zero at
/// x* and nonnegative at every candidate when x* is efficient in `mode`.
inline Scalarizer constructive_scalarizer(const Instance& inst, std::size_t candidate, DominanceMode mode) {
  return Scalarizer::signed_distance(image(inst, candidate).values(), mode, inst.candidates().at(candidate).id);
}

inline Scalarizer constructive_scalarizer(const Instance& inst, std::string_view candidate, DominanceMode mode) {
  return constructive_scalarizer(inst, inst.candidate_index(candidate), mode);
}

}  // namespace robpareto
