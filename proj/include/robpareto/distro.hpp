/**
 * @file distro.hpp
 * @brief Distributionally robust layer: finitely generated ambiguity sets,
 * expectation constraints and the reduction to a robust instance.
 */
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "robpareto/core.hpp"
#include "robpareto/efficiency.hpp"

namespace robpareto {

/// Probability vectors over `support`. With `convex_closure` the ambiguity
/// set is the convex hull of the listed generators.
struct AmbiguitySet {
  ScenarioSet support;
  std::vector<Vector> distributions;
  bool convex_closure = false;
  std::vector<std::string> ids;  // optional generator labels

  void validate() const {
    if (distributions.empty()) throw DomainError("ambiguity set needs at least one distribution");
    if (!ids.empty() && ids.size() != distributions.size()) {
      throw DomainError("ambiguity set ids must match the distributions");
    }
    for (const auto& pi : distributions) {
      if (pi.size() != support.size()) throw DomainError("distribution length must match the support");
      double sum = 0.0;
      for (double p : pi) {
        if (!std::isfinite(p) || p < 0.0) throw DomainError("probabilities must be nonnegative");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) throw DomainError("probabilities must sum to 1");
    }
  }

  [[nodiscard]] std::string label(std::size_t g) const {
    return ids.empty() ? "pi" + std::to_string(g + 1) : ids[g];
  }

  /// Every Dirac distribution over `support`.
  static AmbiguitySet diracs(ScenarioSet support, bool convex_closure) {
    AmbiguitySet a{std::move(support), {}, convex_closure, {}};
    for (std::size_t s = 0; s < a.support.size(); ++s) {
      Vector pi(a.support.size(), 0.0);
      pi[s] = 1.0;
      a.distributions.push_back(std::move(pi));
      a.ids.push_back("delta-" + a.support.ids()[s]);
    }
    return a;
  }
};

/// Constraint map c(x;s) in R^m, in the same forms as the objectives. A
/// candidate is feasible when E_pi[c(x;S)] <= 0 componentwise for every
/// generator pi.
struct ExpectationConstraint {
  std::size_t rows = 1;
  UncertainObjectiveMap map;
};

namespace detail {

inline Vector constraint_value(const Instance& inst, const ExpectationConstraint& con, std::size_t cand,
                               std::size_t scen) {
  return std::visit(
      [&](const auto& m) -> Vector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ObjectiveTable>) {
          if (m.values.size() != inst.candidates().size() || m.values[cand].size() != inst.scenarios().size()) {
            throw DomainError("constraint table must cover every candidate and scenario");
          }
          return m.values[cand][scen].values();
        } else if constexpr (std::is_same_v<T, AffineFamily>) {
          return m.vertex_images.at(scen).multiply(inst.candidates()[cand].x);
        } else {
          const auto& x = inst.candidates()[cand].x;
          Vector y(con.rows, 0.0);
          for (std::size_t j = 0; j < m.terms.size(); ++j) {
            const Vector fs = m.terms[j].multiply(m.scenario_points.at(scen));
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += x.at(j) * fs[i];
          }
          return y;
        }
      },
      con.map);
}

}  // namespace detail

/// Robust instance whose scenarios are the generators and whose objective is
/// g(x;pi) = sum_s pi(s) f(x;s). Candidates violating the expectation
/// constraint under any generator are dropped. Throws EmptyFeasibleSet when
/// nothing survives.
inline Instance to_robust(const Instance& inst, const AmbiguitySet& amb,
                          const std::optional<ExpectationConstraint>& constraint = std::nullopt,
                          const Tolerances& tol = {}) {
  amb.validate();
  if (amb.support.ids() != inst.scenarios().ids()) {
    throw DomainError("ambiguity support must match the instance scenarios");
  }
  const std::size_t ns = inst.scenarios().size();
  const std::size_t ng = amb.distributions.size();
  std::vector<Candidate> kept;
  ObjectiveTable table;
  for (std::size_t c = 0; c < inst.candidates().size(); ++c) {
    if (constraint) {
      bool feasible = true;
      for (const auto& pi : amb.distributions) {
        Vector e(constraint->rows, 0.0);
        for (std::size_t s = 0; s < ns; ++s) {
          if (pi[s] == 0.0) continue;
          const Vector v = detail::constraint_value(inst, *constraint, c, s);
          if (v.size() != e.size()) throw DomainError("constraint rows mismatch");
          for (std::size_t i = 0; i < e.size(); ++i) e[i] += pi[s] * v[i];
        }
        for (double v : e) feasible = feasible && v <= tol.eq_tol;
      }
      if (!feasible) continue;
    }
    std::vector<ObjectiveVector> row;
    const auto img = image(inst, c);
    for (const auto& pi : amb.distributions) {
      Vector g(inst.n(), 0.0);
      for (std::size_t s = 0; s < ns; ++s) {
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += pi[s] * img.points[s].value[i];
      }
      row.emplace_back(std::move(g));
    }
    table.values.push_back(std::move(row));
    kept.push_back(inst.candidates()[c]);
  }
  if (kept.empty()) throw EmptyFeasibleSet("no candidate satisfies the expectation constraint");
  std::vector<std::string> ids;
  for (std::size_t g = 0; g < ng; ++g) ids.push_back(amb.label(g));
  return Instance(inst.n(), ScenarioSet(std::move(ids), std::nullopt, amb.convex_closure), std::move(table),
                  std::move(kept));
}

/// Classifies the transformed instance and reports whether the robust and
/// convex hull efficient sets coincide. Requires a convex ambiguity set.
inline bool che_equals_robust_check(const Instance& inst, const AmbiguitySet& amb, const Tolerances& tol = {}) {
  if (!amb.convex_closure) throw DomainError("check requires a convex ambiguity set");
  const auto report = classify(to_robust(inst, amb, std::nullopt, tol), tol);
  return report.efficient(EfficiencyLabel::robust) == report.efficient(EfficiencyLabel::convex_hull);
}

}  // namespace robpareto
