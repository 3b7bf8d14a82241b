/**
 * @file solve.hpp
 * @brief Minimization of worst-case scalarized objectives over candidate
 * sets: exhaustive evaluation, the exact epigraph LP, and a simplex lattice
 * sweep with local refinement.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "robpareto/core.hpp"
#include "robpareto/linprog.hpp"
#include "robpareto/parallel.hpp"
#include "robpareto/scalarize.hpp"

namespace robpareto {

enum class SolveMethod { exact_lp, sweep, sweep_refined };

inline const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::exact_lp: return "exact_lp";
    case SolveMethod::sweep: return "sweep";
    case SolveMethod::sweep_refined: return "sweep_refined";
  }
  return "?";
}

struct SolveResult {
  Candidate best;
  double value = 0.0;
  SolveMethod method = SolveMethod::sweep;
  std::size_t evaluations = 0;
  /// Incumbent value after the sweep and after each refinement pass.
  std::vector<double> pass_values;
};

struct SolveOptions {
  /// Lattice step for simplex sweeps; 0 uses the instance's own grid.
  double step = 0.0;
  std::size_t refine_passes = 2;
  /// Values within this distance count as ties.
  double tie_tol = 1e-12;
};

namespace detail {

inline bool better(double v, const Candidate& c, double best_v, const Candidate& best, double tie_tol) {
  if (v < best_v - tie_tol) return true;
  return v <= best_v + tie_tol && candidate_less(c, best);
}

struct Scored {
  Candidate cand;
  double value;
};

/// Best of a list of scored candidates under the tie rule.
inline Scored pick_best(std::vector<Scored>& scored, double tie_tol) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scored.size(); ++i) {
    if (better(scored[i].value, scored[i].cand, scored[best].value, scored[best].cand, tie_tol)) best = i;
  }
  return std::move(scored[best]);
}

inline Vector project_to_simplex(Vector x) {
  double sum = 0.0;
  for (double& v : x) {
    if (v < 0.0 || std::abs(v) < 1e-14) v = 0.0;
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

/// Solves the epigraph LP, then picks the lexicographically smallest x among
/// the optimal set by fixing the optimum and minimizing x_0, x_1, ... in turn.
inline Vector lexicographic_epigraph_solution(const EpigraphLp& epi) {
  const std::size_t k = epi.decision_dimension;
  LpProblem lp = epi.problem;
  LpResult res = lp_solve(lp);
  if (!res.optimal()) throw SolverStalled("epigraph LP did not reach optimality");
  Vector cap(k + 1, 0.0);
  cap[k] = 1.0;
  lp.add_le(cap, res.value + 1e-12 * std::max(1.0, std::abs(res.value)));
  Vector x(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t j = 0; j + 1 < k; ++j) {
    std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
    lp.objective[j] = 1.0;
    const LpResult step = lp_solve(lp);
    if (!step.optimal()) break;
    x.assign(step.solution.begin(), step.solution.begin() + static_cast<std::ptrdiff_t>(k));
    Vector fix(k + 1, 0.0);
    fix[j] = 1.0;
    lp.add_le(fix, step.value + 1e-13);
  }
  return project_to_simplex(std::move(x));
}

}  // namespace detail

/// Minimizes max_s u(f(x;s)) over the instance's candidates.
///
/// Explicit candidate lists are evaluated exhaustively. Simplex-valued
/// decisions use the exact epigraph LP when u is a weighted sum, otherwise a
/// lattice sweep followed by `refine_passes` local searches at half the
/// previous step. Ties go to the lexicographically smallest candidate.
inline SolveResult minimize_scalarized(const Instance& inst, const Scalarizer& u, const SolveOptions& opt = {}) {
  SolveResult out;
  const bool simplex = inst.simplex().has_value() && !inst.is_table();

  if (simplex && epigraph_lp_applies(inst, u)) {
    const auto form = epigraph_form(inst, u, 0);
    Vector x = detail::lexicographic_epigraph_solution(std::get<EpigraphLp>(form));
    out.value = worst_case(u, image_at(inst, x)).value;
    out.best = Candidate{simplex_label(x), std::move(x)};
    out.method = SolveMethod::exact_lp;
    out.evaluations = 1;
    out.pass_values = {out.value};
    return out;
  }

  std::vector<detail::Scored> scored;
  if (simplex && opt.step > 0.0) {
    for (auto& x : simplex_lattice(inst.simplex()->dimension, opt.step)) {
      std::string id = simplex_label(x);
      scored.push_back({Candidate{std::move(id), std::move(x)}, 0.0});
    }
    parallel_for(scored.size(), [&](std::size_t i) { scored[i].value = worst_case(u, image_at(inst, scored[i].cand.x)).value; });
  } else {
    const auto& cands = inst.candidates();
    scored.resize(cands.size());
    parallel_for(cands.size(), [&](std::size_t i) {
      scored[i] = {cands[i], worst_case(u, image(inst, i)).value};
    });
  }
  out.evaluations = scored.size();
  auto best = detail::pick_best(scored, opt.tie_tol);
  out.best = std::move(best.cand);
  out.value = best.value;
  out.pass_values = {out.value};
  out.method = SolveMethod::sweep;
  if (!simplex || opt.refine_passes == 0) return out;

  // Local search over moves x + h (e_i - e_j), halving h each pass.
  const std::size_t k = out.best.x.size();
  double h = opt.step > 0.0 ? opt.step : inst.simplex()->step;
  for (std::size_t pass = 0; pass < opt.refine_passes; ++pass) {
    h /= 2.0;
    bool improved = true;
    std::size_t rounds = 0;
    while (improved && rounds++ < 10000) {
      improved = false;
      for (std::size_t i = 0; i < k && !improved; ++i) {
        for (std::size_t j = 0; j < k && !improved; ++j) {
          if (i == j || out.best.x[j] < h - 1e-15) continue;
          Vector x = out.best.x;
          x[i] += h;
          x[j] = std::max(0.0, x[j] - h);
          x = detail::project_to_simplex(std::move(x));
          const double v = worst_case(u, image_at(inst, x)).value;
          ++out.evaluations;
          if (v < out.value - opt.tie_tol) {
            out.value = v;
            out.best = Candidate{simplex_label(x), std::move(x)};
            improved = true;
          }
        }
      }
    }
    out.pass_values.push_back(out.value);
  }
  out.method = SolveMethod::sweep_refined;
  return out;
}

/// One solve per scalarizer, in family order, keyed by the scalarizer label.
inline std::vector<std::pair<std::string, SolveResult>> sweep_front(const Instance& inst,
                                                                    const std::vector<Scalarizer>& family,
                                                                    const SolveOptions& opt = {}) {
  if (family.empty()) throw DomainError("scalarizer family must be nonempty");
  std::vector<std::pair<std::string, SolveResult>> out;
  out.reserve(family.size());
  for (const auto& u : family) out.emplace_back(u.label(), minimize_scalarized(inst, u, opt));
  return out;
}

}  // namespace robpareto
