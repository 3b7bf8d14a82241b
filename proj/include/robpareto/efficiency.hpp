/**
 * @file efficiency.hpp
 * @brief Classification of candidates: robust efficiency, convex hull
 * efficiency, objectivewise (sup-mapped) efficiency and set-valued
 * minimality, each with a re-checkable dominator certificate.
 */
#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "robpareto/core.hpp"
#include "robpareto/geometry.hpp"
#include "robpareto/parallel.hpp"

namespace robpareto {

enum class EfficiencyLabel { robust, convex_hull, objectivewise, set_valued };

/// A candidate whose image dominates the labelled one, with one witness per
/// point of the dominating image.
struct Dominator {
  std::string candidate;
  std::vector<DominanceWitness> witnesses;
};

struct CandidateReport {
  std::string candidate;
  bool robust_efficient = true;
  bool convex_hull_efficient = true;
  bool objectivewise_efficient = true;
  bool set_valued_minimizer = true;
  std::optional<Dominator> robust_dominator;
  std::optional<Dominator> hull_dominator;
  std::optional<Dominator> objectivewise_dominator;
  std::optional<Dominator> set_valued_dominator;

  [[nodiscard]] bool label(EfficiencyLabel l) const {
    switch (l) {
      case EfficiencyLabel::robust: return robust_efficient;
      case EfficiencyLabel::convex_hull: return convex_hull_efficient;
      case EfficiencyLabel::objectivewise: return objectivewise_efficient;
      case EfficiencyLabel::set_valued: return set_valued_minimizer;
    }
    return false;
  }

  [[nodiscard]] const std::optional<Dominator>& dominator(EfficiencyLabel l) const {
    switch (l) {
      case EfficiencyLabel::robust: return robust_dominator;
      case EfficiencyLabel::convex_hull: return hull_dominator;
      case EfficiencyLabel::objectivewise: return objectivewise_dominator;
      case EfficiencyLabel::set_valued: return set_valued_dominator;
    }
    return robust_dominator;
  }
};

struct EfficiencyReport {
  std::vector<CandidateReport> rows;

  [[nodiscard]] const CandidateReport& at(std::string_view candidate) const {
    for (const auto& r : rows) {
      if (r.candidate == candidate) return r;
    }
    throw LookupError("candidate '" + std::string(candidate) + "' not in report");
  }

  /// Candidates carrying `label`, in instance order.
  [[nodiscard]] std::vector<std::string> efficient(EfficiencyLabel label) const {
    std::vector<std::string> out;
    for (const auto& r : rows) {
      if (r.label(label)) out.push_back(r.candidate);
    }
    return out;
  }
};

/// Keeps the points of `img` that no other point beats in the maximization
/// sense (q >= p with some strict gap).
inline ObjectiveImage pareto_filter_max(const ObjectiveImage& img, const Tolerances& tol = {}) {
  ObjectiveImage out;
  const auto values = img.values();
  for (std::size_t i = 0; i < img.size(); ++i) {
    bool beaten = false;
    for (std::size_t j = 0; j < img.size() && !beaten; ++j) {
      if (j == i) continue;
      beaten = detail::weakly_below(values[i], values[j], tol.eq_tol) &&
               detail::improvement(values[j], values[i]) > tol.strict_tol;
    }
    if (!beaten) out.points.push_back(img.points[i]);
  }
  return out;
}

/// Mutual pointwise matching within eq_tol.
inline bool same_point_set(const ObjectiveImage& a, const ObjectiveImage& b, const Tolerances& tol = {}) {
  auto covered = [&](const ObjectiveImage& from, const ObjectiveImage& into) {
    for (const auto& p : from.points) {
      const bool hit = std::any_of(into.points.begin(), into.points.end(), [&](const ImagePoint& q) {
        if (q.value.size() != p.value.size()) return false;
        for (std::size_t i = 0; i < p.value.size(); ++i) {
          if (std::abs(p.value[i] - q.value[i]) > tol.eq_tol) return false;
        }
        return true;
      });
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

namespace detail {

/// Candidate indices sorted by the sum of their sup corner, then by index.
/// Any dominator has a sup corner below the dominated one, so scanning in
/// this order finds the preferred dominator first and may stop early.
inline std::vector<std::size_t> dominator_scan_order(const std::vector<ObjectiveVector>& sups, Vector& sup_sums) {
  sup_sums.resize(sups.size());
  for (std::size_t i = 0; i < sups.size(); ++i) {
    sup_sums[i] = std::accumulate(sups[i].begin(), sups[i].end(), 0.0);
  }
  std::vector<std::size_t> order(sups.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sup_sums[a] < sup_sums[b]; });
  return order;
}

inline bool sup_below(const ObjectiveVector& a, const ObjectiveVector& b, double eq_tol) {
  return weakly_below(a, b, eq_tol);
}

/// Set-valued dominators: F(x) strictly precedes F(x*) and differs from it.
inline std::vector<std::optional<Dominator>> set_valued_dominators(const Instance& inst,
                                                                    const std::vector<ObjectiveImage>& images,
                                                                    const Tolerances& tol) {
  const std::size_t count = images.size();
  const DominanceMode mode = inst.scenarios().convex_closure() ? DominanceMode::hull : DominanceMode::plain;
  std::vector<ObjectiveImage> frontier(count);
  std::vector<ObjectiveVector> sups(count);
  for (std::size_t i = 0; i < count; ++i) {
    frontier[i] = pareto_filter_max(images[i], tol);
    sups[i] = sup_corner(images[i]);
  }
  Vector sup_sums;
  const auto order = dominator_scan_order(sups, sup_sums);
  std::vector<std::optional<Dominator>> out(count);
  parallel_for(count, [&](std::size_t target) {
    for (std::size_t x : order) {
      if (x == target) continue;
      if (sup_sums[x] > sup_sums[target] + tol.eq_tol * static_cast<double>(inst.n())) break;
      if (!sup_below(sups[x], sups[target], tol.eq_tol)) continue;
      auto dom = image_dominates(frontier[x], frontier[target], mode, tol);
      if (dom && !same_point_set(frontier[x], frontier[target], tol)) {
        out[target] = Dominator{inst.candidates()[x].id, std::move(dom.witnesses)};
        return;
      }
    }
  });
  return out;
}

}  // namespace detail

/// Minimizers of x -> F(x) = pareto_filter_max(f(x;S)) under the partial
/// order "A precedes B iff A lies in B - (R^n_+ \ {0}) or A = B".
inline std::vector<std::string> set_valued_minimizers(const Instance& inst, const Tolerances& tol = {}) {
  std::vector<ObjectiveImage> images(inst.candidates().size());
  parallel_for(images.size(), [&](std::size_t i) { images[i] = image(inst, i); });
  const auto doms = detail::set_valued_dominators(inst, images, tol);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < doms.size(); ++i) {
    if (!doms[i]) out.push_back(inst.candidates()[i].id);
  }
  return out;
}

/// Labels every candidate of `inst` relative to the candidate set.
///
/// When several candidates dominate x*, the reported dominator is the one
/// whose componentwise worst case has the smallest sum, ties going to
/// instance order. For convex-closure scenario sets the robust label is
/// taken against conv(f(x*;S)), the true image of the generated set.
///
/// Throws std::logic_error if a candidate is convex hull efficient without
/// being robust efficient.
inline EfficiencyReport classify(const Instance& inst, const Tolerances& tol = {}) {
  const auto& cands = inst.candidates();
  const std::size_t count = cands.size();
  EfficiencyReport report;
  report.rows.resize(count);
  for (std::size_t i = 0; i < count; ++i) report.rows[i].candidate = cands[i].id;
  if (count == 1) return report;

  std::vector<ObjectiveImage> images(count);
  parallel_for(count, [&](std::size_t i) { images[i] = image(inst, i); });
  std::vector<ObjectiveVector> sups(count);
  for (std::size_t i = 0; i < count; ++i) sups[i] = sup_corner(images[i]);
  Vector sup_sums;
  const auto order = detail::dominator_scan_order(sups, sup_sums);
  const DominanceMode robust_mode = inst.scenarios().convex_closure() ? DominanceMode::hull : DominanceMode::plain;

  parallel_for(count, [&](std::size_t target) {
    auto& row = report.rows[target];
    const std::vector<ObjectiveVector> sup_anchor{sups[target]};
    bool need_robust = true, need_hull = true, need_objectivewise = true;
    for (std::size_t x : order) {
      if (!(need_robust || need_hull || need_objectivewise)) break;
      if (x == target) continue;
      if (sup_sums[x] > sup_sums[target] + tol.eq_tol * static_cast<double>(inst.n())) break;
      if (!detail::sup_below(sups[x], sups[target], tol.eq_tol)) continue;

      if (need_objectivewise) {
        ImageDominance dom;
        dom.holds = true;
        for (const auto& p : images[x].points) {
          auto w = dominated_by_point_set(p.value, sup_anchor, tol);
          if (!w) {
            dom.holds = false;
            break;
          }
          w->anchor_scenario = "sup";
          dom.witnesses.push_back(std::move(*w));
        }
        if (dom) {
          row.objectivewise_efficient = false;
          row.objectivewise_dominator = Dominator{cands[x].id, std::move(dom.witnesses)};
          need_objectivewise = false;
        }
      }
      if (need_robust) {
        auto dom = image_dominates(images[x], images[target], robust_mode, tol);
        if (dom) {
          row.robust_efficient = false;
          row.robust_dominator = Dominator{cands[x].id, std::move(dom.witnesses)};
          need_robust = false;
        }
      }
      if (need_hull) {
        auto dom = image_dominates(images[x], images[target], DominanceMode::hull, tol);
        if (dom) {
          row.convex_hull_efficient = false;
          row.hull_dominator = Dominator{cands[x].id, std::move(dom.witnesses)};
          need_hull = false;
        }
      }
    }
  });

  const auto set_doms = detail::set_valued_dominators(inst, images, tol);
  for (std::size_t i = 0; i < count; ++i) {
    auto& row = report.rows[i];
    if (set_doms[i]) {
      row.set_valued_minimizer = false;
      row.set_valued_dominator = set_doms[i];
    }
    if (row.convex_hull_efficient && !row.robust_efficient) {
      throw std::logic_error("candidate '" + row.candidate + "' is convex hull efficient but not robust efficient");
    }
  }
  return report;
}

}  // namespace robpareto
