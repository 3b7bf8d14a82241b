/**
 * @file geometry.hpp
 * @brief Dominance geometry in objective space.
 *
 * Membership of a point in A - (R^n_+ \ {0}) and conv(A) - (R^n_+ \ {0}),
 * subset-inclusion dominance between candidate images, the signed-distance
 * function to the dominated region and the box test used for objectivewise
 * uncertainty.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robpareto/core.hpp"
#include "robpareto/linprog.hpp"

namespace robpareto {

/// Which dominating set is used: the anchor points themselves, or their
/// convex hull.
enum class DominanceMode { plain, hull };

inline const char* to_string(DominanceMode m) { return m == DominanceMode::plain ? "plain" : "hull"; }

enum class WitnessKind { point, hull };

/// Certificate that y lies in the dominated region: y <= hull_point within
/// eq_tol and sum_i max(hull_point_i - y_i, 0) > strict_tol.
///
/// Point witnesses name one anchor; hull witnesses carry convex weights over
/// the anchors, in anchor order.
struct DominanceWitness {
  WitnessKind kind = WitnessKind::point;
  std::size_t anchor = 0;
  std::string anchor_scenario;
  Vector lambda;
  ObjectiveVector hull_point;
};

namespace detail {

inline void check_anchors(std::span<const ObjectiveVector> anchors, std::size_t n) {
  if (anchors.empty()) throw DomainError("anchor set must be nonempty");
  for (const auto& a : anchors) {
    if (a.size() != n) throw DomainError("anchor dimension mismatch");
  }
}

/// Total gain sum_i (c_i - y_i); coordinates within eq_tol below y count
/// against it.
inline double improvement(const ObjectiveVector& c, const ObjectiveVector& y) {
  double gap = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) gap += c[i] - y[i];
  return gap;
}

inline bool weakly_below(const ObjectiveVector& y, const ObjectiveVector& z, double eq_tol) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > z[i] + eq_tol) return false;
  }
  return true;
}

}  // namespace detail

/// True when `witness` certifies that y is dominated.
inline bool verify_witness(const ObjectiveVector& y, const DominanceWitness& witness, const Tolerances& tol = {}) {
  if (witness.hull_point.size() != y.size()) return false;
  return detail::weakly_below(y, witness.hull_point, tol.eq_tol) &&
         detail::improvement(witness.hull_point, y) > tol.strict_tol;
}

/// Witness iff some anchor z has y <= z and z != y; the first such anchor in
/// order wins.
inline std::optional<DominanceWitness> dominated_by_point_set(const ObjectiveVector& y,
                                                              std::span<const ObjectiveVector> anchors,
                                                              const Tolerances& tol = {}) {
  detail::check_anchors(anchors, y.size());
  for (std::size_t j = 0; j < anchors.size(); ++j) {
    const auto& z = anchors[j];
    if (detail::weakly_below(y, z, tol.eq_tol) && detail::improvement(z, y) > tol.strict_tol) {
      DominanceWitness w;
      w.kind = WitnessKind::point;
      w.anchor = j;
      w.hull_point = z;
      return w;
    }
  }
  return std::nullopt;
}

/// Witness iff y lies in conv(anchors) - (R^n_+ \ {0}).
///
/// Solves  max sum_i (c_i - y_i)  over c = sum_j lambda_j a_j, lambda in the
/// simplex, c >= y, and reports a hull witness when the optimum exceeds
/// strict_tol. The LP carries no eq_tol slack: along a steep hull edge the
/// slack alone would buy a total gain above strict_tol.
inline std::optional<DominanceWitness> dominated_by_hull(const ObjectiveVector& y,
                                                         std::span<const ObjectiveVector> anchors,
                                                         const Tolerances& tol = {}) {
  detail::check_anchors(anchors, y.size());
  const std::size_t n = y.size();
  const std::size_t m = anchors.size();

  // The hull sits below the componentwise maximum of the anchors.
  for (std::size_t i = 0; i < n; ++i) {
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& a : anchors) hi = std::max(hi, a[i]);
    if (y[i] > hi + tol.eq_tol) return std::nullopt;
  }

  LpProblem lp(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += anchors[j][i];
    lp.objective[j] = -s;
  }
  lp.add_eq(Vector(m, 1.0), 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    Vector row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = anchors[j][i];
    lp.add_ge(std::move(row), y[i]);
  }
  const LpResult res = lp_solve(lp);
  if (!res.optimal()) return std::nullopt;

  Vector lambda = res.solution;
  double total = 0.0;
  for (double& l : lambda) {
    l = std::max(l, 0.0);
    total += l;
  }
  for (double& l : lambda) l /= total;
  Vector c(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) c[i] += lambda[j] * anchors[j][i];
  }
  DominanceWitness w;
  w.kind = WitnessKind::hull;
  w.lambda = std::move(lambda);
  w.anchor = static_cast<std::size_t>(std::max_element(w.lambda.begin(), w.lambda.end()) - w.lambda.begin());
  w.hull_point = ObjectiveVector(std::move(c));
  if (!verify_witness(y, w, tol)) return std::nullopt;
  return w;
}

inline std::optional<DominanceWitness> dominated_by(const ObjectiveVector& y, std::span<const ObjectiveVector> anchors,
                                                    DominanceMode mode, const Tolerances& tol = {}) {
  return mode == DominanceMode::plain ? dominated_by_point_set(y, anchors, tol) : dominated_by_hull(y, anchors, tol);
}

/// Outcome of an image comparison; `witnesses[i]` certifies point i of the
/// dominated image when `holds`.
struct ImageDominance {
  bool holds = false;
  std::vector<DominanceWitness> witnesses;

  explicit operator bool() const { return holds; }
};

/// Does image `a` lie inside (b) - (R^n_+ \ {0}), or conv(b) - ... in hull
/// mode? Irreflexive: an image never dominates itself.
inline ImageDominance image_dominates(const ObjectiveImage& a, const ObjectiveImage& b, DominanceMode mode,
                                      const Tolerances& tol = {}) {
  if (a.empty() || b.empty()) throw DomainError("images must be nonempty");
  if (a.dimension() != b.dimension()) throw DomainError("image dimension mismatch");
  const auto anchors = b.values();
  ImageDominance out;
  out.witnesses.reserve(a.size());
  for (const auto& p : a.points) {
    // A point witness also certifies hull membership and skips the LP.
    auto w = dominated_by_point_set(p.value, anchors, tol);
    if (!w && mode == DominanceMode::hull) w = dominated_by_hull(p.value, anchors, tol);
    if (!w) {
      out.witnesses.clear();
      return out;
    }
    w->anchor_scenario = b.points[w->anchor].scenario;
    out.witnesses.push_back(std::move(*w));
  }
  out.holds = true;
  return out;
}

/// Signed max-coordinate distance from y to the boundary of the region
/// anchors - R^n_+ (plain) or conv(anchors) - R^n_+ (hull). Negative inside,
/// zero on the boundary, positive outside.
///
/// Plain mode uses the closed form min_z max_i (y_i - z_i); hull mode solves
/// min t  s.t.  y - sum_j lambda_j a_j <= t 1,  lambda in the simplex.
inline double signed_distance(const ObjectiveVector& y, std::span<const ObjectiveVector> anchors, DominanceMode mode) {
  detail::check_anchors(anchors, y.size());
  const std::size_t n = y.size();
  if (mode == DominanceMode::plain) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : anchors) {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, y[i] - z[i]);
      best = std::min(best, worst);
    }
    return best;
  }
  const std::size_t m = anchors.size();
  LpProblem lp(m + 1);
  lp.objective[m] = 1.0;
  lp.set_free(m);
  Vector simplex_row(m + 1, 1.0);
  simplex_row[m] = 0.0;
  lp.add_eq(std::move(simplex_row), 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    Vector row(m + 1);
    for (std::size_t j = 0; j < m; ++j) row[j] = -anchors[j][i];
    row[m] = -1.0;
    lp.add_le(std::move(row), -y[i]);
  }
  const LpResult res = lp_solve(lp);
  if (!res.optimal()) throw SolverStalled("hull signed-distance LP did not reach optimality");
  return res.value;
}

/// If `img` is the full Cartesian product of its per-coordinate value sets
/// (within eq_tol), returns the componentwise maximum corner.
inline std::optional<ObjectiveVector> is_hyperrectangle(const ObjectiveImage& img, const Tolerances& tol = {}) {
  if (img.empty()) return std::nullopt;
  const std::size_t n = img.dimension();

  auto same = [&](const ObjectiveVector& a, const ObjectiveVector& b) {
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(a[i] - b[i]) > tol.eq_tol) return false;
    }
    return true;
  };
  std::vector<ObjectiveVector> distinct;
  for (const auto& p : img.points) {
    if (std::none_of(distinct.begin(), distinct.end(), [&](const auto& d) { return same(d, p.value); })) {
      distinct.push_back(p.value);
    }
  }
  std::vector<Vector> levels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& d : distinct) {
      if (std::none_of(levels[i].begin(), levels[i].end(), [&](double v) { return std::abs(v - d[i]) <= tol.eq_tol; })) {
        levels[i].push_back(d[i]);
      }
    }
  }
  std::size_t product = 1;
  for (const auto& l : levels) product *= l.size();
  if (product != distinct.size()) return std::nullopt;
  // Distinct points with matching count: check every combination is present.
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Vector corner(n);
    for (std::size_t i = 0; i < n; ++i) corner[i] = levels[i][idx[i]];
    ObjectiveVector cv(std::move(corner));
    if (std::none_of(distinct.begin(), distinct.end(), [&](const auto& d) { return same(d, cv); })) {
      return std::nullopt;
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == levels[k].size()) idx[k++] = 0;
    if (k == n) break;
  }
  Vector top(n);
  for (std::size_t i = 0; i < n; ++i) top[i] = *std::max_element(levels[i].begin(), levels[i].end());
  return ObjectiveVector(std::move(top));
}

/// Componentwise maximum of an image (the sup corner).
inline ObjectiveVector sup_corner(const ObjectiveImage& img) {
  if (img.empty()) throw DomainError("image must be nonempty");
  Vector top = img.points.front().value.values();
  for (const auto& p : img.points) {
    for (std::size_t i = 0; i < top.size(); ++i) top[i] = std::max(top[i], p.value[i]);
  }
  return ObjectiveVector(std::move(top));
}

}  // namespace robpareto
