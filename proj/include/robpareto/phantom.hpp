/**
 * @file phantom.hpp
 * @brief Synthetic 1-D radiotherapy phantom: Gaussian spot kernels, rigid
 * shift scenarios and two quadratic dose objectives.
 *
 *   f_1(x;s) = w_T sum_{v in T} (d(v;s).x - dhat)^2
 *   f_2(x;s) = w_R sum_{v in R} (d(v;s).x)^2 + w_U sum_{v in U} (d(v;s).x)^2
 *
 * T is the target, R the rectum and U every other grid point.
 */
#pragma once

#include <cmath>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "robpareto/core.hpp"
#include "robpareto/parallel.hpp"

namespace robpareto {

/// Inclusive range of grid indices.
struct Span {
  int lo = 0;
  int hi = 0;
  [[nodiscard]] bool contains(int v) const { return v >= lo && v <= hi; }
};

struct PhantomConfig {
  int grid_points = 60;
  int spots = 12;
  Span target{20, 34};
  Span rectum{37, 44};
  double prescribed_dose = 1.0;
  double w_target = 1e3;
  double w_rectum = 1e2;
  double w_unclassified = 1.0;
  std::vector<int> shifts{-3, 0, 3};
  double sigma = 2.0;
  /// Candidates are m * M / D for compositions m of D into spots + 1 parts,
  /// the last part being unused budget.
  int lattice_divisions = 6;
  /// M as a multiple of the total uniform spot weight that gives mean dose
  /// dhat on the target in the unshifted scenario.
  double dose_scale = 1.3;

  /// Throws ConfigError on inconsistent settings.
  void validate() const {
    if (grid_points < 1) throw ConfigError("grid_points must be positive");
    if (spots < 1) throw ConfigError("spots must be positive");
    auto check_span = [&](const Span& s, const char* name) {
      if (s.lo > s.hi || s.lo < 0 || s.hi >= grid_points) {
        throw ConfigError(std::string(name) + " span must lie within the grid");
      }
    };
    check_span(target, "target");
    check_span(rectum, "rectum");
    if (!(target.hi < rectum.lo || rectum.hi < target.lo)) throw ConfigError("target and rectum spans overlap");
    if (!(w_target > 0.0 && w_rectum > 0.0 && w_unclassified > 0.0)) throw ConfigError("weights must be positive");
    if (!(prescribed_dose > 0.0) || !std::isfinite(prescribed_dose)) {
      throw ConfigError("prescribed dose must be positive");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
    if (shifts.empty()) throw ConfigError("at least one shift is required");
    if (std::set<int>(shifts.begin(), shifts.end()).size() != shifts.size()) {
      throw ConfigError("shifts must be distinct");
    }
    if (lattice_divisions < 1) throw ConfigError("lattice_divisions must be positive");
    if (!(dose_scale > 0.0) || !std::isfinite(dose_scale)) throw ConfigError("dose_scale must be positive");
  }
};

inline std::string shift_label(int shift) {
  if (shift == 0) return "s0";
  return (shift > 0 ? "s+" : "s") + std::to_string(shift);
}

/// Precomputed geometry and kernels of a phantom.
class PhantomModel {
 public:
  explicit PhantomModel(PhantomConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    const int g = cfg_.grid_points;
    const int k = cfg_.spots;
    for (int j = 0; j < k; ++j) {
      const double t = k == 1 ? 0.5 : static_cast<double>(j) / static_cast<double>(k - 1);
      centers_.push_back(cfg_.target.lo + t * (cfg_.target.hi - cfg_.target.lo));
    }
    for (int shift : cfg_.shifts) {
      Matrix kern(static_cast<std::size_t>(g), static_cast<std::size_t>(k));
      for (int v = 0; v < g; ++v) {
        for (int j = 0; j < k; ++j) {
          const double d = v - centers_[j] - shift;
          kern(v, j) = std::exp(-d * d / (2.0 * cfg_.sigma * cfg_.sigma));
        }
      }
      kernels_.push_back(std::move(kern));
    }
    // Uniform spot weight giving mean target dose dhat without shift.
    const Matrix nominal = kernel_for_shift(0);
    double mean = 0.0;
    for (int v = cfg_.target.lo; v <= cfg_.target.hi; ++v) {
      for (int j = 0; j < k; ++j) mean += nominal(v, j);
    }
    mean /= static_cast<double>(cfg_.target.hi - cfg_.target.lo + 1);
    uniform_weight_ = cfg_.prescribed_dose / mean;
  }

  [[nodiscard]] const PhantomConfig& config() const { return cfg_; }
  [[nodiscard]] const std::vector<double>& centers() const { return centers_; }
  [[nodiscard]] std::size_t scenario_count() const { return kernels_.size(); }
  [[nodiscard]] const Matrix& kernel(std::size_t scenario) const { return kernels_.at(scenario); }

  /// Per-spot weight of the uniform plan with mean nominal target dose dhat.
  [[nodiscard]] double uniform_weight() const { return uniform_weight_; }

  /// Total spot weight M available to lattice candidates.
  [[nodiscard]] double budget() const {
    return cfg_.dose_scale * uniform_weight_ * static_cast<double>(cfg_.spots);
  }

  [[nodiscard]] Vector dose(std::span<const double> x, std::size_t scenario) const {
    return kernels_.at(scenario).multiply(x);
  }

  [[nodiscard]] ObjectiveVector objectives(std::span<const double> x, std::size_t scenario) const {
    const Vector d = dose(x, scenario);
    double f1 = 0.0, rect = 0.0, other = 0.0;
    for (int v = 0; v < cfg_.grid_points; ++v) {
      const double dv = d[static_cast<std::size_t>(v)];
      if (cfg_.target.contains(v)) {
        f1 += (dv - cfg_.prescribed_dose) * (dv - cfg_.prescribed_dose);
      } else if (cfg_.rectum.contains(v)) {
        rect += dv * dv;
      } else {
        other += dv * dv;
      }
    }
    return ObjectiveVector{cfg_.w_target * f1, cfg_.w_rectum * rect + cfg_.w_unclassified * other};
  }

 private:
  [[nodiscard]] Matrix kernel_for_shift(int shift) const {
    for (std::size_t s = 0; s < cfg_.shifts.size(); ++s) {
      if (cfg_.shifts[s] == shift) return kernels_[s];
    }
    Matrix kern(static_cast<std::size_t>(cfg_.grid_points), static_cast<std::size_t>(cfg_.spots));
    for (int v = 0; v < cfg_.grid_points; ++v) {
      for (int j = 0; j < cfg_.spots; ++j) {
        const double d = v - centers_[j];
        kern(v, j) = std::exp(-d * d / (2.0 * cfg_.sigma * cfg_.sigma));
      }
    }
    return kern;
  }

  PhantomConfig cfg_;
  std::vector<double> centers_;
  std::vector<Matrix> kernels_;
  double uniform_weight_ = 0.0;
};

/// Table instance over the scaled simplex lattice of spot weights. Candidate
/// ids are "c<index>" in lattice order; decision vectors are kept.
inline Instance generate(const PhantomConfig& cfg) {
  const PhantomModel model(cfg);
  const std::size_t k = static_cast<std::size_t>(cfg.spots);
  const double budget = model.budget();
  const auto lattice = simplex_lattice(k + 1, 1.0 / cfg.lattice_divisions);

  std::vector<Candidate> cands(lattice.size());
  ObjectiveTable table;
  table.values.resize(lattice.size());
  parallel_for(lattice.size(), [&](std::size_t c) {
    Vector x(lattice[c].begin(), lattice[c].begin() + static_cast<std::ptrdiff_t>(k));
    for (double& v : x) v *= budget;
    auto& row = table.values[c];
    row.reserve(model.scenario_count());
    for (std::size_t s = 0; s < model.scenario_count(); ++s) row.push_back(model.objectives(x, s));
    cands[c] = Candidate{"c" + std::to_string(c), std::move(x)};
  });
  std::vector<std::string> ids;
  for (int s : cfg.shifts) ids.push_back(shift_label(s));
  return Instance(2, ScenarioSet(std::move(ids)), std::move(table), std::move(cands));
}

}  // namespace robpareto
