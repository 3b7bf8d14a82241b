// Acceptance checks A1-A8. Prints one PASS/FAIL line per criterion with its
// runtime against the pinned limit; exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "robpareto/robpareto.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace robpareto;

namespace {

constexpr double kTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Failure messages collected by one criterion.
struct Findings {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  std::size_t failed = 0;
};

int run_criterion(const char* name, double limit_seconds, const std::function<void(Findings&)>& body) {
  Findings f;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(f);
  } catch (const std::exception& e) {
    f.expect(false, std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  f.expect(elapsed < limit_seconds, "runtime limit exceeded");
  const bool ok = f.failed == 0;
  std::printf("%s %s  %zu checks  %.3fs (limit %.0fs)\n", name, ok ? "PASS" : "FAIL", f.checks, elapsed,
              limit_seconds);
  for (const auto& msg : f.failures) std::printf("    %s\n", msg.c_str());
  std::fflush(stdout);
  return ok ? 0 : 1;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

const std::vector<Instance>& random_suite() {
  static const auto suite = testing_support::random_suite(20240601);
  return suite;
}

std::vector<testing_support::Point> raw(const std::vector<ObjectiveVector>& v) {
  std::vector<testing_support::Point> out;
  for (const auto& p : v) out.push_back(p.values());
  return out;
}

/// Robust efficiency in plain mode by direct enumeration.
std::vector<std::string> plain_robust(const Instance& inst) {
  std::vector<std::string> out;
  const std::size_t nc = inst.candidates().size();
  for (std::size_t t = 0; t < nc; ++t) {
    const auto target = image(inst, t);
    bool dominated = false;
    for (std::size_t x = 0; x < nc && !dominated; ++x) {
      if (x == t) continue;
      bool all = true;
      for (const auto& p : image(inst, x).points) {
        bool hit = false;
        for (const auto& q : target.points) {
          hit = hit || testing_support::vector_dominates(p.value.values(), q.value.values());
        }
        all = all && hit;
      }
      dominated = all;
    }
    if (!dominated) out.push_back(inst.candidates()[t].id);
  }
  return out;
}

void a1(Findings& f) {
  const auto inst = builtin::problem_1(0.01);
  f.expect(inst.candidates().size() == 101, "grid size");
  const auto report = classify(inst);
  for (const auto& row : report.rows) f.expect(row.robust_efficient, "x=" + row.candidate + " not robust efficient");
  const auto& x0 = report.at("0");
  f.expect(!x0.convex_hull_efficient, "x=0 marked convex hull efficient");
  f.expect(x0.hull_dominator && x0.hull_dominator->candidate == "1", "x=0 dominator is not x=1");
  f.expect(report.at("1").convex_hull_efficient, "x=1 not convex hull efficient");
}

void a2(Findings& f) {
  const auto p1 = builtin::problem_1();
  const auto img0 = image(p1, "0"), img1 = image(p1, "1");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::size_t count = 0;
  for (double p : {1.0, 2.0, 10.0}) {
    for (int draw = 0; draw < 50; ++draw) {
      const auto u = Scalarizer::weighted_pnorm({weight(rng), weight(rng)}, p);
      f.expect(u.at_least(Monotonicity::strictly_increasing) && u.convex(), "sampled scalarizer class");
      const double w1 = worst_case(u, img1).value, w0 = worst_case(u, img0).value;
      f.expect(w1 < w0 - kTol, u.label() + ": " + fmt(w1) + " vs " + fmt(w0));
      ++count;
    }
  }
  f.expect(count == 150, "sample count");
}

void a3(Findings& f) {
  const auto p2 = builtin::problem_2(0.5);
  const auto img01 = image(p2, "(0,1)"), img00 = image(p2, "(0,0)");
  for (int i = 0; i <= 50; ++i) {
    const double w1 = i / 100.0;
    const auto u = Scalarizer::weighted_sum({w1, 1 - w1});
    const double at01 = worst_case(u, img01).value;
    const double expect = std::max({3 * w1 + 2.5 * (1 - w1), 3 * w1, 6 * w1});
    f.expect(std::abs(at01 - expect) <= kTol, "w1=" + fmt(w1) + ": (0,1) gives " + fmt(at01));
    f.expect(at01 <= 3 + kTol, "w1=" + fmt(w1) + ": (0,1) above 3");
    f.expect(std::abs(worst_case(u, img00).value - 4) <= kTol, "w1=" + fmt(w1) + ": (0,0) not 4");
  }
  f.expect(classify(p2).at("(0,0)").convex_hull_efficient, "(0,0) not convex hull efficient");
}

void a4(Findings& f) {
  for (const auto& inst : random_suite()) {
    const auto report = classify(inst);
    const std::size_t nc = inst.candidates().size();
    for (std::size_t c = 0; c < nc; ++c) {
      for (auto mode : {DominanceMode::plain, DominanceMode::hull}) {
        const bool eligible = mode == DominanceMode::plain ? report.rows[c].robust_efficient
                                                           : report.rows[c].convex_hull_efficient;
        if (!eligible) continue;
        const auto u = constructive_scalarizer(inst, c, mode);
        const double own = worst_case(u, image(inst, c)).value;
        f.expect(std::abs(own) <= kTol, inst.candidates()[c].id + " " + to_string(mode) + ": own value " + fmt(own));
        double best = kInf;
        for (std::size_t o = 0; o < nc; ++o) best = std::min(best, worst_case(u, image(inst, o)).value);
        f.expect(best >= -kTol, to_string(mode) + std::string(": minimum below zero ") + fmt(best));
        f.expect(std::abs(best - own) <= kTol, to_string(mode) + std::string(": minimum not attained at anchor"));
      }
    }
  }
}

void a5(Findings& f) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  for (const auto& inst : random_suite()) {
    const std::size_t n = inst.n();
    auto weights = [&] {
      Vector w(n);
      for (auto& v : w) v = weight(rng);
      return w;
    };
    std::vector<Scalarizer> catalog{Scalarizer::weighted_sum(weights()),
                                    Scalarizer::weighted_pnorm(weights(), 1),
                                    Scalarizer::weighted_pnorm(weights(), 2),
                                    Scalarizer::weighted_pnorm(weights(), 10),
                                    Scalarizer::weighted_pnorm(weights(), kInf),
                                    Scalarizer::chebyshev(weights())};
    const std::size_t nc = inst.candidates().size();
    for (std::size_t c = 0; c < nc; ++c) {
      catalog.push_back(constructive_scalarizer(inst, c, DominanceMode::plain));
      catalog.push_back(constructive_scalarizer(inst, c, DominanceMode::hull));
    }
    for (std::size_t a = 0; a < nc; ++a) {
      const auto ia = image(inst, a);
      for (std::size_t b = 0; b < nc; ++b) {
        if (a == b) continue;
        const auto ib = image(inst, b);
        for (auto mode : {DominanceMode::plain, DominanceMode::hull}) {
          if (!image_dominates(ia, ib, mode)) continue;
          for (const auto& u : catalog) {
            if (mode == DominanceMode::hull && !u.convex()) continue;
            const double wa = worst_case(u, ia).value, wb = worst_case(u, ib).value;
            f.expect(wa <= wb + kTol, u.label() + " " + to_string(mode) + ": " + fmt(wa) + " > " + fmt(wb));
            if (u.at_least(Monotonicity::strongly_increasing)) {
              f.expect(wa < wb, u.label() + " " + to_string(mode) + ": not strict");
            }
          }
        }
      }
    }
  }
}

void a6(Findings& f) {
  const auto raw_inst = generate(PhantomConfig{});
  const auto inst = with_scaled_objectives(raw_inst, objective_maxima(raw_inst));
  std::vector<double> r_inf, r_one;
  for (double p : {1.0, 2.0, 10.0}) {
    const auto res = minimize_scalarized(inst, Scalarizer::weighted_pnorm({1}, p));
    const auto img = image(inst, res.best.id);
    r_inf.push_back(radius_inf(img));
    r_one.push_back(radius_1(img));
    std::printf("    p=%g optimum %s  r_inf=%.6f  r_1=%.6f\n", p, res.best.id.c_str(), r_inf.back(), r_one.back());
  }
  f.expect(r_inf[2] <= r_inf[1] + 1e-6, "r_10 > r_2: " + fmt(r_inf[2]) + " vs " + fmt(r_inf[1]));
  f.expect(r_inf[1] <= r_inf[0] + 1e-6, "r_2 > r_1: " + fmt(r_inf[1]) + " vs " + fmt(r_inf[0]));
  f.expect(r_one[0] < r_one[2], "1-norm worst case of the p=1 optimum not below p=10: " + fmt(r_one[0]) + " vs " +
                                    fmt(r_one[2]));
}

void a7(Findings& f) {
  // (i) set-valued minimizers and (ii) nesting, which classify also asserts.
  for (const auto& inst : random_suite()) {
    const auto report = classify(inst);
    f.expect(set_valued_minimizers(inst) == report.efficient(EfficiencyLabel::robust), "set-valued mismatch");
    for (const auto& row : report.rows) {
      f.expect(!row.convex_hull_efficient || row.robust_efficient, row.candidate + ": hull label outside robust set");
    }
  }
  // (iii) convex ambiguity sets.
  std::mt19937_64 rng(77);
  for (const auto& inst : random_suite()) {
    const auto amb = testing_support::random_ambiguity(rng, inst);
    const auto report = classify(to_robust(inst, amb));
    f.expect(report.efficient(EfficiencyLabel::robust) == report.efficient(EfficiencyLabel::convex_hull),
             "robust and hull labels differ after the robust transform");
  }
  // (iv) one objective, one scenario, objectives linear on an increasing segment.
  auto same_labels = [&](const Instance& inst, const char* which) {
    const auto report = classify(inst);
    f.expect(plain_robust(inst) == report.efficient(EfficiencyLabel::convex_hull),
             std::string(which) + ": plain and hull label sets differ");
  };
  for (int trial = 0; trial < 100; ++trial) {
    same_labels(testing_support::table_instance(rng, 1, 1 + rng() % 4, 1 + rng() % 6), "one objective");
    same_labels(testing_support::table_instance(rng, 1 + rng() % 3, 1, 1 + rng() % 6), "one scenario");
  }
  std::vector<Vector> points;
  std::vector<std::string> ids;
  for (int i = 0; i <= 10; ++i) {
    points.push_back({1.0, i / 10.0});
    ids.push_back("t" + std::to_string(i));
  }
  for (int trial = 0; trial < 100; ++trial) {
    LinearInScenario map;
    map.scenario_points = points;
    for (int j = 0; j < 3; ++j) {
      const double a = rng() % 10, b = rng() % 10, c = rng() % 5;
      map.terms.push_back(Matrix::from_rows({{a, c}, {b, c}}));
    }
    std::vector<Candidate> cands;
    for (int c = 0; c < 5; ++c) {
      cands.push_back({"x" + std::to_string(c), {double(rng() % 4), double(rng() % 4), double(rng() % 4)}});
    }
    same_labels(Instance(2, ScenarioSet(ids), map, cands), "segment");
  }
}

Polyhedron random_polytope(std::mt19937_64& rng, std::size_t dim) {
  std::vector<Vector> rows;
  Vector b;
  for (std::size_t i = 0; i < dim; ++i) {
    Vector e(dim, 0.0);
    e[i] = 1.0;
    rows.push_back(e);
    b.push_back(1.0 + double(rng() % 5));
  }
  const std::size_t extra = rng() % (7 - dim);
  for (std::size_t r = 0; r < extra; ++r) {
    Vector row(dim);
    for (auto& v : row) v = double(rng() % 9) - 4.0;
    rows.push_back(row);
    b.push_back(double(rng() % 6));
  }
  return {Matrix::from_rows(rows), b};
}

void a8(Findings& f) {
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  for (int q = 0; q < 10000; ++q) {
    const std::size_t m = 1 + rng() % 5;
    const bool integral = q % 2 == 0;
    auto draw = [&] {
      return integral ? testing_support::random_point(rng, 2) : ObjectiveVector{coord(rng), coord(rng)};
    };
    std::vector<ObjectiveVector> anchors;
    for (std::size_t s = 0; s < m; ++s) anchors.push_back(draw());
    const auto y = draw();
    const bool expect = testing_support::hull_dominated_2d(y.values(), raw(anchors));
    f.expect(dominated_by_hull(y, anchors).has_value() == expect, "hull query " + std::to_string(q) + " disagrees");
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + rng() % 2;
    const auto poly = random_polytope(rng, dim);
    LinearInScenario map;
    for (int j = 0; j < 2; ++j) {
      std::vector<Vector> rows(2, Vector(dim));
      for (auto& r : rows) {
        for (auto& v : r) v = double(rng() % 11) - 5.0;
      }
      map.terms.push_back(Matrix::from_rows(rows));
    }
    map.scenario_points = {Vector(dim, 0.0)};
    const Vector x{double(rng() % 4) / 4.0, 1.0};
    const Instance inst(2, ScenarioSet({"o"}, poly), map, {{"c", x}});
    const Vector w{double(rng() % 5), double(rng() % 5)};
    const auto res = lp_solve(dual_reformulate(inst, w, "c"));
    testing_support::Point c(dim, 0.0);
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t t = 0; t < dim; ++t) {
        for (std::size_t i = 0; i < 2; ++i) c[t] += x[j] * w[i] * map.terms[j](i, t);
      }
    }
    const double expect =
        testing_support::max_over_vertices(testing_support::polytope_vertices(poly.A.to_rows(), poly.b), c);
    f.expect(res.optimal() && std::abs(res.value - expect) <= 1e-7,
             "dual trial " + std::to_string(trial) + ": " + fmt(res.value) + " vs " + fmt(expect));
  }
}

}  // namespace

int main() {
  int failures = 0;
  failures += run_criterion("A1", 1, a1);
  failures += run_criterion("A2", 1, a2);
  failures += run_criterion("A3", 1, a3);
  failures += run_criterion("A4", 5, a4);
  failures += run_criterion("A5", 5, a5);
  failures += run_criterion("A6", 30, a6);
  failures += run_criterion("A7", 10, a7);
  failures += run_criterion("A8", 10, a8);
  return failures == 0 ? 0 : 1;
}
