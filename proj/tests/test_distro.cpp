#include <catch_amalgamated.hpp>

#include <random>

#include "robpareto/distro.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace robpareto;
using Catch::Matchers::WithinAbs;

namespace {

/// Convex hull efficiency for n = 2 with the vertex oracle.
std::vector<std::string> oracle_hull_2d(const Instance& inst) {
  std::vector<std::string> out;
  const std::size_t nc = inst.candidates().size();
  for (std::size_t t = 0; t < nc; ++t) {
    std::vector<testing_support::Point> anchors;
    for (const auto& q : image(inst, t).points) anchors.push_back(q.value.values());
    bool dominated = false;
    for (std::size_t x = 0; x < nc && !dominated; ++x) {
      if (x == t) continue;
      bool all = true;
      for (const auto& p : image(inst, x).points) all = all && testing_support::hull_dominated_2d(p.value.values(), anchors);
      dominated = all;
    }
    if (!dominated) out.push_back(inst.candidates()[t].id);
  }
  return out;
}

}  // namespace

TEST_CASE("expected objectives per generator") {
  const auto p1 = builtin::problem_1(0.5);
  AmbiguitySet amb{p1.scenarios(), {{0.5, 0.5, 0.0}, {0.0, 0.0, 1.0}}, false, {}};
  const auto robust = to_robust(p1, amb);
  CHECK(robust.is_table());
  REQUIRE(robust.scenarios().ids() == std::vector<std::string>{"pi1", "pi2"});
  CHECK_FALSE(robust.scenarios().convex_closure());
  // x = 0: images (1,4), (1,1), (4,1)
  CHECK(evaluate(robust, "0", "pi1") == ObjectiveVector{1, 2.5});
  CHECK(evaluate(robust, "0", "pi2") == ObjectiveVector{4, 1});
  // x = 1: images (0,2), (2,2), (2,0)
  CHECK(evaluate(robust, "1", "pi1") == ObjectiveVector{1, 2});
}

TEST_CASE("ambiguity set validation") {
  const auto p1 = builtin::problem_1();
  CHECK_THROWS_AS(to_robust(p1, AmbiguitySet{p1.scenarios(), {}, false, {}}), DomainError);
  CHECK_THROWS_AS(to_robust(p1, AmbiguitySet{p1.scenarios(), {{0.5, 0.6, 0.0}}, false, {}}), DomainError);
  CHECK_THROWS_AS(to_robust(p1, AmbiguitySet{p1.scenarios(), {{1.5, -0.5, 0.0}}, false, {}}), DomainError);
  CHECK_THROWS_AS(to_robust(p1, AmbiguitySet{p1.scenarios(), {{1.0, 0.0}}, false, {}}), DomainError);
  CHECK_THROWS_AS(to_robust(p1, AmbiguitySet{ScenarioSet({"a", "b", "c"}), {{1, 0, 0}}, false, {}}), DomainError);
  CHECK_THROWS_AS(che_equals_robust_check(p1, AmbiguitySet::diracs(p1.scenarios(), false)), DomainError);
}

TEST_CASE("expectation constraints drop infeasible candidates") {
  const auto p1 = builtin::problem_1(0.25);
  // c(x; s) = x_0 - 0.5 in every scenario, so only x_0 <= 0.5 survives.
  AffineFamily con;
  for (int s = 0; s < 3; ++s) con.vertex_images.push_back(Matrix::from_rows({{0.5, -0.5}}));
  const auto amb = AmbiguitySet::diracs(p1.scenarios(), true);
  const auto robust = to_robust(p1, amb, ExpectationConstraint{1, con});
  std::vector<std::string> ids;
  for (const auto& c : robust.candidates()) ids.push_back(c.id);
  CHECK(ids == std::vector<std::string>{"0", "0.25", "0.5"});
  CHECK(robust.scenarios().ids().front() == "delta-1");

  AffineFamily never;
  for (int s = 0; s < 3; ++s) never.vertex_images.push_back(Matrix::from_rows({{1, 1}}));
  CHECK_THROWS_AS(to_robust(p1, amb, ExpectationConstraint{1, never}), EmptyFeasibleSet);
}

TEST_CASE("constraints are checked in expectation, not per scenario") {
  ObjectiveTable obj{{{ObjectiveVector{1}, ObjectiveVector{1}}, {ObjectiveVector{2}, ObjectiveVector{2}}}};
  const Instance inst(1, ScenarioSet({"a", "b"}), obj, {{"p", {}}, {"q", {}}});
  // p: c = (+1, -1) has mean 0; q: c = (+3, -1) has mean 1.
  ObjectiveTable c{{{ObjectiveVector{1}, ObjectiveVector{-1}}, {ObjectiveVector{3}, ObjectiveVector{-1}}}};
  const AmbiguitySet amb{inst.scenarios(), {{0.5, 0.5}}, false, {}};
  const auto robust = to_robust(inst, amb, ExpectationConstraint{1, c});
  REQUIRE(robust.candidates().size() == 1);
  CHECK(robust.candidates()[0].id == "p");
}

TEST_CASE("convex Dirac ambiguity recovers convex hull efficiency") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing_support::table_instance(rng, 2, 1 + rng() % 4, 1 + rng() % 6);
    const auto robust = to_robust(inst, AmbiguitySet::diracs(inst.scenarios(), true));
    CHECK(classify(robust).efficient(EfficiencyLabel::robust) == oracle_hull_2d(inst));
    const auto plain = to_robust(inst, AmbiguitySet::diracs(inst.scenarios(), false));
    CHECK(classify(plain).efficient(EfficiencyLabel::robust) == classify(inst).efficient(EfficiencyLabel::robust));
  }
}

TEST_CASE("robust and hull efficiency coincide for convex ambiguity sets") {
  std::mt19937_64 rng(102);
  for (const auto& inst : testing_support::random_suite(103)) {
    const auto amb = testing_support::random_ambiguity(rng, inst);
    CHECK(che_equals_robust_check(inst, amb));
  }
}
