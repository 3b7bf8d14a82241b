#include <catch_amalgamated.hpp>

#include <random>

#include "robpareto/geometry.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace robpareto;
using Catch::Matchers::WithinAbs;
using testing_support::random_point;

namespace {

const std::vector<ObjectiveVector> kTriple{{1, 4}, {1, 1}, {4, 1}};

std::vector<testing_support::Point> raw(const std::vector<ObjectiveVector>& v) {
  std::vector<testing_support::Point> out;
  for (const auto& p : v) out.push_back(p.values());
  return out;
}

ObjectiveImage make_image(const std::vector<ObjectiveVector>& pts) {
  ObjectiveImage img;
  for (std::size_t i = 0; i < pts.size(); ++i) img.points.push_back({"s" + std::to_string(i + 1), pts[i]});
  return img;
}

}  // namespace

TEST_CASE("point-set dominance") {
  const auto w = dominated_by_point_set(ObjectiveVector{0, 2}, kTriple);
  REQUIRE(w);
  CHECK(w->kind == WitnessKind::point);
  CHECK(w->anchor == 0);
  CHECK(w->hull_point == ObjectiveVector{1, 4});
  CHECK(verify_witness(ObjectiveVector{0, 2}, *w));

  const std::vector<ObjectiveVector> single{{1, 1}};
  CHECK_FALSE(dominated_by_point_set(ObjectiveVector{1, 1}, single));
  CHECK_FALSE(dominated_by_point_set(ObjectiveVector{5, 5}, kTriple));
  CHECK_THROWS_AS(dominated_by_point_set(ObjectiveVector{1, 1}, {}), DomainError);
}

TEST_CASE("point-set dominance picks the first anchor in order") {
  const std::vector<ObjectiveVector> anchors{{3, 3}, {2, 2}, {5, 5}};
  const auto w = dominated_by_point_set(ObjectiveVector{1, 1}, anchors);
  REQUIRE(w);
  CHECK(w->anchor == 0);
}

TEST_CASE("hull dominance") {
  const auto w = dominated_by_hull(ObjectiveVector{2, 2}, kTriple);
  REQUIRE(w);
  CHECK(w->kind == WitnessKind::hull);
  CHECK(verify_witness(ObjectiveVector{2, 2}, *w));
  double total = 0.0;
  for (double l : w->lambda) {
    CHECK(l >= 0.0);
    total += l;
  }
  CHECK_THAT(total, WithinAbs(1.0, 1e-12));
  // (2,2) is not below any single anchor, only below a mixture.
  CHECK_FALSE(dominated_by_point_set(ObjectiveVector{2, 2}, kTriple));

  const std::vector<ObjectiveVector> one{{1, 4}};
  CHECK_FALSE(dominated_by_hull(ObjectiveVector{1, 4}, one));
  const std::vector<ObjectiveVector> unit{{1, 1}};
  const auto z = dominated_by_hull(ObjectiveVector{0, 0}, unit);
  REQUIRE(z);
  CHECK(z->hull_point == ObjectiveVector{1, 1});
  CHECK_THROWS_AS(dominated_by_hull(ObjectiveVector{0, 0}, {}), DomainError);
}

TEST_CASE("image dominance on problem-1 vertex images") {
  const auto a = make_image({{0, 2}, {2, 2}, {2, 0}});  // x = 1
  const auto b = make_image({{1, 4}, {1, 1}, {4, 1}});  // x = 0
  const auto hull = image_dominates(a, b, DominanceMode::hull);
  REQUIRE(hull);
  REQUIRE(hull.witnesses.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(verify_witness(a.points[i].value, hull.witnesses[i]));
  CHECK_FALSE(image_dominates(a, b, DominanceMode::plain));
  for (auto mode : {DominanceMode::plain, DominanceMode::hull}) {
    CHECK_FALSE(image_dominates(a, a, mode));
    CHECK_FALSE(image_dominates(b, b, mode));
  }
  CHECK_THROWS_AS(image_dominates(a, make_image({{1, 2, 3}}), DominanceMode::plain), DomainError);
}

TEST_CASE("signed distance values") {
  CHECK_THAT(signed_distance(ObjectiveVector{1, 1}, kTriple, DominanceMode::plain), WithinAbs(0.0, 1e-12));
  CHECK_THAT(signed_distance(ObjectiveVector{0, 0}, kTriple, DominanceMode::plain), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(signed_distance(ObjectiveVector{2, 2}, kTriple, DominanceMode::hull), WithinAbs(-0.5, 1e-9));
  CHECK_THROWS_AS(signed_distance(ObjectiveVector{0, 0}, {}, DominanceMode::plain), DomainError);
}

TEST_CASE("hull signed distance agrees with a lambda grid") {
  // min over lambda on a 1e-3 simplex grid of max_i (y_i - c_i(lambda)).
  const ObjectiveVector y{2, 2};
  double best = 1e300;
  const int steps = 1000;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      const double l0 = i / double(steps), l1 = j / double(steps), l2 = 1 - l0 - l1;
      const double c0 = l0 * 1 + l1 * 1 + l2 * 4, c1 = l0 * 4 + l1 * 1 + l2 * 1;
      best = std::min(best, std::max(y[0] - c0, y[1] - c1));
    }
  }
  CHECK_THAT(signed_distance(y, kTriple, DominanceMode::hull), WithinAbs(best, 1e-9));
}

TEST_CASE("hyperrectangle detection") {
  const auto box = is_hyperrectangle(make_image({{1, 1}, {1, 2}, {3, 1}, {3, 2}}));
  REQUIRE(box);
  CHECK(*box == ObjectiveVector{3, 2});
  CHECK_FALSE(is_hyperrectangle(make_image({{1, 1}, {3, 2}})));
  const auto single = is_hyperrectangle(make_image({{5, 7}}));
  REQUIRE(single);
  CHECK(*single == ObjectiveVector{5, 7});
  CHECK(sup_corner(make_image({{1, 4}, {4, 1}})) == ObjectiveVector{4, 4});
}

TEST_CASE("dominance is a strict partial order on random images") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    auto random_image = [&] {
      std::vector<ObjectiveVector> pts;
      const std::size_t ns = 1 + rng() % 4;
      for (std::size_t s = 0; s < ns; ++s) pts.push_back(random_point(rng, n));
      return make_image(pts);
    };
    const auto a = random_image(), b = random_image(), c = random_image();
    for (auto mode : {DominanceMode::plain, DominanceMode::hull}) {
      CHECK_FALSE(image_dominates(a, a, mode));
      if (image_dominates(a, b, mode) && image_dominates(b, c, mode)) CHECK(image_dominates(a, c, mode));
    }
    if (image_dominates(a, b, DominanceMode::plain)) CHECK(image_dominates(a, b, DominanceMode::hull));
  }
}

TEST_CASE("signed distance sign matches dominance") {
  // The distance is negative strictly inside the dominated region, positive
  // strictly outside, and zero on its boundary. Dominance through the
  // punctured cone includes weak boundary points (y <= z, y != z, with some
  // y_i = z_i), where the distance is exactly zero.
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<ObjectiveVector> anchors;
    const std::size_t m = 1 + rng() % 4;
    for (std::size_t s = 0; s < m; ++s) anchors.push_back(random_point(rng, n));
    const auto y = random_point(rng, n);
    for (auto mode : {DominanceMode::plain, DominanceMode::hull}) {
      const double d = signed_distance(y, anchors, mode);
      const bool dom = dominated_by(y, anchors, mode).has_value();
      if (d < -1e-9) CHECK(dom);
      if (dom) CHECK(d <= 1e-9);
      if (!dom) CHECK(d >= -1e-9);
    }
    CHECK(signed_distance(anchors.front(), anchors, DominanceMode::plain) <= 1e-9);
  }
}

TEST_CASE("signed distance is strictly increasing") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> bump(0.01, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<ObjectiveVector> anchors;
    for (std::size_t s = 0; s < 1 + rng() % 4; ++s) anchors.push_back(random_point(rng, n));
    const auto y = random_point(rng, n);
    Vector up = y.values();
    for (auto& v : up) v += bump(rng);
    for (auto mode : {DominanceMode::plain, DominanceMode::hull}) {
      CHECK(signed_distance(y, anchors, mode) < signed_distance(ObjectiveVector(up), anchors, mode));
    }
  }
}

TEST_CASE("hull dominance agrees with the two-dimensional vertex oracle") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  int dominated = 0;
  for (int q = 0; q < 10000; ++q) {
    const std::size_t m = 1 + rng() % 5;
    std::vector<ObjectiveVector> anchors;
    const bool integral = q % 2 == 0;
    for (std::size_t s = 0; s < m; ++s) {
      anchors.push_back(integral ? random_point(rng, 2) : ObjectiveVector{coord(rng), coord(rng)});
    }
    const auto y = integral ? random_point(rng, 2) : ObjectiveVector{coord(rng), coord(rng)};
    const bool expect = testing_support::hull_dominated_2d(y.values(), raw(anchors));
    const bool got = dominated_by_hull(y, anchors).has_value();
    dominated += got;
    REQUIRE(got == expect);
  }
  CHECK(dominated > 1000);
}
