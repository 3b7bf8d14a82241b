// Seeded random instances shared by the property tests and the acceptance
// binary: n <= 3 objectives, |S| <= 4 scenarios, |X| <= 6 candidates,
// integer objective values 0..9.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "robpareto/core.hpp"
#include "robpareto/distro.hpp"

namespace testing_support {

using robpareto::Candidate;
using robpareto::Instance;
using robpareto::ObjectiveTable;
using robpareto::ObjectiveVector;
using robpareto::ScenarioSet;

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline ObjectiveVector random_point(std::mt19937_64& rng, std::size_t n, int lo = 0, int hi = 9) {
  robpareto::Vector v(n);
  for (auto& x : v) x = uniform_int(rng, lo, hi);
  return ObjectiveVector(std::move(v));
}

inline std::vector<std::string> labels(const char* prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

/// Table instance with the given sizes and integer values in [lo, hi].
inline Instance table_instance(std::mt19937_64& rng, std::size_t n, std::size_t ns, std::size_t nx, int lo = 0,
                               int hi = 9, bool convex_closure = false) {
  ObjectiveTable t;
  std::vector<Candidate> cands;
  for (std::size_t c = 0; c < nx; ++c) {
    std::vector<ObjectiveVector> row;
    for (std::size_t s = 0; s < ns; ++s) row.push_back(random_point(rng, n, lo, hi));
    t.values.push_back(std::move(row));
    cands.push_back({"x" + std::to_string(c + 1), {}});
  }
  return Instance(n, ScenarioSet(labels("s", ns), std::nullopt, convex_closure), std::move(t), std::move(cands));
}

/// One random instance with n in [1,3], |S| in [1,4], |X| in [1,6].
inline Instance random_instance(std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
  const auto ns = static_cast<std::size_t>(uniform_int(rng, 1, 4));
  const auto nx = static_cast<std::size_t>(uniform_int(rng, 1, 6));
  return table_instance(rng, n, ns, nx);
}

inline std::vector<Instance> random_suite(std::uint64_t seed, std::size_t count = 100) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_instance(rng));
  return out;
}

/// Random probability vector on `size` outcomes with small integer masses.
inline robpareto::Vector random_distribution(std::mt19937_64& rng, std::size_t size) {
  robpareto::Vector pi(size);
  double total = 0.0;
  while (total == 0.0) {
    total = 0.0;
    for (auto& p : pi) total += (p = uniform_int(rng, 0, 4));
  }
  for (auto& p : pi) p /= total;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < size; ++i) sum += pi[i];
  pi.back() = 1.0 - sum;
  if (pi.back() < 0.0) pi.back() = 0.0;
  return pi;
}

/// Convex ambiguity set over the scenarios of `inst` with 1..4 generators.
inline robpareto::AmbiguitySet random_ambiguity(std::mt19937_64& rng, const Instance& inst) {
  robpareto::AmbiguitySet amb{inst.scenarios(), {}, true, {}};
  const int count = uniform_int(rng, 1, 4);
  for (int g = 0; g < count; ++g) amb.distributions.push_back(random_distribution(rng, inst.scenarios().size()));
  return amb;
}

}  // namespace testing_support
