#include <cmath>
#include <numeric>
#include <random>

#include "contractlearn/whitebox.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace contractlearn;

TEST_CASE("simplex samples stay in the space and have the uniform mean") {
  std::mt19937_64 rng(3);
  const auto space = ContractSpace::Simplex(3, 1.0);
  Vector mean(3, 0.0);
  const int kSamples = 20000;
  for (int s = 0; s < kSamples; ++s) {
    const Vector p = SampleContractSpace(rng, space);
    double sum = 0.0;
    for (double v : p) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum <= 3.0 + 1e-12);
    for (std::size_t i = 0; i < 3; ++i) mean[i] += p[i] / kSamples;
  }
  // Uniform on {p >= 0, sum <= mB}: each coordinate has mean mB/(m+1).
  for (double v : mean) CHECK(v == doctest::Approx(0.75).epsilon(0.03));
}

TEST_CASE("box samples stay in the box") {
  std::mt19937_64 rng(4);
  const auto space = ContractSpace::Box(2, 2.5);
  for (int s = 0; s < 1000; ++s) {
    for (double v : SampleContractSpace(rng, space)) {
      CHECK(v >= 0.0);
      CHECK(v <= 2.5);
    }
  }
}

TEST_CASE("hull samples lie in the hull") {
  std::mt19937_64 rng(5);
  PointHull hull(2);
  hull.Add({0.0, 0.0});
  hull.Add({1.0, 0.0});
  hull.Add({0.0, 2.0});
  for (int s = 0; s < 200; ++s) {
    const Vector p = SampleInHull(rng, hull);
    CHECK(hull.Contains(p));
    CHECK(2.0 * p[0] + p[1] <= 2.0 + 1e-12);
  }
}

TEST_CASE("inducibility depends on the payment budget") {
  const Instance e1 = testing::E1();
  CHECK(Inducible(e1, 0, ContractSpace::Simplex(3, 1.0)));
  CHECK(Inducible(e1, 1, ContractSpace::Simplex(3, 1.0)));
  // Total payment is at most 3, so action 1 gains at most 1.2 over action 0.
  Instance costly = e1;
  costly.costs[1] = 1.5;
  CHECK_FALSE(Inducible(costly, 1, ContractSpace::Simplex(3, 1.0)));
  CHECK(Inducible(costly, 1, ContractSpace::Simplex(3, 2.0)));
}

TEST_CASE("associated actions respect radius and inducibility") {
  const Instance e1 = testing::E1();
  const auto wide = ContractSpace::Simplex(3, 1.0);
  CHECK(AssociatedActions(e1, {0.5, 0.0, 0.5}, 0.01, 2, wide) ==
        std::set<std::size_t>{0});
  // Radius 5*0.06*2 = 0.6 reaches both distributions.
  CHECK(AssociatedActions(e1, {0.25, 0.05, 0.7}, 0.06, 2, wide) ==
        std::set<std::size_t>{0, 1});
  Instance costly = e1;
  costly.costs[1] = 1.5;
  CHECK(AssociatedActions(costly, {0.25, 0.05, 0.7}, 0.06, 2, wide) ==
        std::set<std::size_t>{0});
}

TEST_CASE("agent deficit") {
  const Instance e1 = testing::E1();
  CHECK(AgentDeficit(e1, 0, {0.0, 0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(AgentDeficit(e1, 1, {0.0, 0.0, 0.0}) == doctest::Approx(0.25));
  CHECK(AgentDeficit(e1, 0, {0.0, 2.5, 0.0}) == doctest::Approx(0.0));

  std::mt19937_64 rng(6);
  for (int s = 0; s < 500; ++s) {
    const Vector p = testing::UniformVector(rng, 3, 0.0, 3.0);
    const std::size_t br = BestResponse(e1, p);
    CHECK(AgentDeficit(e1, br, p) <= 1e-9);
    for (std::size_t a = 0; a < e1.n_actions; ++a) {
      CHECK(AgentDeficit(e1, a, p) >= 0.0);
    }
  }
}
