#include <random>

#include "contractlearn/model.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace contractlearn;

TEST_CASE("agent utility on the hardness instance") {
  const Instance e1 = testing::E1();
  CHECK(AgentUtility(e1, 0, Vector{0, 0, 0}) == 0.0);
  CHECK(AgentUtility(e1, 1, Vector{0, 0, 0}) == doctest::Approx(-0.25));
  CHECK(AgentUtility(e1, 1, Vector{0, 2.5, 0}) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("best response and tie-breaking") {
  const Instance e1 = testing::E1();
  CHECK(BestResponse(e1, Vector{0, 0, 0}) == 0);
  // Agent indifferent at 0.0; the principal gets 0.65 from a2 versus 0.5.
  CHECK(BestResponse(e1, Vector{0, 2.5, 0}) == 1);
  CHECK(BestResponse(e1, Vector{0, 0, 1}) == 1);
  // Just below the indifference point the tie window does not apply.
  CHECK(BestResponse(e1, Vector{0, 2.5 - 1e-6, 0}) == 0);
}

TEST_CASE("principal utility") {
  const Instance e1 = testing::E1();
  CHECK(PrincipalUtility(e1, Vector{0, 2.5, 0}) == doctest::Approx(0.65));
  CHECK(PrincipalUtility(e1, Vector{0, 0, 0}) == doctest::Approx(0.5));
  CHECK(PrincipalUtility(e1, Vector{0, 0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("equal principal utilities fall back to the lowest index") {
  Instance inst;
  inst.n_actions = 3;
  inst.n_outcomes = 2;
  inst.distributions = {{1, 0}, {1, 0}, {1, 0}};
  inst.costs = {0, 0, 0};
  inst.rewards = {0.5, 0.5};
  CHECK(BestResponse(inst, Vector{0.3, 0.1}) == 0);
}

TEST_CASE("validation") {
  CHECK(ValidateInstance(testing::E1()).empty());

  Instance bad = testing::E1();
  bad.distributions[0] = {0.6, 0.6, 0.0};
  auto v = ValidateInstance(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("distribution sums to 1.2") != std::string::npos);

  bad = testing::E1();
  bad.costs = {0.1, 0.25};
  v = ValidateInstance(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("no zero-cost action") != std::string::npos);
  CHECK_THROWS_AS(RequireValidInstance(bad), std::invalid_argument);

  bad = testing::E1();
  bad.rewards = {0, 0, 1.5};
  CHECK_FALSE(ValidateInstance(bad).empty());

  bad = testing::E1();
  bad.distributions[1] = {0.0, 0.1};
  CHECK_FALSE(ValidateInstance(bad).empty());
}

TEST_CASE("bad arguments") {
  const Instance e1 = testing::E1();
  CHECK_THROWS_AS(AgentUtility(e1, 2, Vector{0, 0, 0}), std::out_of_range);
  CHECK_THROWS_AS(BestResponse(e1, Vector{0, 0}), std::invalid_argument);
}

TEST_CASE("property: best response is an exact maximizer, deterministic") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const std::size_t m = 1 + rng() % 4;
    const Instance inst = GenRandom(n, m, rng(), 0.0);
    const Vector p = testing::UniformVector(rng, m, 0.0, 2.0);
    const std::size_t a = BestResponse(inst, p);
    CHECK(a == BestResponse(inst, p));
    for (std::size_t b = 0; b < n; ++b) {
      CHECK(AgentUtility(inst, a, p) >=
            AgentUtility(inst, b, p) - kAgentTieTolerance);
    }
    CHECK(PrincipalUtility(inst, p) <= 1.0 + 1e-12);
  }
}
