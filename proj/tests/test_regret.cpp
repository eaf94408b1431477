#include <cmath>

#include "contractlearn/regret.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace contractlearn;

TEST_CASE("rho schedule") {
  CHECK(RegretRho(2, 2, 1, 1e5) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("slope") {
  CHECK(LogLogSlope({1, 10, 100}, {3, 30, 300}) == doctest::Approx(1.0));
  CHECK(LogLogSlope({1, 4, 16}, {1, 2, 4}) == doctest::Approx(0.5));
  CHECK_THROWS(LogLogSlope({1}, {1}));
  CHECK_THROWS(LogLogSlope({1, 2}, {0, 1}));
}

TEST_CASE("short horizon is all exploration") {
  const Instance e1 = testing::E1();
  RegretOptions o;
  o.seed = 3;
  const RegretRun run = RunRegret(e1, 1000, o);
  REQUIRE(run.per_round_utilities.size() == 1000);
  CHECK(run.all_exploration);
  for (std::size_t t = 1; t < run.regret_curve.size(); ++t) {
    CHECK(run.regret_curve[t] >= run.regret_curve[t - 1] - 1e-12);
  }
}

TEST_CASE("accounting identity and committed tail") {
  const Instance inst = GenRandom(2, 2, 1, 0.4);
  RegretOptions o;
  o.seed = 1;
  o.mix_mode = MixMode::kEps;
  o.overrides.eps = 0.15;
  const RegretRun run = RunRegret(inst, 20000, o);
  REQUIRE_FALSE(run.all_exploration);
  double sum = 0;
  for (double u : run.per_round_utilities) sum += u;
  CHECK(run.total_regret() ==
        doctest::Approx(20000 * run.opt_value - sum).epsilon(1e-9));
  const double tail = run.opt_value - PrincipalUtility(inst, run.final_contract);
  for (std::size_t t = run.exploration_rounds; t < 20000; ++t) {
    CHECK(run.opt_value - run.per_round_utilities[t] == doctest::Approx(tail));
  }
  // Exploration losses per round are bounded by mB + 1.
  for (std::size_t t = 0; t < run.exploration_rounds; ++t) {
    CHECK(run.opt_value - run.per_round_utilities[t] <= 2 * 1 + 1);
  }
}

TEST_CASE("average regret shrinks with the horizon") {
  const Instance inst = GenRandom(2, 2, 1, 0.4);
  RegretOptions o;
  o.seed = 1;
  o.mix_mode = MixMode::kEps;
  o.overrides.eps = 0.15;
  const RegretRun a = RunRegret(inst, 20000, o);
  const RegretRun b = RunRegret(inst, 80000, o);
  REQUIRE_FALSE(a.all_exploration);
  REQUIRE_FALSE(b.all_exploration);
  CHECK(b.total_regret() / 80000 <= a.total_regret() / 20000);
}

TEST_CASE("grid baseline") {
  const Instance e1 = testing::E1();
  RegretOptions o;
  const RegretRun run = RunGridBaseline(e1, 5000, 2000, 0.5, o);
  CHECK(run.per_round_utilities.size() == 5000);
  CHECK(run.exploration_rounds <= 2000);
  CHECK(run.final_contract.size() == 3);
}
