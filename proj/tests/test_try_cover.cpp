#include <cmath>
#include <random>

#include "contractlearn/driver.hpp"
#include "contractlearn/try_cover.hpp"
#include "contractlearn/whitebox.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace contractlearn;

namespace {

CoverParams TestParams(std::size_t m, std::size_t n, double eps, double eta) {
  CoverParams p;
  p.q = 1;
  p.eps = eps;
  p.eta = eta;
  p.y = YSlack(1, eps, m, n, eta);
  p.space = ContractSpace::Simplex(m, 1);
  return p;
}

// Runs attempts until one succeeds (bounded).
std::optional<Cover> Cover1(MetaActionRegistry& reg, Environment& env,
                            const CoverParams& params,
                            const CoverObserver& observer = {}) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    auto cover = TryCover(reg, env, params, nullptr, observer);
    if (cover) return cover;
  }
  return std::nullopt;
}

// Observe returns the best response's distribution, except that from call
// `switch_at` on every answer is a fresh far-away distribution.
class SwitchingEnvironment : public Environment {
 public:
  SwitchingEnvironment(Instance inst, int switch_at)
      : inner_(std::move(inst)), switch_at_(switch_at) {}
  std::size_t num_outcomes() const override { return inner_.num_outcomes(); }
  std::size_t Commit(const Contract& p) override { return inner_.Commit(p); }
  Vector Observe(const Contract& p, std::size_t q) override {
    ChargeRounds(q);
    if (++calls_ < switch_at_) return inner_.Observe(p, q);
    Vector f(num_outcomes(), 0.0);
    f[calls_ % num_outcomes()] = 1.0;
    return f;
  }

 private:
  ExactEnvironment inner_;
  int switch_at_;
  int calls_ = 0;
};

}  // namespace

TEST_CASE("a single action covers the whole space") {
  const Instance inst = testing::SingleAction({0.2, 0.8}, {0.1, 0.9});
  ExactEnvironment env(inst);
  MetaActionRegistry reg;
  const CoverParams params = TestParams(2, 1, 0.01, 1e-4);
  CHECK_FALSE(TryCover(reg, env, params).has_value());
  CHECK(reg.size() == 1);
  const auto cover = TryCover(reg, env, params);
  REQUIRE(cover.has_value());
  REQUIRE(cover->regions.size() == 1);
  CHECK(HullEqualsPolytope(cover->regions.begin()->second,
                           Polytope(params.space)));
  CHECK(cover->upper.begin()->second.cuts().empty());
}

TEST_CASE("hardness instance splits along the indifference plane") {
  ExactEnvironment env(testing::E1());
  MetaActionRegistry reg;
  const CoverParams params = TestParams(3, 2, 1e-4, 1e-6);
  const auto cover = Cover1(reg, env, params);
  REQUIRE(cover.has_value());
  REQUIRE(cover->regions.size() == 2);
  const MetaId d_a1 = cover->regions.begin()->first;
  const auto& cuts = cover->upper.at(d_a1).cuts();
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].normal[0] == doctest::Approx(0.5));
  CHECK(cuts[0].normal[1] == doctest::Approx(-0.1));
  CHECK(cuts[0].normal[2] == doctest::Approx(-0.4));
  CHECK(cuts[0].offset == doctest::Approx(-0.25 - params.y).epsilon(1e-5));
  CHECK(CoverMisses(*cover, 2000, 1) == 0);
}

TEST_CASE("a registry change mid-attempt returns bottom") {
  const Instance e1 = testing::E1();
  MetaActionRegistry reg;
  reg.Seed({e1.distributions[0]});
  reg.Seed({e1.distributions[1]});
  SwitchingEnvironment env(e1, 3);
  CHECK_FALSE(TryCover(reg, env, TestParams(3, 2, 0.01, 1e-3)).has_value());
  CHECK(reg.bot_count() == 1);
}

TEST_CASE("reference regions") {
  const ContractSpace space = ContractSpace::Simplex(3, 1);
  std::map<MetaId, Vector> one{{MetaId{0}, {0.5, 0, 0.5}}};
  auto r = RegionReference(one, {{MetaId{0}, 0.0}}, space);
  CHECK(r.at(MetaId{0}).cuts().empty());

  std::map<MetaId, Vector> twins{{MetaId{0}, {0.5, 0, 0.5}},
                                 {MetaId{1}, {0.5, 0, 0.5}}};
  r = RegionReference(twins, {{MetaId{0}, 0.1}, {MetaId{1}, 0.1}}, space);
  CHECK(r.at(MetaId{0}).Vertices().size() == 4);
  CHECK(r.at(MetaId{1}).Vertices().size() == 4);

  const Instance e1 = testing::E1();
  std::map<MetaId, Vector> anchors{{MetaId{0}, e1.distributions[0]},
                                   {MetaId{1}, e1.distributions[1]}};
  r = RegionReference(anchors, {{MetaId{0}, 0.0}, {MetaId{1}, 0.25}}, space);
  CHECK(r.at(MetaId{0}).Contains(Vector{0, 2.5 - 1e-6, 0}));
  CHECK_FALSE(r.at(MetaId{0}).Contains(Vector{0, 2.5 + 1e-3, 0}));
  CHECK(r.at(MetaId{1}).Contains(Vector{0, 2.5 + 1e-6, 0}));
  CHECK_FALSE(r.at(MetaId{1}).Contains(Vector{0, 2.5 - 1e-3, 0}));
}

TEST_CASE("property: cover invariants on random instances") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const std::size_t m = 2 + (trial / 2) % 2;
    const Instance inst = GenRandom(n, m, rng(), 0.3);
    const double eps = 0.005, eta = 1e-3;
    ExactEnvironment env(inst, eps, rng());
    MetaActionRegistry reg;
    const CoverParams params = TestParams(m, n, eps, eta);

    std::map<MetaId, std::size_t> cut_count, gen_count;
    const CoverObserver check = [&](const CoverSession& s) {
      const TryCoverState& st = s.state();
      for (const auto& [d, hull] : st.lower) {
        CHECK(st.known.at(d).contains(d));
        for (const auto& g : hull.points()) {
          CHECK(params.space.Contains(g));
          CHECK(st.upper.at(d).Contains(g));
        }
        for (MetaId k : st.known.at(d)) {
          if (k != d) CHECK(st.halfspaces.contains({d, k}));
        }
        CHECK(st.upper.at(d).cuts().size() >= cut_count[d]);
        CHECK(hull.size() >= gen_count[d]);
        cut_count[d] = st.upper.at(d).cuts().size();
        gen_count[d] = hull.size();
      }
      for (const auto& [pair, h] : st.halfspaces) {
        CHECK(st.known.at(pair.first).contains(pair.second));
      }
    };

    std::optional<Cover> cover;
    for (int attempt = 0; attempt < 20 && !cover; ++attempt) {
      cut_count.clear();
      gen_count.clear();
      TryCoverStats stats;
      cover = TryCover(reg, env, params, &stats, check);
      if (cover) {
        const double md = static_cast<double>(m), nd = static_cast<double>(n);
        const double budget =
            8 * nd * nd * (std::log(md / eta) + Binomial(m + n + 1, m));
        CHECK(static_cast<double>(stats.oracle_calls) <= budget);
      }
    }
    REQUIRE(cover.has_value());
    CHECK(reg.bot_count() <= 2 * n);
    for (const auto& [d, hull] : cover->regions) {
      CHECK(HullEqualsPolytope(hull, cover->upper.at(d)));
    }
    CHECK(CoverMisses(*cover, 2000, rng()) == 0);

    // Every associated true action is a gamma-approximate best response
    // throughout its region.
    const double gamma = 27.0 * eps * m * n * n + 2.0 * n * eta * std::sqrt(m);
    for (const auto& [d, hull] : cover->regions) {
      const auto actions =
          AssociatedActions(inst, cover->anchors.at(d), eps, n, params.space);
      for (int k = 0; k < 50; ++k) {
        const Vector p = SampleInHull(rng, hull);
        for (std::size_t a : actions) CHECK(AgentDeficit(inst, a, p) <= gamma);
      }
    }
  }
}
