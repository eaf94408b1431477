#include <cmath>
#include <random>

#include "contractlearn/find_hs.hpp"
#include "contractlearn/whitebox.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace contractlearn;

namespace {

// Registry seeded with the exact distributions of E1 (d0 = a1, d1 = a2) and a
// session whose L_{d0} holds the origin.
struct E1Setup {
  Instance inst = testing::E1();
  MetaActionRegistry registry;
  ExactEnvironment env;
  CoverParams params;
  MetaId d_a1, d_a2;
  std::optional<CoverSession> session;

  explicit E1Setup(double eta, double perturbation = 0.0, double eps = 0.01)
      : env(testing::E1(), perturbation, 4) {
    d_a1 = registry.Seed({inst.distributions[0]});
    d_a2 = registry.Seed({inst.distributions[1]});
    params.q = 1;
    params.eps = eps;
    params.eta = eta;
    params.y = YSlack(1, eps, 3, 2, eta);
    params.space = ContractSpace::Simplex(3, 1);
    session.emplace(registry, env, params);
    session->Reset();
    session->state().Discover(d_a1, Vector{0, 0, 0});
  }
};

}  // namespace

TEST_CASE("slack formula") {
  CHECK(YSlack(1, 0.01, 3, 2, 0.001) ==
        doctest::Approx(2.1669282032302757).epsilon(1e-15));
  CHECK(YSlack(1, 0, 3, 2, 0) == 0.0);
  CHECK(YSlack(1, 1, 1, 1, 0) == 18.0);
}

TEST_CASE("bisection finds the indifference point of the hardness instance") {
  E1Setup s(1e-6);
  const auto est = FindHs(*s.session, s.d_a1, Vector{0, 5, 0});
  REQUIRE(est.has_value());
  CHECK(est->separated);
  CHECK(est->other_meta == s.d_a2);
  CHECK(L2Distance(est->midpoint, Vector{0, 2.5, 0}) <= 1e-6);
  CHECK(std::abs(est->delta_cost + 0.25) <= 1e-6);
  CHECK(s.session->state().DeltaCost(s.d_a1, s.d_a2) == est->delta_cost);
  const Halfspace& h = est->halfspace;
  CHECK(h.normal[0] == doctest::Approx(0.5));
  CHECK(h.normal[1] == doctest::Approx(-0.1));
  CHECK(h.normal[2] == doctest::Approx(-0.4));
  CHECK(h.offset == doctest::Approx(est->delta_cost - s.params.y));
  // Endpoints straddle the boundary.
  CHECK(BestResponse(s.inst, est->inner) == 0);
  CHECK(BestResponse(s.inst, est->outer) == 1);
}

TEST_CASE("oracle calls stay within 2 + ceil(log2(length / eta))") {
  E1Setup s(1e-6);
  const std::uint64_t before = s.session->oracle_calls();
  REQUIRE(FindHs(*s.session, s.d_a1, Vector{0, 3, 0}).has_value());
  const auto calls = s.session->oracle_calls() - before;
  CHECK(calls <= 2 + static_cast<std::uint64_t>(
                         std::ceil(std::log2(std::sqrt(2.0) * 3 / 1e-6))));
}

TEST_CASE("a segment already shorter than eta skips the loop") {
  E1Setup s(1e-3);
  const Vector p{0, 5e-4, 0};
  const auto est = FindHs(*s.session, s.d_a1, p);
  REQUIRE(est.has_value());
  CHECK(s.session->oracle_calls() == 2);
  CHECK(est->midpoint == Midpoint(Vector{0, 0, 0}, p));
  CHECK_FALSE(est->separated);
}

TEST_CASE("a bottom answer aborts the search") {
  E1Setup s(1e-6);
  // Dropping a2 from the registry makes its first sighting a bottom.
  MetaActionRegistry only_a1;
  only_a1.Seed({s.inst.distributions[0]});
  CoverSession session(only_a1, s.env, s.params);
  session.Reset();
  session.state().Discover(only_a1.Ids().front(), Vector{0, 0, 0});
  CHECK_FALSE(FindHs(session, only_a1.Ids().front(), Vector{0, 5, 0}));
}

TEST_CASE("empty lower bound is a caller error") {
  E1Setup s(1e-6);
  CHECK_THROWS_AS(FindHs(*s.session, s.d_a2, Vector{0, 0, 0}),
                  std::logic_error);
}

TEST_CASE("property: sandwich and cost accuracy under the clean event") {
  // H_ik = {F~_i.p - c_i >= F~_k.p - c_k}; the returned halfspace must
  // contain it, and lie inside the same set relaxed by 2y (the proof's chain
  // of two y-bounded steps).
  std::mt19937_64 rng(8);
  const double eps = 0.01;
  for (int trial = 0; trial < 20; ++trial) {
    E1Setup s(1e-4, eps, eps);
    // Inside the simplex and on a2's side of the boundary.
    const Vector target{0.0, testing::Uniform(rng, 2.7, 2.9),
                        testing::Uniform(rng, 0.0, 0.1)};
    MetaActionRegistry& reg = s.registry;
    const auto est = FindHs(*s.session, s.d_a1, target);
    if (!est) continue;  // a perturbed estimate may open a new meta
    REQUIRE(est->separated);
    const Vector& fi = reg.Anchor(s.d_a1);
    const Vector& fk = reg.Anchor(est->other_meta);
    const double ci = 0.0, ck = 0.25;
    CHECK(std::abs(est->delta_cost - (ci - ck)) <= s.params.y);
    for (int k = 0; k < 1000; ++k) {
      const Vector p = SampleContractSpace(rng, s.params.space);
      const double lhs = Dot(fi, p) - ci;
      const double rhs = Dot(fk, p) - ck;
      const bool in_h = lhs >= rhs;
      const bool in_est = est->halfspace.Contains(p, 0.0);
      const bool in_h2y = lhs >= rhs - 2 * s.params.y;
      if (in_h) CHECK(in_est);
      if (in_est) CHECK(in_h2y);
    }
  }
}
