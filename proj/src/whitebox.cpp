#include "contractlearn/whitebox.hpp"

#include <algorithm>
#include <cmath>

#include "contractlearn/environment.hpp"
#include "contractlearn/lp.hpp"

namespace contractlearn {
namespace {

Vector Dirichlet(std::mt19937_64& rng, std::size_t k) {
  Vector x(k);
  double sum = 0.0;
  for (double& v : x) {
    v = -std::log(1.0 - UniformUnit(rng));
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace

Vector SampleContractSpace(std::mt19937_64& rng, const ContractSpace& space) {
  const std::size_t m = space.dimension;
  Vector p(m);
  if (space.kind == ContractSpace::Kind::kBox) {
    for (double& v : p) v = space.bound * UniformUnit(rng);
    return p;
  }
  const Vector w = Dirichlet(rng, m + 1);
  const double scale = static_cast<double>(m) * space.bound;
  for (std::size_t i = 0; i < m; ++i) p[i] = scale * w[i];
  return p;
}

Vector SampleInHull(std::mt19937_64& rng, const PointHull& hull) {
  const auto& pts = hull.points();
  const Vector w = Dirichlet(rng, pts.size());
  Vector p(hull.dimension(), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += w[i] * pts[i][j];
  }
  return p;
}

bool Inducible(const Instance& inst, std::size_t action,
               const ContractSpace& space) {
  const std::size_t m = inst.n_outcomes;
  LinearProgram lp;
  lp.objective.assign(m, 0.0);
  for (std::size_t b = 0; b < inst.n_actions; ++b) {
    if (b == action) continue;
    Vector row(m);
    for (std::size_t w = 0; w < m; ++w) {
      row[w] = inst.distributions[b][w] - inst.distributions[action][w];
    }
    lp.AddLessEqual(std::move(row), inst.costs[b] - inst.costs[action]);
  }
  for (const auto& f : space.Facets()) lp.AddGreaterEqual(f.normal, f.offset);
  return SolveLp(lp).optimal();
}

std::set<std::size_t> AssociatedActions(const Instance& inst,
                                        const Vector& anchor, double eps,
                                        std::size_t n,
                                        const ContractSpace& space) {
  std::set<std::size_t> out;
  const double radius = 5.0 * eps * static_cast<double>(n);
  for (std::size_t a = 0; a < inst.n_actions; ++a) {
    if (LInfDistance(anchor, inst.distributions[a]) > radius) continue;
    if (Inducible(inst, a, space)) out.insert(a);
  }
  return out;
}

double MaxEstimateError(const Instance& inst,
                        const MetaActionRegistry& registry) {
  double worst = 0.0;
  for (const auto& rec : registry.log()) {
    const std::size_t a = BestResponse(inst, rec.contract);
    worst = std::max(worst, LInfDistance(rec.estimate, inst.distributions[a]));
  }
  return worst;
}

bool CleanEventHeld(const Instance& inst, const MetaActionRegistry& registry,
                    double eps) {
  return MaxEstimateError(inst, registry) <= eps;
}

std::size_t CoverMisses(const Cover& cover, std::size_t samples,
                        std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::size_t misses = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector p = SampleContractSpace(rng, cover.space);
    // Try regions whose upper bound contains p first; the hull test decides.
    std::vector<MetaId> order;
    for (const auto& [d, region] : cover.regions) {
      if (cover.upper.at(d).Contains(p, tol)) order.insert(order.begin(), d);
      else order.push_back(d);
    }
    bool covered = false;
    for (MetaId d : order) {
      if (cover.regions.at(d).Contains(p, tol)) {
        covered = true;
        break;
      }
    }
    if (!covered) ++misses;
  }
  return misses;
}

double AgentDeficit(const Instance& inst, std::size_t action,
                    const Vector& p) {
  double best = -INFINITY;
  for (std::size_t a = 0; a < inst.n_actions; ++a) {
    best = std::max(best, AgentUtility(inst, a, p));
  }
  return best - AgentUtility(inst, action, p);
}

}  // namespace contractlearn
