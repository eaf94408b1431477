#include "contractlearn/instgen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "contractlearn/environment.hpp"
#include "contractlearn/geometry.hpp"

namespace contractlearn {
namespace {

Vector UniformOnSimplex(std::mt19937_64& rng, std::size_t m) {
  Vector x(m);
  double sum = 0.0;
  for (double& v : x) {
    v = -std::log(1.0 - UniformUnit(rng));
    sum += v;
  }
  for (double& v : x) v /= sum;
  // Push the rounding residue into the largest entry.
  double total = 0.0;
  std::size_t largest = 0;
  for (std::size_t w = 0; w < m; ++w) {
    total += x[w];
    if (x[w] > x[largest]) largest = w;
  }
  x[largest] += 1.0 - total;
  return x;
}

}  // namespace

Instance GenRandom(std::size_t n, std::size_t m, std::uint64_t seed,
                   double min_sep, std::size_t max_attempts) {
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be >= 1");
  if (!(min_sep >= 0.0)) throw std::invalid_argument("min_sep must be >= 0");
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.n_actions = n;
  inst.n_outcomes = m;
  // Early actions can leave no room for later ones, so a stuck action throws
  // the partial instance away after a fixed number of draws.
  const std::size_t per_action = 1000;
  std::size_t attempts = 0;
  while (inst.distributions.size() < n) {
    std::size_t tries = 0;
    bool placed = false;
    while (!placed && tries < per_action && attempts < max_attempts) {
      ++tries;
      ++attempts;
      Vector f = UniformOnSimplex(rng, m);
      placed = true;
      for (const auto& g : inst.distributions) {
        if (LInfDistance(f, g) < min_sep) {
          placed = false;
          break;
        }
      }
      if (placed) inst.distributions.push_back(std::move(f));
    }
    if (placed) continue;
    if (attempts >= max_attempts) {
      throw std::runtime_error(
          "could not place " + std::to_string(n) + " actions with separation " +
          std::to_string(min_sep) + " after " + std::to_string(max_attempts) +
          " attempts");
    }
    inst.distributions.clear();
  }
  inst.costs.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    inst.costs[a] = a == 0 ? 0.0 : UniformUnit(rng);
  }
  inst.rewards.resize(m);
  for (double& r : inst.rewards) r = UniformUnit(rng);
  RequireValidInstance(inst);
  return inst;
}

Instance GenHardness(double eps, HardnessRange range) {
  const bool ok = range == HardnessRange::kStrict
                      ? eps > 0.0 && eps <= 1.0 / 80.0
                      : eps > 0.0 && eps < 1.0;
  if (!ok) {
    throw std::invalid_argument(
        "hardness eps " + std::to_string(eps) + " outside " +
        (range == HardnessRange::kStrict ? "(0, 1/80]" : "(0, 1)"));
  }
  Instance inst;
  inst.n_actions = 2;
  inst.n_outcomes = 3;
  inst.distributions = {{0.5, 0.0, 0.5}, {0.0, eps, 1.0 - eps}};
  inst.costs = {0.0, 0.25};
  inst.rewards = {0.0, 0.0, 1.0};
  RequireValidInstance(inst);
  return inst;
}

}  // namespace contractlearn
