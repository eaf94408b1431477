#pragma once

// Shared fixtures and small generators for the test binaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "contractlearn/environment.hpp"
#include "contractlearn/instgen.hpp"
#include "contractlearn/model.hpp"

namespace testing {

using contractlearn::Instance;
using contractlearn::Vector;

// Hardness instance at eps = 0.1: F1 = (0.5, 0, 0.5), F2 = (0, 0.1, 0.9),
// c = (0, 0.25), r = (0, 0, 1).
inline Instance E1() {
  return contractlearn::GenHardness(0.1, contractlearn::HardnessRange::kRelaxed);
}

inline Instance SingleAction(Vector f, Vector r) {
  Instance inst;
  inst.n_actions = 1;
  inst.n_outcomes = f.size();
  inst.distributions = {std::move(f)};
  inst.costs = {0.0};
  inst.rewards = std::move(r);
  return inst;
}

inline double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * contractlearn::UniformUnit(rng);
}

inline Vector UniformVector(std::mt19937_64& rng, std::size_t m, double lo,
                            double hi) {
  Vector v(m);
  for (double& x : v) x = Uniform(rng, lo, hi);
  return v;
}

}  // namespace testing
