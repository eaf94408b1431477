#pragma once

#include <cstddef>
#include <cstdint>

#include "contractlearn/model.hpp"

namespace contractlearn {

// Random instance: uniform-on-simplex distributions, each action resampled
// until its L-inf distance to every earlier action is at least `min_sep`
// (starting over when an action cannot be placed); uniform costs with action
// 0 forced to cost 0; uniform rewards. `max_attempts` bounds the total number
// of distribution draws.
Instance GenRandom(std::size_t n, std::size_t m, std::uint64_t seed,
                   double min_sep, std::size_t max_attempts = 100'000);

enum class HardnessRange {
  // eps in (0, 1/80], the range of the lower-bound construction.
  kStrict,
  // eps in (0, 1), for fixtures such as eps = 0.1.
  kRelaxed,
};

// Two actions, three outcomes: F_1 = (1/2, 0, 1/2), F_2 = (0, eps, 1 - eps),
// c = (0, 1/4), r = (0, 0, 1).
Instance GenHardness(double eps, HardnessRange range = HardnessRange::kStrict);

}  // namespace contractlearn
