#pragma once

#include <cstddef>
#include <cstdint>

#include "contractlearn/model.hpp"

namespace contractlearn {

struct OptResult {
  double value = 0.0;
  Contract contract;
  std::size_t inducing_action = 0;
};

// Exact optimal contract over [0,B]^m: one LP per action with the agent's
// incentive constraints, each optimizer re-evaluated through BestResponse.
OptResult SolveOpt(const Instance& inst, double bound);

struct GridResult {
  double value = 0.0;
  Contract contract;
  std::uint64_t points = 0;
};

// max u(p) over {0, step, ..., B}^m (B included even when not a multiple of
// step). Throws when the grid has more than `max_points` points.
GridResult GridOpt(const Instance& inst, double bound, double step,
                   std::uint64_t max_points = 20'000'000);

}  // namespace contractlearn
