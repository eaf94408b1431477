#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "contractlearn/driver.hpp"
#include "contractlearn/model.hpp"

namespace contractlearn {

// rho = m^{n/5} B^{3/5} m n^{8/5} T^{-1/5}
double RegretRho(std::size_t m, std::size_t n, double bound, double horizon);

struct RegretOptions {
  double delta = 0.1;
  double bound = 1.0;
  std::uint64_t seed = 1;
  // Replaces the horizon-derived rho.
  std::optional<double> rho;
  ParamOverrides overrides;
  MixMode mix_mode = MixMode::kGamma;
  double mix_value = 0.0;
};

struct RegretRun {
  std::uint64_t horizon = 0;
  double rho = 0.0;
  Params params;
  // u(p^t) for t = 1..T.
  std::vector<double> per_round_utilities;
  double opt_value = 0.0;
  // R^t = t * OPT - sum_{s<=t} u(p^s).
  std::vector<double> regret_curve;
  std::uint64_t exploration_rounds = 0;
  // Exploration did not finish within T.
  bool all_exploration = false;
  Contract final_contract;

  double total_regret() const {
    return regret_curve.empty() ? 0.0 : regret_curve.back();
  }
};

// Explore-then-commit: run Discover-and-Cover on a sampled environment, then
// commit its contract for the rest of the horizon. Utilities are the exact
// expected u(p^t) from the instance.
RegretRun RunRegret(const Instance& inst, std::uint64_t horizon,
                    const RegretOptions& options);

// Comparison baseline: spend the same exploration budget evaluating a uniform
// grid over [0,B]^m by empirical reward minus payment, then commit to the best
// grid point.
RegretRun RunGridBaseline(const Instance& inst, std::uint64_t horizon,
                          std::uint64_t exploration_rounds, double step,
                          const RegretOptions& options);

// Least-squares slope of log(y) against log(x).
double LogLogSlope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace contractlearn
