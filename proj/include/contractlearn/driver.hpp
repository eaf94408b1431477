#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "contractlearn/environment.hpp"
#include "contractlearn/find_contract.hpp"
#include "contractlearn/try_cover.hpp"

namespace contractlearn {

enum class MixMode { kGamma, kEps, kValue };

const char* ToString(MixMode mode);
MixMode ParseMixMode(const std::string& s);

// Explicit replacements for derived parameters (desk-scale runs).
struct ParamOverrides {
  std::optional<double> eps;
  std::optional<double> eta;
  std::optional<double> alpha;
  std::optional<std::uint64_t> q;
};

struct Params {
  double rho = 0.5;
  double delta = 0.1;
  double bound = 1.0;
  std::size_t m = 1;
  // Upper bound on the number of agent actions. Only the parameter formulas
  // (eps, eta, alpha, y, gamma) read it.
  std::size_t n_bound = 1;
  double eps = 0.0;
  double eta = 0.0;
  double alpha = 0.0;
  std::uint64_t q = 0;
  MixMode mix_mode = MixMode::kGamma;
  double mix_value = 0.0;
  std::uint64_t max_rounds = 1'000'000'000;

  // 18 B eps m n^2 + 2 n eta sqrt(m)
  double y() const;
  // 27 B eps m n^2 + 2 n eta sqrt(m)
  double gamma() const;
  double mix() const;
  CoverParams cover_params() const;
};

// The exploration budget does not fit a 64-bit count.
class BudgetOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// eps = rho^2 / (32^2 B m^2 n^2); eta = eps sqrt(m) n / 2;
// alpha = delta / (2 n^3 [ln(2Bm/eta) + C(m+n+1, m)]);
// q = ceil(ln(2m/alpha) / (2 eps^2)). Overrides replace a value and feed the
// formulas that follow it.
Params ComputeParams(double rho, double delta, double bound, std::size_t m,
                     std::size_t n_bound, const ParamOverrides& overrides = {});

// Binomial coefficient as a double (exact for the small arguments used).
double Binomial(std::size_t n, std::size_t k);

struct LearnResult {
  Contract contract;
  FindContractResult find;
  Cover cover;
  std::uint64_t rounds_used = 0;
  std::uint64_t restarts = 0;
  std::uint64_t bot_count = 0;
  std::uint64_t oracle_calls = 0;
};

// Partial progress when the round cap stops the loop.
class RoundBudgetExceeded : public std::runtime_error {
 public:
  RoundBudgetExceeded(const std::string& what, std::uint64_t rounds,
                      std::uint64_t restarts)
      : std::runtime_error(what), rounds_used(rounds), restarts(restarts) {}

  std::uint64_t rounds_used;
  std::uint64_t restarts;
};

struct DriverOptions {
  CoverObserver observer;
  // Called after each covering attempt with the attempt's outcome.
  std::function<void(bool success, const MetaActionRegistry&)> on_attempt;
};

// Repeats TryCover over {p >= 0 : |p|_1 <= mB} until it succeeds, then runs
// FindContract over [0,B]^m. `rewards` are the principal's own rewards.
LearnResult DiscoverAndCover(Environment& env, const Vector& rewards,
                             const Params& params,
                             MetaActionRegistry* registry = nullptr,
                             const DriverOptions& options = {});

}  // namespace contractlearn
