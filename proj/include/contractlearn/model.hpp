#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace contractlearn {

// A point of R^m. Contracts, distributions and polytope vertices all share it.
using Vector = std::vector<double>;

// Payment vector over outcomes; every entry is non-negative.
using Contract = Vector;

// Agent indifference threshold: two agent utilities within this are tied.
inline constexpr double kAgentTieTolerance = 1e-9;

// Ground truth of a hidden-action principal-agent problem.
//
// Row a of `distributions` is the outcome distribution F_a of action a.
// At least one action has zero cost, so IC implies IR.
struct Instance {
  std::size_t n_actions = 0;
  std::size_t n_outcomes = 0;
  std::vector<Vector> distributions;
  Vector costs;
  Vector rewards;
};

double Dot(std::span<const double> a, std::span<const double> b);

// Expected agent utility of `action` under contract `p`: F_a . p - c_a.
double AgentUtility(const Instance& inst, std::size_t action,
                    std::span<const double> p);

// Expected principal utility when `action` is played: F_a . (r - p).
double PrincipalUtilityOf(const Instance& inst, std::size_t action,
                          std::span<const double> p);

// Agent best response a*(p). Agent ties (within kAgentTieTolerance) go to the
// principal's preferred action, then to the lowest index.
std::size_t BestResponse(const Instance& inst, std::span<const double> p);

// u(p): principal utility under the agent's best response.
double PrincipalUtility(const Instance& inst, std::span<const double> p);

// Returns every invariant violation; empty means the instance is valid.
std::vector<std::string> ValidateInstance(const Instance& inst);

// Throws std::invalid_argument listing all violations.
void RequireValidInstance(const Instance& inst);

}  // namespace contractlearn
