#include "contractlearn/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace contractlearn {
namespace {

void CheckAction(const Instance& inst, std::size_t action) {
  if (action >= inst.n_actions) {
    throw std::out_of_range("action index " + std::to_string(action) +
                            " out of range (n = " +
                            std::to_string(inst.n_actions) + ")");
  }
}

void CheckContract(const Instance& inst, std::span<const double> p) {
  if (p.size() != inst.n_outcomes) {
    throw std::invalid_argument("contract has dimension " +
                                std::to_string(p.size()) + ", expected " +
                                std::to_string(inst.n_outcomes));
  }
}

}  // namespace

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot product of vectors of unequal length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double AgentUtility(const Instance& inst, std::size_t action,
                    std::span<const double> p) {
  CheckAction(inst, action);
  CheckContract(inst, p);
  return Dot(inst.distributions[action], p) - inst.costs[action];
}

double PrincipalUtilityOf(const Instance& inst, std::size_t action,
                          std::span<const double> p) {
  CheckAction(inst, action);
  CheckContract(inst, p);
  const Vector& f = inst.distributions[action];
  double sum = 0.0;
  for (std::size_t w = 0; w < inst.n_outcomes; ++w) {
    sum += f[w] * (inst.rewards[w] - p[w]);
  }
  return sum;
}

std::size_t BestResponse(const Instance& inst, std::span<const double> p) {
  CheckContract(inst, p);
  std::vector<double> agent(inst.n_actions);
  double best = -INFINITY;
  for (std::size_t a = 0; a < inst.n_actions; ++a) {
    agent[a] = AgentUtility(inst, a, p);
    best = std::max(best, agent[a]);
  }
  std::size_t chosen = inst.n_actions;
  double chosen_principal = -INFINITY;
  for (std::size_t a = 0; a < inst.n_actions; ++a) {
    if (agent[a] < best - kAgentTieTolerance) continue;
    const double principal = PrincipalUtilityOf(inst, a, p);
    if (chosen == inst.n_actions || principal > chosen_principal) {
      chosen = a;
      chosen_principal = principal;
    }
  }
  return chosen;
}

double PrincipalUtility(const Instance& inst, std::span<const double> p) {
  return PrincipalUtilityOf(inst, BestResponse(inst, p), p);
}

std::vector<std::string> ValidateInstance(const Instance& inst) {
  std::vector<std::string> out;
  auto fmt = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  if (inst.n_actions == 0) out.push_back("instance has no actions");
  if (inst.n_outcomes == 0) out.push_back("instance has no outcomes");
  if (inst.distributions.size() != inst.n_actions) {
    out.push_back("expected " + std::to_string(inst.n_actions) +
                  " distributions, got " +
                  std::to_string(inst.distributions.size()));
  }
  if (inst.costs.size() != inst.n_actions) {
    out.push_back("expected " + std::to_string(inst.n_actions) +
                  " costs, got " + std::to_string(inst.costs.size()));
  }
  if (inst.rewards.size() != inst.n_outcomes) {
    out.push_back("expected " + std::to_string(inst.n_outcomes) +
                  " rewards, got " + std::to_string(inst.rewards.size()));
  }
  for (std::size_t a = 0; a < inst.distributions.size(); ++a) {
    const Vector& f = inst.distributions[a];
    const std::string who = "action " + std::to_string(a) + ": ";
    if (f.size() != inst.n_outcomes) {
      out.push_back(who + "distribution has length " +
                    std::to_string(f.size()));
      continue;
    }
    double sum = 0.0;
    for (double x : f) {
      if (!(x >= 0.0 && x <= 1.0)) {
        out.push_back(who + "probability " + fmt(x) + " outside [0,1]");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      out.push_back(who + "distribution sums to " + fmt(sum));
    }
  }
  bool zero_cost = false;
  for (std::size_t a = 0; a < inst.costs.size(); ++a) {
    const double c = inst.costs[a];
    if (!(c >= 0.0 && c <= 1.0)) {
      out.push_back("action " + std::to_string(a) + ": cost " + fmt(c) +
                    " outside [0,1]");
    }
    if (c == 0.0) zero_cost = true;
  }
  if (!inst.costs.empty() && !zero_cost) out.push_back("no zero-cost action");
  for (std::size_t w = 0; w < inst.rewards.size(); ++w) {
    const double r = inst.rewards[w];
    if (!(r >= 0.0 && r <= 1.0)) {
      out.push_back("outcome " + std::to_string(w) + ": reward " + fmt(r) +
                    " outside [0,1]");
    }
  }
  return out;
}

void RequireValidInstance(const Instance& inst) {
  const auto violations = ValidateInstance(inst);
  if (violations.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw std::invalid_argument(msg);
}

}  // namespace contractlearn
