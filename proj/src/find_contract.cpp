#include "contractlearn/find_contract.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "contractlearn/lp.hpp"
#include "contractlearn/oracle_ref.hpp"

namespace contractlearn {

FindContractResult FindContract(const Cover& cover, const Vector& rewards,
                                double bound, double mix) {
  if (cover.regions.empty()) throw std::invalid_argument("empty cover");
  if (!(mix >= 0.0)) throw std::invalid_argument("mix must be >= 0");
  const std::size_t m = cover.space.dimension;
  if (rewards.size() != m) throw std::invalid_argument("reward dimension");

  FindContractResult result;
  for (const auto& [d, region] : cover.regions) {
    const Vector& anchor = cover.anchors.at(d);
    LinearProgram lp;
    lp.objective.resize(m);
    for (std::size_t w = 0; w < m; ++w) lp.objective[w] = -anchor[w];
    for (const auto& h : cover.upper.at(d).Constraints()) {
      lp.AddGreaterEqual(h.normal, h.offset);
    }
    for (std::size_t w = 0; w < m; ++w) {
      Vector row(m, 0.0);
      row[w] = 1.0;
      lp.AddLessEqual(std::move(row), bound);
    }
    const LpResult res = SolveLp(lp);
    // A region may lie entirely outside the box; it offers no candidate.
    if (res.status == LpStatus::kInfeasible) continue;
    if (!res.optimal()) throw std::logic_error("region LP is unbounded");
    ContractCandidate c{d, res.x, Dot(anchor, rewards) + res.value};
    result.candidates.push_back(std::move(c));
  }
  if (result.candidates.empty()) {
    throw std::logic_error("no region of the cover meets the payment box");
  }
  auto best = result.candidates.begin();
  for (auto it = result.candidates.begin(); it != result.candidates.end();
       ++it) {
    if (it->empirical_value > best->empirical_value) best = it;
  }
  result.selected = *best;
  result.reward_weight = std::min(1.0, std::sqrt(mix));
  const double lambda = result.reward_weight;
  result.contract.resize(m);
  for (std::size_t w = 0; w < m; ++w) {
    result.contract[w] =
        (1.0 - lambda) * result.selected.point[w] + lambda * rewards[w];
  }
  return result;
}

double SuboptimalityAudit(const Instance& inst, const Contract& returned,
                          double bound) {
  return SolveOpt(inst, bound).value - PrincipalUtility(inst, returned);
}

}  // namespace contractlearn
