#pragma once

#include <vector>

#include "contractlearn/model.hpp"
#include "contractlearn/try_cover.hpp"

namespace contractlearn {

struct ContractCandidate {
  MetaId meta;
  Contract point;
  // Principal utility of `point` under the region's anchor distribution.
  double empirical_value = 0.0;
};

struct FindContractResult {
  Contract contract;
  ContractCandidate selected;
  // One per region whose LP over the box was feasible, by ascending meta id.
  std::vector<ContractCandidate> candidates;
  // Weight actually placed on the reward vector.
  double reward_weight = 0.0;
};

// Maximizes the anchor-estimated principal utility over U_d ∩ [0,B]^m for
// every region, keeps the best (lowest id on ties), and returns
// (1 - sqrt(mix)) p* + sqrt(mix) r. sqrt(mix) is capped at 1.
FindContractResult FindContract(const Cover& cover, const Vector& rewards,
                                double bound, double mix);

// max_{p in [0,B]^m} u(p) - u(returned), via the exact per-action LP solver.
double SuboptimalityAudit(const Instance& inst, const Contract& returned,
                          double bound);

}  // namespace contractlearn
