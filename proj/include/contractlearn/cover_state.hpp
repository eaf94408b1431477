#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <utility>

#include "contractlearn/action_oracle.hpp"
#include "contractlearn/environment.hpp"
#include "contractlearn/geometry.hpp"

namespace contractlearn {

// Parameters fixed for one covering attempt.
struct CoverParams {
  std::size_t q = 1;
  double eps = 0.01;
  double eta = 1e-3;
  // Relaxation added to every learned halfspace.
  double y = 0.0;
  ContractSpace space;
};

using MetaPair = std::pair<MetaId, MetaId>;

// Working state of one covering attempt (lower/upper bounds per meta-action,
// learned halfspaces and cost differences, pending set).
struct TryCoverState {
  std::map<MetaId, PointHull> lower;
  std::map<MetaId, Polytope> upper;
  // Metas whose halfspace against the key is known; always holds the key.
  std::map<MetaId, std::set<MetaId>> known;
  std::map<MetaPair, Halfspace> halfspaces;
  // Missing entries read as 0.
  std::map<MetaPair, double> delta_costs;
  std::set<MetaId> pending;

  double DeltaCost(MetaId i, MetaId j) const;
  // Seeds L_d = {p} and marks d pending when L_d is still empty.
  void Discover(MetaId d, const Vector& p);
};

// Everything the covering procedures touch: the registry, the environment and
// the mutable state. Counts oracle calls.
class CoverSession {
 public:
  CoverSession(MetaActionRegistry& registry, Environment& env,
               const CoverParams& params)
      : registry_(registry), env_(env), params_(params) {}

  OracleAnswer Oracle(const Contract& p) {
    ++oracle_calls_;
    return registry_.Query(env_, p, params_.q, params_.eps);
  }

  MetaActionRegistry& registry() { return registry_; }
  const MetaActionRegistry& registry() const { return registry_; }
  Environment& env() { return env_; }
  const CoverParams& params() const { return params_; }
  TryCoverState& state() { return state_; }
  const TryCoverState& state() const { return state_; }
  std::uint64_t oracle_calls() const { return oracle_calls_; }

  // Fresh state for the current registry: U_d = base space, L_d empty,
  // known[d] = {d}.
  void Reset();

 private:
  MetaActionRegistry& registry_;
  Environment& env_;
  const CoverParams& params_;
  TryCoverState state_;
  std::uint64_t oracle_calls_ = 0;
};

}  // namespace contractlearn
