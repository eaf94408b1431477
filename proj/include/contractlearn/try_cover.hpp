#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "contractlearn/cover_state.hpp"
#include "contractlearn/find_hs.hpp"

namespace contractlearn {

// A finished cover: for each discovered meta-action its lower bound L_d (equal
// to its final upper bound U_d) and anchor distribution.
struct Cover {
  std::map<MetaId, PointHull> regions;
  std::map<MetaId, Polytope> upper;
  std::map<MetaId, Vector> anchors;
  ContractSpace space;
};

// Raised when an upper bound becomes empty; carries a textual state dump.
class CoverInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TryCoverStats {
  std::uint64_t oracle_calls = 0;
  std::uint64_t find_hs_calls = 0;
  std::uint64_t cuts = 0;
};

// Called after every vertex visit; used for --trace-cover dumps.
using CoverObserver = std::function<void(const CoverSession&)>;

// One covering attempt over params.space. Returns nullopt when the registry
// changed (bottom); the caller restarts from scratch.
std::optional<Cover> TryCover(MetaActionRegistry& registry, Environment& env,
                              const CoverParams& params,
                              TryCoverStats* stats = nullptr,
                              const CoverObserver& observer = {});

std::string DumpState(const CoverSession& session);

// P_{d_i}(D): contracts of `space` where d_i's anchor minus its cost beats
// every other meta-action's. Ground-truth costs are supplied by the caller.
std::map<MetaId, Polytope> RegionReference(
    const std::map<MetaId, Vector>& anchors,
    const std::map<MetaId, double>& costs, const ContractSpace& space);

}  // namespace contractlearn
