#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "contractlearn/environment.hpp"
#include "contractlearn/model.hpp"

namespace contractlearn {

// Identifier of a meta-action. Ids increase monotonically; a merge produces a
// fresh id.
struct MetaId {
  std::uint64_t value = 0;
  auto operator<=>(const MetaId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, MetaId d) {
  return os << 'd' << d.value;
}

// Result of an oracle call: a meta-action, or nullopt for the "registry
// changed" signal (bottom).
using OracleAnswer = std::optional<MetaId>;

// An empirical distribution together with the contract it was estimated at.
struct StoredEstimate {
  Vector distribution;
  Contract contract;
};

struct MetaEntry {
  std::vector<StoredEstimate> estimates;
  Vector anchor;
};

// One Query/Classify call, kept for white-box checks.
struct QueryRecord {
  Contract contract;
  Vector estimate;
  OracleAnswer answer;
};

// The learner's dictionary of discovered meta-actions and the empirical
// distributions mapped to each of them.
class MetaActionRegistry {
 public:
  // Commits `p` for `q` rounds, then classifies the empirical distribution.
  OracleAnswer Query(Environment& env, const Contract& p, std::size_t q,
                     double eps);

  // Phase two only: compares `estimate` against every stored distribution.
  // If exactly one meta-action has an entry within 2*eps (L-inf) the estimate
  // joins it. Otherwise all matching meta-actions (possibly none) are
  // replaced by a fresh one anchored at `estimate`, and bottom is returned.
  OracleAnswer Classify(const Contract& p, Vector estimate, double eps);

  // Inserts a meta-action directly (restoring state, tests). The first
  // distribution becomes the anchor.
  MetaId Seed(std::vector<Vector> distributions);

  bool Contains(MetaId d) const { return metas_.contains(d); }
  const MetaEntry& Entry(MetaId d) const;
  const Vector& Anchor(MetaId d) const { return Entry(d).anchor; }
  const std::map<MetaId, MetaEntry>& metas() const { return metas_; }
  std::vector<MetaId> Ids() const;
  std::size_t size() const { return metas_.size(); }

  std::uint64_t bot_count() const { return bot_count_; }
  std::uint64_t query_count() const { return log_.size(); }
  const std::vector<QueryRecord>& log() const { return log_; }

 private:
  MetaId Fresh() { return MetaId{next_id_++}; }

  std::map<MetaId, MetaEntry> metas_;
  std::uint64_t next_id_ = 0;
  std::uint64_t bot_count_ = 0;
  std::vector<QueryRecord> log_;
};

// Ground-truth cost of a meta-action: the minimum true cost over the actions
// that the environment actually played at the contracts whose estimates are
// stored under `d`. Needs a tracing SampledEnvironment.
double MetaCostEstimate(const MetaActionRegistry& registry,
                        const SampledEnvironment& env, MetaId d);

}  // namespace contractlearn
