#include "contractlearn/action_oracle.hpp"

#include <limits>
#include <stdexcept>

#include "contractlearn/geometry.hpp"

namespace contractlearn {

OracleAnswer MetaActionRegistry::Query(Environment& env, const Contract& p,
                                       std::size_t q, double eps) {
  if (q == 0) throw std::invalid_argument("oracle needs q >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("oracle needs eps > 0");
  return Classify(p, env.Observe(p, q), eps);
}

OracleAnswer MetaActionRegistry::Classify(const Contract& p, Vector estimate,
                                          double eps) {
  std::vector<MetaId> matches;
  for (const auto& [id, entry] : metas_) {
    for (const auto& stored : entry.estimates) {
      if (LInfDistance(stored.distribution, estimate) <= 2.0 * eps) {
        matches.push_back(id);
        break;
      }
    }
  }
  if (matches.size() == 1) {
    const MetaId d = matches.front();
    metas_.at(d).estimates.push_back(StoredEstimate{estimate, p});
    log_.push_back(QueryRecord{p, std::move(estimate), d});
    return d;
  }
  MetaEntry merged;
  for (MetaId d : matches) {
    auto node = metas_.extract(d);
    for (auto& e : node.mapped().estimates) {
      merged.estimates.push_back(std::move(e));
    }
  }
  merged.estimates.push_back(StoredEstimate{estimate, p});
  merged.anchor = estimate;
  metas_.emplace(Fresh(), std::move(merged));
  ++bot_count_;
  log_.push_back(QueryRecord{p, std::move(estimate), std::nullopt});
  return std::nullopt;
}

MetaId MetaActionRegistry::Seed(std::vector<Vector> distributions) {
  if (distributions.empty()) {
    throw std::invalid_argument("a meta-action needs a distribution");
  }
  MetaEntry entry;
  entry.anchor = distributions.front();
  for (auto& f : distributions) {
    entry.estimates.push_back(StoredEstimate{std::move(f), Contract{}});
  }
  const MetaId id = Fresh();
  metas_.emplace(id, std::move(entry));
  return id;
}

const MetaEntry& MetaActionRegistry::Entry(MetaId d) const {
  auto it = metas_.find(d);
  if (it == metas_.end()) {
    throw std::out_of_range("unknown meta-action d" + std::to_string(d.value));
  }
  return it->second;
}

std::vector<MetaId> MetaActionRegistry::Ids() const {
  std::vector<MetaId> ids;
  ids.reserve(metas_.size());
  for (const auto& [id, entry] : metas_) ids.push_back(id);
  return ids;
}

double MetaCostEstimate(const MetaActionRegistry& registry,
                        const SampledEnvironment& env, MetaId d) {
  if (!env.tracing()) {
    throw std::logic_error("meta-action cost needs a tracing environment");
  }
  std::vector<Contract> contracts;
  for (const auto& e : registry.Entry(d).estimates) {
    contracts.push_back(e.contract);
  }
  const auto actions = env.TrueActionsFor(contracts);
  if (actions.empty()) {
    throw std::logic_error("no recorded actions for meta-action");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : actions) best = std::min(best, env.instance().costs[a]);
  return best;
}

}  // namespace contractlearn
