#include "contractlearn/try_cover.hpp"

#include <sstream>

namespace contractlearn {

double TryCoverState::DeltaCost(MetaId i, MetaId j) const {
  auto it = delta_costs.find({i, j});
  return it == delta_costs.end() ? 0.0 : it->second;
}

void TryCoverState::Discover(MetaId d, const Vector& p) {
  PointHull& hull = lower.at(d);
  if (!hull.empty()) return;
  hull.Add(p);
  pending.insert(d);
}

void CoverSession::Reset() {
  state_ = TryCoverState{};
  for (MetaId d : registry_.Ids()) {
    state_.lower.emplace(d, PointHull(params_.space.dimension));
    state_.upper.emplace(d, Polytope(params_.space));
    state_.known[d].insert(d);
  }
}

std::string DumpState(const CoverSession& session) {
  const TryCoverState& s = session.state();
  std::ostringstream os;
  os << "try-cover state (" << s.lower.size() << " metas, pending:";
  for (MetaId d : s.pending) os << ' ' << d;
  os << ")\n";
  for (const auto& [d, hull] : s.lower) {
    os << "  " << d << " anchor "
       << FormatVector(session.registry().Anchor(d)) << "\n    L:";
    for (const auto& g : hull.points()) os << ' ' << FormatVector(g);
    os << "\n    U cuts:";
    for (const auto& c : s.upper.at(d).cuts()) {
      os << ' ' << FormatVector(c.normal) << ">=" << c.offset;
    }
    os << "\n    known:";
    for (MetaId k : s.known.at(d)) os << ' ' << k;
    os << '\n';
  }
  return os.str();
}

namespace {

void Count(TryCoverStats* stats, const CoverSession& session) {
  if (stats) stats->oracle_calls = session.oracle_calls();
}

}  // namespace

std::optional<Cover> TryCover(MetaActionRegistry& registry, Environment& env,
                              const CoverParams& params, TryCoverStats* stats,
                              const CoverObserver& observer) {
  CoverSession session(registry, env, params);
  session.Reset();
  TryCoverState& state = session.state();

  const Contract origin(params.space.dimension, 0.0);
  const OracleAnswer first = session.Oracle(origin);
  Count(stats, session);
  if (!first) return std::nullopt;
  state.Discover(*first, origin);

  while (!state.pending.empty()) {
    const MetaId d_i = *state.pending.begin();
    PointHull& lower = state.lower.at(d_i);
    Polytope& upper = state.upper.at(d_i);
    std::set<MetaId>& known = state.known.at(d_i);
    while (!HullEqualsPolytope(lower, upper)) {
      const std::vector<Vector> vertices = upper.Vertices();
      if (vertices.empty()) {
        throw CoverInconsistency("upper bound of " + std::to_string(d_i.value) +
                                 " became empty\n" + DumpState(session));
      }
      for (const Vector& p : vertices) {
        const OracleAnswer d_j = session.Oracle(p);
        Count(stats, session);
        if (!d_j) return std::nullopt;
        state.Discover(*d_j, p);
        if (known.contains(*d_j)) {
          lower.Add(p);
          if (observer) observer(session);
          continue;
        }
        if (stats) ++stats->find_hs_calls;
        const auto estimate = FindHs(session, d_i, p);
        Count(stats, session);
        if (!estimate) return std::nullopt;
        if (!estimate->separated) {
          lower.Add(p);
          if (observer) observer(session);
          continue;
        }
        const MetaId d_k = estimate->other_meta;
        state.halfspaces[{d_i, d_k}] = estimate->halfspace;
        upper.Intersect(estimate->halfspace);
        known.insert(d_k);
        if (stats) ++stats->cuts;
        if (observer) observer(session);
        // The upper bound changed: restart the vertex loop.
        break;
      }
    }
    state.pending.erase(d_i);
  }

  Cover cover;
  cover.space = params.space;
  for (auto& [d, hull] : state.lower) {
    if (hull.empty()) continue;
    cover.regions.emplace(d, hull);
    cover.upper.emplace(d, state.upper.at(d));
    cover.anchors.emplace(d, registry.Anchor(d));
  }
  return cover;
}

std::map<MetaId, Polytope> RegionReference(
    const std::map<MetaId, Vector>& anchors,
    const std::map<MetaId, double>& costs, const ContractSpace& space) {
  std::map<MetaId, Polytope> regions;
  for (const auto& [i, fi] : anchors) {
    Polytope region(space);
    for (const auto& [j, fj] : anchors) {
      if (j == i) continue;
      Halfspace h;
      h.normal.resize(fi.size());
      for (std::size_t w = 0; w < fi.size(); ++w) h.normal[w] = fi[w] - fj[w];
      h.offset = costs.at(i) - costs.at(j);
      if (h.Degenerate()) {
        // Identical anchors: the comparison reduces to 0 >= offset.
        if (h.offset <= 0.0) continue;
        h.normal.assign(fi.size(), 0.0);
      }
      region.Intersect(std::move(h));
    }
    regions.emplace(i, std::move(region));
  }
  return regions;
}

}  // namespace contractlearn
