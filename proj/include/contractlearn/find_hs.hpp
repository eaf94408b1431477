#pragma once

#include <optional>

#include "contractlearn/cover_state.hpp"

namespace contractlearn {

// Slack added to every learned halfspace: 18*B*eps*m*n^2 + 2*n*eta*sqrt(m).
double YSlack(double bound, double eps, std::size_t m, std::size_t n,
              double eta);

struct HalfspaceEstimate {
  // False when the search never left the already-separated metas of d_i; no
  // halfspace is produced and the queried contract belongs to d_i's side.
  bool separated = true;
  Halfspace halfspace;
  MetaId other_meta;
  double delta_cost = 0.0;
  // Midpoint of the final bisection segment.
  Vector midpoint;
  // Final segment endpoints (inside / outside d_i's known set).
  Vector inner;
  Vector outer;
};

// Bisects the segment from the first generator of L_{d_i} to `p` until it is
// no longer than eta, then estimates the cost difference against the last
// meta-action seen outside known[d_i] and returns the y-relaxed halfspace in
// which d_i is preferred. Returns nullopt as soon as any oracle call returns
// bottom. Records delta_costs[(d_i, d_k)].
std::optional<HalfspaceEstimate> FindHs(CoverSession& session, MetaId d_i,
                                        const Contract& p);

}  // namespace contractlearn
