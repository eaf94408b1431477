#include "contractlearn/find_hs.hpp"

#include <cmath>
#include <stdexcept>

namespace contractlearn {

double YSlack(double bound, double eps, std::size_t m, std::size_t n,
              double eta) {
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return 18.0 * bound * eps * md * nd * nd + 2.0 * nd * eta * std::sqrt(md);
}

std::optional<HalfspaceEstimate> FindHs(CoverSession& session, MetaId d_i,
                                        const Contract& p) {
  TryCoverState& state = session.state();
  const CoverParams& params = session.params();
  const PointHull& lower = state.lower.at(d_i);
  if (lower.empty()) throw std::logic_error("FindHs needs a non-empty L_{d_i}");
  const std::set<MetaId>& known = state.known.at(d_i);

  Vector p1 = lower.points().front();
  Vector p2 = p;
  OracleAnswer d_j = session.Oracle(p1);
  if (!d_j) return std::nullopt;
  OracleAnswer d_k = session.Oracle(p2);
  if (!d_k) return std::nullopt;

  while (L2Distance(p1, p2) > params.eta) {
    Vector mid = Midpoint(p1, p2);
    const OracleAnswer d = session.Oracle(mid);
    if (!d) return std::nullopt;
    state.Discover(*d, mid);
    if (known.contains(*d)) {
      p1 = std::move(mid);
      d_j = d;
    } else {
      p2 = std::move(mid);
      d_k = d;
    }
  }

  HalfspaceEstimate out;
  out.midpoint = Midpoint(p1, p2);
  out.inner = p1;
  out.outer = p2;
  out.other_meta = *d_k;
  if (known.contains(*d_k)) {
    out.separated = false;
    return out;
  }

  const Vector& anchor_i = session.registry().Anchor(d_i);
  const Vector& anchor_j = session.registry().Anchor(*d_j);
  const Vector& anchor_k = session.registry().Anchor(*d_k);
  const std::size_t m = anchor_i.size();
  double gap = 0.0;
  for (std::size_t w = 0; w < m; ++w) {
    gap += (anchor_j[w] - anchor_k[w]) * out.midpoint[w];
  }
  out.delta_cost = (*d_j == d_i) ? gap : state.DeltaCost(d_i, *d_j) + gap;
  state.delta_costs[{d_i, *d_k}] = out.delta_cost;

  out.halfspace.normal.resize(m);
  for (std::size_t w = 0; w < m; ++w) {
    out.halfspace.normal[w] = anchor_i[w] - anchor_k[w];
  }
  out.halfspace.offset = out.delta_cost - params.y;
  if (out.halfspace.Degenerate()) {
    throw std::logic_error("Find-HS produced a zero normal between d" +
                           std::to_string(d_i.value) + " and d" +
                           std::to_string(d_k->value));
  }
  return out;
}

}  // namespace contractlearn
