#include "contractlearn/oracle_ref.hpp"

#include <cmath>
#include <stdexcept>

#include "contractlearn/lp.hpp"

namespace contractlearn {

OptResult SolveOpt(const Instance& inst, double bound) {
  RequireValidInstance(inst);
  if (!(bound > 0.0)) throw std::invalid_argument("bound must be positive");
  const std::size_t m = inst.n_outcomes;
  OptResult best;
  bool found = false;
  for (std::size_t a = 0; a < inst.n_actions; ++a) {
    const Vector& fa = inst.distributions[a];
    LinearProgram lp;
    lp.objective.resize(m);
    for (std::size_t w = 0; w < m; ++w) lp.objective[w] = -fa[w];
    // Agent weakly prefers a: (F_b - F_a) . p <= c_b - c_a for every b.
    for (std::size_t b = 0; b < inst.n_actions; ++b) {
      if (b == a) continue;
      Vector row(m);
      for (std::size_t w = 0; w < m; ++w) {
        row[w] = inst.distributions[b][w] - fa[w];
      }
      lp.AddLessEqual(std::move(row), inst.costs[b] - inst.costs[a]);
    }
    for (std::size_t w = 0; w < m; ++w) {
      Vector row(m, 0.0);
      row[w] = 1.0;
      lp.AddLessEqual(std::move(row), bound);
    }
    const LpResult res = SolveLp(lp);
    if (!res.optimal()) continue;
    // Realized utility decides; the optimizer sits on indifference
    // boundaries where the principal-favoring tie rule applies.
    const double realized = PrincipalUtility(inst, res.x);
    if (!found || realized > best.value) {
      best.value = realized;
      best.contract = res.x;
      best.inducing_action = BestResponse(inst, res.x);
      found = true;
    }
  }
  if (!found) throw std::logic_error("no implementable action found");
  return best;
}

GridResult GridOpt(const Instance& inst, double bound, double step,
                   std::uint64_t max_points) {
  RequireValidInstance(inst);
  if (!(step > 0.0) || !(bound > 0.0)) {
    throw std::invalid_argument("grid needs positive step and bound");
  }
  const std::size_t m = inst.n_outcomes;
  std::vector<double> axis;
  const auto steps = static_cast<std::uint64_t>(std::floor(bound / step + 1e-9));
  for (std::uint64_t k = 0; k <= steps; ++k) {
    axis.push_back(std::min(bound, static_cast<double>(k) * step));
  }
  if (bound - axis.back() > 1e-12) axis.push_back(bound);
  const double total = std::pow(static_cast<double>(axis.size()),
                                static_cast<double>(m));
  if (total > static_cast<double>(max_points)) {
    throw std::invalid_argument("grid of " + std::to_string(total) +
                                " points exceeds the budget");
  }
  GridResult result;
  std::vector<std::size_t> idx(m, 0);
  Contract p(m, 0.0);
  bool first = true;
  while (true) {
    for (std::size_t w = 0; w < m; ++w) p[w] = axis[idx[w]];
    const double u = PrincipalUtility(inst, p);
    ++result.points;
    if (first || u > result.value) {
      result.value = u;
      result.contract = p;
      first = false;
    }
    std::size_t w = 0;
    while (w < m && ++idx[w] == axis.size()) idx[w++] = 0;
    if (w == m) break;
  }
  return result;
}

}  // namespace contractlearn
