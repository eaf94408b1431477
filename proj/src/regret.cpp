#include "contractlearn/regret.hpp"

#include <cmath>
#include <stdexcept>

#include "contractlearn/environment.hpp"
#include "contractlearn/oracle_ref.hpp"

namespace contractlearn {

double RegretRho(std::size_t m, std::size_t n, double bound, double horizon) {
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return std::pow(md, nd / 5.0) * std::pow(bound, 0.6) * md *
         std::pow(nd, 1.6) * std::pow(horizon, -0.2);
}

namespace {

struct HorizonReached {};

// Forwards to a sampled environment while logging u(p) for every round, and
// stops the learner once the horizon is used up.
class HorizonEnvironment : public Environment {
 public:
  HorizonEnvironment(const Instance& inst, std::uint64_t seed,
                     std::uint64_t horizon, std::vector<double>& utilities)
      : inner_(inst, seed), inst_(inst), horizon_(horizon),
        utilities_(utilities) {}

  std::size_t num_outcomes() const override { return inner_.num_outcomes(); }

  std::size_t Commit(const Contract& p) override {
    Charge(p, 1);
    ChargeRounds(1);
    return inner_.Commit(p);
  }

  Vector Observe(const Contract& p, std::size_t q) override {
    Charge(p, q);
    ChargeRounds(q);
    return inner_.Observe(p, q);
  }

 private:
  void Charge(const Contract& p, std::uint64_t q) {
    const std::uint64_t used = utilities_.size();
    const std::uint64_t take = std::min<std::uint64_t>(q, horizon_ - used);
    utilities_.insert(utilities_.end(), take, PrincipalUtility(inst_, p));
    if (take < q) throw HorizonReached{};
  }

  SampledEnvironment inner_;
  const Instance& inst_;
  std::uint64_t horizon_;
  std::vector<double>& utilities_;
};

void FillCurve(RegretRun& run) {
  run.regret_curve.resize(run.per_round_utilities.size());
  double sum_u = 0.0;
  for (std::size_t t = 0; t < run.per_round_utilities.size(); ++t) {
    sum_u += run.per_round_utilities[t];
    run.regret_curve[t] = static_cast<double>(t + 1) * run.opt_value - sum_u;
  }
}

}  // namespace

RegretRun RunRegret(const Instance& inst, std::uint64_t horizon,
                    const RegretOptions& options) {
  RequireValidInstance(inst);
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  RegretRun run;
  run.horizon = horizon;
  run.rho = options.rho.value_or(RegretRho(inst.n_outcomes, inst.n_actions,
                                           options.bound,
                                           static_cast<double>(horizon)));
  // The formula exceeds 1 for short horizons; the learner needs rho < 1.
  run.rho = std::min(run.rho, 0.99);
  run.params = ComputeParams(run.rho, options.delta, options.bound,
                             inst.n_outcomes, inst.n_actions,
                             options.overrides);
  run.params.mix_mode = options.mix_mode;
  run.params.mix_value = options.mix_value;
  run.params.max_rounds = horizon;
  run.opt_value = SolveOpt(inst, options.bound).value;
  run.per_round_utilities.reserve(horizon);

  HorizonEnvironment env(inst, options.seed, horizon, run.per_round_utilities);
  try {
    LearnResult learned = DiscoverAndCover(env, inst.rewards, run.params);
    run.final_contract = learned.contract;
    run.exploration_rounds = run.per_round_utilities.size();
    const double u = PrincipalUtility(inst, run.final_contract);
    run.per_round_utilities.resize(horizon, u);
  } catch (const HorizonReached&) {
    run.all_exploration = true;
    run.exploration_rounds = horizon;
  } catch (const RoundBudgetExceeded&) {
    run.all_exploration = true;
    run.exploration_rounds = run.per_round_utilities.size();
    // The learner stopped between attempts; nothing better is known, so the
    // remaining rounds keep the null contract.
    const Contract zero(inst.n_outcomes, 0.0);
    run.per_round_utilities.resize(horizon, PrincipalUtility(inst, zero));
  }
  FillCurve(run);
  return run;
}

RegretRun RunGridBaseline(const Instance& inst, std::uint64_t horizon,
                          std::uint64_t exploration_rounds, double step,
                          const RegretOptions& options) {
  RequireValidInstance(inst);
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const std::size_t m = inst.n_outcomes;
  std::vector<double> axis;
  for (double v = 0.0; v <= options.bound + 1e-12; v += step) axis.push_back(v);
  std::vector<Contract> grid;
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    Contract p(m);
    for (std::size_t w = 0; w < m; ++w) p[w] = axis[idx[w]];
    grid.push_back(std::move(p));
    std::size_t w = 0;
    while (w < m && ++idx[w] == axis.size()) idx[w++] = 0;
    if (w == m) break;
  }
  RegretRun run;
  run.horizon = horizon;
  run.opt_value = SolveOpt(inst, options.bound).value;
  const std::uint64_t budget = std::min(exploration_rounds, horizon);
  const std::uint64_t per_point = budget / grid.size();
  SampledEnvironment env(inst, options.seed);
  std::size_t best = 0;
  double best_estimate = -INFINITY;
  for (std::size_t g = 0; g < grid.size() && per_point > 0; ++g) {
    const Vector freq = env.Observe(grid[g], per_point);
    double estimate = 0.0;
    for (std::size_t w = 0; w < m; ++w) {
      estimate += freq[w] * (inst.rewards[w] - grid[g][w]);
    }
    run.per_round_utilities.insert(run.per_round_utilities.end(), per_point,
                                   PrincipalUtility(inst, grid[g]));
    if (estimate > best_estimate) {
      best_estimate = estimate;
      best = g;
    }
  }
  run.exploration_rounds = run.per_round_utilities.size();
  run.final_contract = grid[best];
  run.per_round_utilities.resize(horizon,
                                 PrincipalUtility(inst, run.final_contract));
  FillCurve(run);
  return run;
}

double LogLogSlope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope needs two or more paired points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("log-log slope needs positive values");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace contractlearn
