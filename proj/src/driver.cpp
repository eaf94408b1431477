#include "contractlearn/driver.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <limits>

namespace contractlearn {

const char* ToString(MixMode mode) {
  switch (mode) {
    case MixMode::kGamma:
      return "gamma";
    case MixMode::kEps:
      return "eps";
    case MixMode::kValue:
      return "value";
  }
  return "unknown";
}

MixMode ParseMixMode(const std::string& s) {
  if (s == "gamma") return MixMode::kGamma;
  if (s == "eps") return MixMode::kEps;
  if (s == "value") return MixMode::kValue;
  throw std::invalid_argument("unknown mix mode '" + s + "'");
}

double Params::y() const { return YSlack(bound, eps, m, n_bound, eta); }

double Params::gamma() const {
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n_bound);
  return 27.0 * bound * eps * md * nd * nd + 2.0 * nd * eta * std::sqrt(md);
}

double Params::mix() const {
  switch (mix_mode) {
    case MixMode::kGamma:
      return gamma();
    case MixMode::kEps:
      return eps;
    case MixMode::kValue:
      return mix_value;
  }
  return gamma();
}

CoverParams Params::cover_params() const {
  CoverParams cp;
  cp.q = static_cast<std::size_t>(q);
  cp.eps = eps;
  cp.eta = eta;
  cp.y = y();
  cp.space = ContractSpace::Simplex(m, bound);
  return cp;
}

double Binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(out);
}

namespace {

using BigFloat = boost::multiprecision::cpp_dec_float_100;

std::uint64_t HoeffdingRounds(double eps, double alpha, std::size_t m) {
  const double q =
      std::ceil(std::log(2.0 * static_cast<double>(m) / alpha) /
                (2.0 * eps * eps));
  // 2^63 keeps the count clear of every unsigned conversion edge.
  if (!(q < 9.2e18)) {
    BigFloat e(eps);
    BigFloat a(alpha);
    BigFloat exact = boost::multiprecision::ceil(
        boost::multiprecision::log(BigFloat(2 * m) / a) / (2 * e * e));
    throw BudgetOverflow("budget astronomically large: q = " +
                         exact.str(0, std::ios_base::fixed));
  }
  return static_cast<std::uint64_t>(q);
}

}  // namespace

Params ComputeParams(double rho, double delta, double bound, std::size_t m,
                     std::size_t n_bound, const ParamOverrides& overrides) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta in (0,1)");
  }
  if (!(bound >= 1.0)) throw std::invalid_argument("B must be >= 1");
  if (m < 1 || n_bound < 1) throw std::invalid_argument("m, n must be >= 1");
  Params p;
  p.rho = rho;
  p.delta = delta;
  p.bound = bound;
  p.m = m;
  p.n_bound = n_bound;
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n_bound);
  p.eps = overrides.eps.value_or(rho * rho /
                                 (32.0 * 32.0 * bound * md * md * nd * nd));
  p.eta = overrides.eta.value_or(p.eps * std::sqrt(md) * nd / 2.0);
  p.alpha = overrides.alpha.value_or(
      delta / (2.0 * nd * nd * nd *
               (std::log(2.0 * bound * md / p.eta) + Binomial(m + n_bound + 1, m))));
  if (!(p.eps > 0.0) || !(p.eta > 0.0) || !(p.alpha > 0.0)) {
    throw std::invalid_argument("eps, eta and alpha must be positive");
  }
  p.q = overrides.q ? *overrides.q : HoeffdingRounds(p.eps, p.alpha, m);
  if (p.q == 0) throw std::invalid_argument("q must be >= 1");
  return p;
}

LearnResult DiscoverAndCover(Environment& env, const Vector& rewards,
                             const Params& params,
                             MetaActionRegistry* registry,
                             const DriverOptions& options) {
  if (env.num_outcomes() != params.m) {
    throw std::invalid_argument("environment and params disagree on m");
  }
  MetaActionRegistry local;
  MetaActionRegistry& reg = registry ? *registry : local;
  const CoverParams cover_params = params.cover_params();
  LearnResult result;
  std::optional<Cover> cover;
  while (true) {
    TryCoverStats stats;
    cover = TryCover(reg, env, cover_params, &stats, options.observer);
    result.oracle_calls += stats.oracle_calls;
    if (options.on_attempt) options.on_attempt(cover.has_value(), reg);
    if (cover) break;
    ++result.restarts;
    if (env.rounds_used() > params.max_rounds) {
      throw RoundBudgetExceeded(
          "round cap of " + std::to_string(params.max_rounds) +
              " exceeded after " + std::to_string(result.restarts) +
              " restarts",
          env.rounds_used(), result.restarts);
    }
  }
  result.find = FindContract(*cover, rewards, params.bound, params.mix());
  result.contract = result.find.contract;
  result.cover = std::move(*cover);
  result.rounds_used = env.rounds_used();
  result.bot_count = reg.bot_count();
  return result;
}

}  // namespace contractlearn
