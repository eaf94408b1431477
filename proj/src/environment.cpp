#include "contractlearn/environment.hpp"

#include <algorithm>
#include <stdexcept>

namespace contractlearn {

double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vector Environment::Observe(const Contract& p, std::size_t q) {
  if (q == 0) throw std::invalid_argument("Observe needs q >= 1");
  std::vector<std::uint64_t> counts(num_outcomes(), 0);
  for (std::size_t t = 0; t < q; ++t) ++counts[Commit(p)];
  Vector freq(counts.size());
  for (std::size_t w = 0; w < counts.size(); ++w) {
    freq[w] = static_cast<double>(counts[w]) / static_cast<double>(q);
  }
  return freq;
}

SampledEnvironment::SampledEnvironment(Instance instance, std::uint64_t seed,
                                       bool tracing)
    : instance_(std::move(instance)), rng_(seed), tracing_(tracing) {
  RequireValidInstance(instance_);
}

std::size_t SampledEnvironment::Sample(std::size_t action) {
  const Vector& f = instance_.distributions[action];
  const double u = UniformUnit(rng_);
  double cumulative = 0.0;
  for (std::size_t w = 0; w + 1 < f.size(); ++w) {
    cumulative += f[w];
    if (u < cumulative) return w;
  }
  // Final bucket absorbs rounding slack; skip trailing zero-mass outcomes.
  std::size_t last = f.size() - 1;
  while (last > 0 && f[last] == 0.0) --last;
  return last;
}

void SampledEnvironment::Record(const Contract& p, std::size_t action,
                                std::uint64_t rounds) {
  if (!tracing_) return;
  if (!trace_.empty() && trace_.back().action == action &&
      trace_.back().contract == p) {
    trace_.back().rounds += rounds;
    return;
  }
  trace_.push_back(TraceEntry{p, action, rounds});
}

std::size_t SampledEnvironment::Commit(const Contract& p) {
  if (p.size() != instance_.n_outcomes) {
    throw std::invalid_argument("contract dimension mismatch");
  }
  const std::size_t action = BestResponse(instance_, p);
  ChargeRounds(1);
  Record(p, action, 1);
  return Sample(action);
}

Vector SampledEnvironment::Observe(const Contract& p, std::size_t q) {
  if (q == 0) throw std::invalid_argument("Observe needs q >= 1");
  if (p.size() != instance_.n_outcomes) {
    throw std::invalid_argument("contract dimension mismatch");
  }
  // Same stream as q single commits; the best response is computed once.
  const std::size_t action = BestResponse(instance_, p);
  std::vector<std::uint64_t> counts(instance_.n_outcomes, 0);
  if (q <= kDirectSampleLimit) {
    for (std::size_t t = 0; t < q; ++t) ++counts[Sample(action)];
  } else {
    // Multinomial counts as a chain of conditional binomials.
    const Vector& f = instance_.distributions[action];
    std::uint64_t left = q;
    double mass = 1.0;
    for (std::size_t w = 0; w + 1 < f.size() && left > 0; ++w) {
      const double share = mass > 0.0 ? std::clamp(f[w] / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::uint64_t> draw(left, share);
      counts[w] = draw(rng_);
      left -= counts[w];
      mass -= f[w];
    }
    counts.back() += left;
  }
  ChargeRounds(q);
  Record(p, action, q);
  Vector freq(counts.size());
  for (std::size_t w = 0; w < counts.size(); ++w) {
    freq[w] = static_cast<double>(counts[w]) / static_cast<double>(q);
  }
  return freq;
}

const std::vector<TraceEntry>& SampledEnvironment::trace() const {
  if (!tracing_) throw std::logic_error("tracing is disabled");
  return trace_;
}

std::uint64_t SampledEnvironment::trace_rounds() const {
  std::uint64_t total = 0;
  for (const auto& e : trace()) total += e.rounds;
  return total;
}

std::set<std::size_t> SampledEnvironment::TrueActionsFor(
    std::span<const Contract> contracts) const {
  const auto& entries = trace();
  std::set<std::size_t> actions;
  for (const auto& c : contracts) {
    for (const auto& e : entries) {
      if (e.contract == c) actions.insert(e.action);
    }
  }
  return actions;
}

ExactEnvironment::ExactEnvironment(Instance instance, double perturbation,
                                   std::uint64_t seed)
    : instance_(std::move(instance)), perturbation_(perturbation), rng_(seed) {
  RequireValidInstance(instance_);
  if (perturbation_ < 0.0) {
    throw std::invalid_argument("perturbation must be non-negative");
  }
}

std::size_t ExactEnvironment::Commit(const Contract& p) {
  if (p.size() != instance_.n_outcomes) {
    throw std::invalid_argument("contract dimension mismatch");
  }
  const std::size_t action = BestResponse(instance_, p);
  ChargeRounds(1);
  // Deterministic stand-in for a sample: the most likely outcome.
  const Vector& f = instance_.distributions[action];
  return static_cast<std::size_t>(std::max_element(f.begin(), f.end()) -
                                  f.begin());
}

Vector ExactEnvironment::Observe(const Contract& p, std::size_t q) {
  if (q == 0) throw std::invalid_argument("Observe needs q >= 1");
  if (p.size() != instance_.n_outcomes) {
    throw std::invalid_argument("contract dimension mismatch");
  }
  ++observe_calls_;
  ChargeRounds(q);
  Vector f = instance_.distributions[BestResponse(instance_, p)];
  if (perturbation_ == 0.0 || f.size() < 2) return f;
  // Move mass between two random outcomes, keeping entries in [0,1].
  const std::size_t m = f.size();
  const std::size_t from = static_cast<std::size_t>(UniformUnit(rng_) * m);
  std::size_t to = static_cast<std::size_t>(UniformUnit(rng_) * (m - 1));
  if (to >= from) ++to;
  const double shift =
      std::min({perturbation_ * UniformUnit(rng_), f[from], 1.0 - f[to]});
  f[from] -= shift;
  f[to] += shift;
  return f;
}

}  // namespace contractlearn
