#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "contractlearn/model.hpp"

namespace contractlearn {

// One run of consecutive identical commits, as recorded in the trace.
struct TraceEntry {
  Contract contract;
  std::size_t action = 0;
  std::uint64_t rounds = 0;
};

// The learner's only channel to the ground truth: commit a contract, observe
// outcomes. Implementations own the hidden instance.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::size_t num_outcomes() const = 0;

  // Commits `p` for one round and returns the sampled outcome index.
  virtual std::size_t Commit(const Contract& p) = 0;

  // Commits `p` for `q` rounds and returns the empirical outcome
  // distribution I_w / q.
  virtual Vector Observe(const Contract& p, std::size_t q);

  std::uint64_t rounds_used() const { return rounds_used_; }

 protected:
  void ChargeRounds(std::uint64_t q) { rounds_used_ += q; }

 private:
  std::uint64_t rounds_used_ = 0;
};

// Simulated agent that best-responds under a hidden instance and samples
// outcomes by inverse CDF from a seeded 64-bit Mersenne Twister.
class SampledEnvironment : public Environment {
 public:
  SampledEnvironment(Instance instance, std::uint64_t seed,
                     bool tracing = false);

  std::size_t num_outcomes() const override { return instance_.n_outcomes; }
  std::size_t Commit(const Contract& p) override;
  // Up to kDirectSampleLimit samples this draws the same stream as q calls
  // to Commit; larger q draws the multinomial counts directly.
  Vector Observe(const Contract& p, std::size_t q) override;

  static constexpr std::size_t kDirectSampleLimit = std::size_t{1} << 20;

  const Instance& instance() const { return instance_; }
  bool tracing() const { return tracing_; }
  // Run-length encoded; the round counts sum to rounds_used().
  const std::vector<TraceEntry>& trace() const;
  std::uint64_t trace_rounds() const;

  // Distinct best responses recorded for the given contracts (exact match).
  std::set<std::size_t> TrueActionsFor(
      std::span<const Contract> contracts) const;

 private:
  std::size_t Sample(std::size_t action);
  void Record(const Contract& p, std::size_t action, std::uint64_t rounds);

  Instance instance_;
  std::mt19937_64 rng_;
  bool tracing_;
  std::vector<TraceEntry> trace_;
};

// White-box environment: Observe returns the exact distribution of the best
// response, optionally perturbed by at most `perturbation` in L-inf (total
// mass preserved). Rounds are charged as if q samples were drawn.
class ExactEnvironment : public Environment {
 public:
  explicit ExactEnvironment(Instance instance, double perturbation = 0.0,
                            std::uint64_t seed = 0);

  std::size_t num_outcomes() const override { return instance_.n_outcomes; }
  std::size_t Commit(const Contract& p) override;
  // Up to kDirectSampleLimit samples this draws the same stream as q calls
  // to Commit; larger q draws the multinomial counts directly.
  Vector Observe(const Contract& p, std::size_t q) override;

  static constexpr std::size_t kDirectSampleLimit = std::size_t{1} << 20;

  const Instance& instance() const { return instance_; }
  std::uint64_t observe_calls() const { return observe_calls_; }

 private:
  Instance instance_;
  double perturbation_;
  std::mt19937_64 rng_;
  std::uint64_t observe_calls_ = 0;
};

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double UniformUnit(std::mt19937_64& rng);

}  // namespace contractlearn
