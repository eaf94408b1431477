#pragma once

// Ground-truth checks that need the hidden instance. The learner never calls
// these; tests, the acceptance suite and `contractlearn audit` do.

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "contractlearn/action_oracle.hpp"
#include "contractlearn/geometry.hpp"
#include "contractlearn/model.hpp"
#include "contractlearn/try_cover.hpp"

namespace contractlearn {

// Uniform sample from a contract space (simplex or box).
Vector SampleContractSpace(std::mt19937_64& rng, const ContractSpace& space);

// Random convex combination of the hull's generators.
Vector SampleInHull(std::mt19937_64& rng, const PointHull& hull);

// True iff some p in `space` makes `action` weakly optimal for the agent.
bool Inducible(const Instance& inst, std::size_t action,
               const ContractSpace& space);

// Actions within 5*eps*n (L-inf) of `anchor` that are inducible in `space`.
std::set<std::size_t> AssociatedActions(const Instance& inst,
                                        const Vector& anchor, double eps,
                                        std::size_t n,
                                        const ContractSpace& space);

// Largest L-inf error of any logged oracle estimate against the exact
// distribution of the best response at its contract.
double MaxEstimateError(const Instance& inst,
                        const MetaActionRegistry& registry);

// Every logged estimate was within eps of the truth.
bool CleanEventHeld(const Instance& inst, const MetaActionRegistry& registry,
                    double eps);

// Number of `samples` uniform points of the cover's space that lie in no
// region hull (tolerance `tol`).
std::size_t CoverMisses(const Cover& cover, std::size_t samples,
                        std::uint64_t seed, double tol = 1e-6);

// max_a' [F_a' . p - c_a'] - (F_a . p - c_a)
double AgentDeficit(const Instance& inst, std::size_t action,
                    const Vector& p);

}  // namespace contractlearn
