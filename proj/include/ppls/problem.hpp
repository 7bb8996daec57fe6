#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "ppls/core.hpp"

namespace ppls {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` of a run seeded with `base_seed`.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix64(mix64(base_seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// How a run chooses the reference point z*.
enum class ReferencePolicy {
  zero,             // z* = 0 (mUBQP)
  initial_solution  // z* = objectives of the initial solution (mTSP)
};

/// A multiobjective combinatorial problem seen through a move-based
/// neighborhood. Objectives are exposed in maximization orientation.
///
/// Neighbors are addressed by an index in [0, neighborhood_size(x)); the move
/// at an index can be evaluated incrementally before it is materialized.
template <typename P>
concept Problem = requires(const P& p, const typename P::Genotype& x, const ObjectiveVector& fx,
                           const typename P::Move& mv, std::size_t idx, Rng& rng) {
  typename P::Genotype;
  typename P::Move;
  { p.objectives() } -> std::convertible_to<int>;
  { p.orientation() } -> std::same_as<Orientation>;
  { p.reference_policy() } -> std::same_as<ReferencePolicy>;
  { p.kind() } -> std::convertible_to<std::string>;
  { p.evaluate(x) } -> std::same_as<ObjectiveVector>;
  { p.random_solution(rng) } -> std::same_as<typename P::Genotype>;
  { p.neighborhood_size(x) } -> std::convertible_to<std::size_t>;
  { p.move_at(x, idx) } -> std::same_as<typename P::Move>;
  { p.evaluate_move(x, fx, mv) } -> std::same_as<ObjectiveVector>;
  { p.apply_move(x, mv) } -> std::same_as<typename P::Genotype>;
};

}  // namespace ppls
