#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ppls/core.hpp"
#include "ppls/metrics.hpp"
#include "ppls/mubqp.hpp"

namespace ppls::testing {

inline ObjectiveVector vec(std::initializer_list<double> xs) {
  ObjectiveVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

template <typename G>
std::vector<Solution<G>> solutions_of(const Archive<G>& a) {
  std::vector<Solution<G>> out;
  for (const auto& e : a) out.push_back(e.solution);
  return out;
}

/// Every neighbor of every member is dominated by, or equal to, some member.
template <typename P>
bool pareto_locally_optimal(const P& problem, const std::vector<Solution<typename P::Genotype>>& set) {
  for (const auto& s : set) {
    for (std::size_t i = 0; i < problem.neighborhood_size(s.genotype); ++i) {
      const auto y = problem.apply_move(s.genotype, problem.move_at(s.genotype, i));
      const auto f = problem.evaluate(y);
      bool covered = false;
      for (const auto& t : set) {
        if (weakly_dominates(t.objectives, f)) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
    }
  }
  return true;
}

/// Exact Pareto front of a mUBQP instance by enumeration of all 2^n solutions.
inline std::vector<ObjectiveVector> exact_front(const MubqpInstance& inst) {
  const int n = inst.size();
  std::vector<ObjectiveVector> all;
  all.reserve(std::size_t{1} << n);
  BitString x = BitString::Zero(n);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    for (int i = 0; i < n; ++i) x(i) = static_cast<std::uint8_t>((code >> i) & 1U);
    all.push_back(inst.evaluate(x));
  }
  return nondominated_filter(all);
}

struct MonteCarlo {
  double estimate;
  double standard_error;
};

/// Monte-Carlo hypervolume over the bounding box [reference, max point].
inline MonteCarlo monte_carlo_hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& reference,
                                          std::size_t samples, std::mt19937_64& rng) {
  ObjectiveVector upper = reference;
  for (const auto& p : points) upper = upper.cwiseMax(p);
  const double volume = (upper - reference).prod();
  if (volume <= 0.0) return {0.0, 0.0};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto m = reference.size();
  ObjectiveVector s(m);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < samples; ++t) {
    for (Eigen::Index k = 0; k < m; ++k) s(k) = reference(k) + u(rng) * (upper(k) - reference(k));
    for (const auto& p : points) {
      if ((p.array() >= s.array()).all()) {
        ++hits;
        break;
      }
    }
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  return {volume * frac, volume * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples))};
}

/// Sort-and-sweep staircase area for m = 2.
inline double staircase_2d(std::vector<ObjectiveVector> points, const ObjectiveVector& r) {
  points = nondominated_filter(points);
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a(0) > b(0); });
  double area = 0.0, prev_y = r(1);
  for (const auto& p : points) {
    if (p(0) <= r(0) || p(1) <= prev_y) continue;
    area += (p(0) - r(0)) * (p(1) - prev_y);
    prev_y = p(1);
  }
  return area;
}

}  // namespace ppls::testing
