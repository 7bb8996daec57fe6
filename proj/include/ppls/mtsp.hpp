#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppls/problem.hpp"

namespace ppls {

/// Visiting order of the cities 0..n-1 (closed cycle).
using Tour = std::vector<int>;

/// Single-objective symmetric distance matrix read from a TSPLIB file.
struct TsplibMatrix {
  std::string name;
  Eigen::MatrixXd distances;
};

/// Parses the TSPLIB subset NAME / TYPE: TSP / DIMENSION / EDGE_WEIGHT_TYPE: EUC_2D /
/// NODE_COORD_SECTION / EOF. Distances follow the EUC_2D rule nint(sqrt(dx^2 + dy^2)).
TsplibMatrix parse_tsplib(std::istream& in, const std::string& source = "<stream>");
TsplibMatrix parse_tsplib(const std::filesystem::path& path);

/// 2-Opt move: reverse tour positions [first, last].
struct TwoOptMove {
  int first = 0;
  int last = 0;
  friend bool operator==(const TwoOptMove&, const TwoOptMove&) = default;
};

/// Multiobjective symmetric TSP: minimize the tour length under each of m
/// cost matrices. Objectives are exposed negated (maximization).
class MtspInstance {
 public:
  using Genotype = Tour;
  using Move = TwoOptMove;

  MtspInstance(std::vector<Eigen::MatrixXd> costs, std::vector<std::string> sources = {});

  int size() const { return n_; }
  int objectives() const { return static_cast<int>(costs_.size()); }
  Orientation orientation() const { return Orientation::minimize; }
  ReferencePolicy reference_policy() const { return ReferencePolicy::initial_solution; }
  std::string kind() const { return "mtsp"; }
  const std::vector<std::string>& sources() const { return sources_; }
  const Eigen::MatrixXd& costs(int k) const { return costs_.at(static_cast<std::size_t>(k)); }

  /// Tour costs per objective, un-negated.
  ObjectiveVector tour_costs(const Tour& t) const;
  ObjectiveVector evaluate(const Tour& t) const { return -tour_costs(t); }
  Tour random_solution(Rng& rng) const;

  /// n(n-3)/2 distinct 2-Opt neighbors for n >= 4, none otherwise.
  std::size_t neighborhood_size(const Tour&) const { return moves_.size(); }
  Move move_at(const Tour&, std::size_t idx) const { return moves_[idx]; }
  ObjectiveVector evaluate_move(const Tour& t, const ObjectiveVector& ft, Move mv) const;
  Tour apply_move(const Tour& t, Move mv) const;

  /// Throws ContractViolation unless t is a permutation of 0..n-1.
  void check(const Tour& t) const;

 private:
  int n_;
  std::vector<Eigen::MatrixXd> costs_;
  std::vector<std::string> sources_;
  std::vector<TwoOptMove> moves_;
};

/// Stacks the TSPLIB files into one instance, one objective per file.
MtspInstance combine_mtsp(const std::vector<std::filesystem::path>& paths);
MtspInstance combine_mtsp(const std::vector<TsplibMatrix>& matrices);

/// All 2-Opt neighbors, enumerated from a random starting offset.
std::vector<Tour> neighbors_2opt(const Tour& x, Rng& rng);

}  // namespace ppls
