#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppls/problem.hpp"

namespace ppls {

/// 0/1 decision vector.
using BitString = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

struct MubqpMetadata {
  double density = 1.0;
  double correlation = 0.0;
  std::uint64_t seed = 0;
};

/// Multiobjective unconstrained binary quadratic program:
///   maximize f_k(x) = x^T Q_k x,  x in {0,1}^n.
class MubqpInstance {
 public:
  using Genotype = BitString;
  using Move = std::size_t;  // index of the bit to flip

  using Metadata = MubqpMetadata;

  MubqpInstance(std::vector<Eigen::MatrixXd> q, Metadata meta = {});

  int size() const { return n_; }
  int objectives() const { return static_cast<int>(q_.size()); }
  Orientation orientation() const { return Orientation::maximize; }
  ReferencePolicy reference_policy() const { return ReferencePolicy::zero; }
  std::string kind() const { return "mubqp"; }
  const Metadata& metadata() const { return meta_; }
  const Eigen::MatrixXd& matrix(int k) const { return q_.at(static_cast<std::size_t>(k)); }
  std::size_t nonzeros() const;

  ObjectiveVector evaluate(const BitString& x) const;
  BitString random_solution(Rng& rng) const;

  std::size_t neighborhood_size(const BitString& x) const { return static_cast<std::size_t>(x.size()); }
  Move move_at(const BitString&, std::size_t idx) const { return idx; }
  /// Objectives after flipping bit `i`, in O(n m) from the current ones.
  ObjectiveVector evaluate_move(const BitString& x, const ObjectiveVector& fx, Move i) const;
  BitString apply_move(const BitString& x, Move i) const;

 private:
  void check(const BitString& x) const;

  int n_;
  std::vector<Eigen::MatrixXd> q_;
  std::vector<Eigen::MatrixXd> sym_;  // Q_k + Q_k^T
  Metadata meta_;
};

/// All Hamming-distance-1 neighbors, in index order starting at a random offset.
std::vector<BitString> neighbors_1flip(const BitString& x, Rng& rng);

/// Random instance: each q^k_ij is kept with probability `density` and then
/// drawn uniformly from the integers [-100, 100]. Only correlation 0 is supported.
MubqpInstance generate_mubqp(int n, int m, double density, double correlation, std::uint64_t seed);

/// Sparse text format:
///   MUBQP
///   n <n>
///   m <m>
///   density <d>
///   correlation <c>
///   seed <s>
///   nonzeros <count>
///   <k> <i> <j> <q>      (one line per nonzero, 0-based)
void write_mubqp(std::ostream& out, const MubqpInstance& inst);
MubqpInstance read_mubqp(std::istream& in, const std::string& source = "<stream>");
MubqpInstance load_mubqp(const std::filesystem::path& path);

}  // namespace ppls
