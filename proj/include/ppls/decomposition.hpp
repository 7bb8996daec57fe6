#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ppls/core.hpp"

namespace ppls {

using WeightVector = Eigen::VectorXd;

/// Floor applied to zero weights inside the Tchebycheff function.
inline constexpr double kWeightFloor = 1e-6;

/// Binomial coefficient C(n, k) for small arguments.
std::uint64_t binomial(unsigned n, unsigned k);

/// All weight vectors with m entries drawn from {0/H, ..., H/H} that sum to
/// one, in lexicographic order. There are C(H+m-1, m-1) of them.
std::vector<WeightVector> generate_weights(int m, int H);

/// Angle in [0, pi] between u and v. Zero-length inputs yield 0.
template <typename DerivedU, typename DerivedV>
double acute_angle(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const double c = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  return std::acos(c);
}

/// Tchebycheff scalarization (to be maximized):
///   min_k (F_k - z*_k) / max(lambda_k, kWeightFloor)
template <typename DerivedF, typename DerivedW, typename DerivedZ>
double tchebycheff(const Eigen::MatrixBase<DerivedF>& f, const Eigen::MatrixBase<DerivedW>& lambda,
                   const Eigen::MatrixBase<DerivedZ>& z_star) {
  if (f.size() != lambda.size() || f.size() != z_star.size()) {
    throw ContractViolation("tchebycheff: length mismatch");
  }
  return ((f - z_star).array() / lambda.array().max(kWeightFloor)).minCoeff();
}

/// Weight vectors plus the shared reference point z*. Immutable once built and
/// safe to share across workers.
class DecompositionScheme {
 public:
  DecompositionScheme(int m, int H, ObjectiveVector z_star);

  int objectives() const { return m_; }
  int granularity() const { return H_; }
  std::size_t size() const { return weights_.size(); }
  const std::vector<WeightVector>& weights() const { return weights_; }
  const WeightVector& weight(std::size_t l) const { return weights_.at(l); }
  const ObjectiveVector& z_star() const { return z_star_; }

  /// 0-based index of the subregion containing f: the weight vector with the
  /// smallest angle to f - z*. Ties go to the smallest index; f == z* maps to 0.
  std::size_t subregion_index(const ObjectiveVector& f) const;

  bool in_subregion(const ObjectiveVector& f, std::size_t l) const { return subregion_index(f) == l; }

  double scalar(const ObjectiveVector& f, std::size_t l) const {
    return tchebycheff(f, weights_[l], z_star_);
  }

 private:
  int m_;
  int H_;
  std::vector<WeightVector> weights_;
  std::vector<WeightVector> unit_weights_;
  ObjectiveVector z_star_;
};

}  // namespace ppls
