#include "ppls/decomposition.hpp"

#include <functional>
#include <string>

namespace ppls {

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<WeightVector> generate_weights(int m, int H) {
  if (m < 2) throw ParameterError("generate_weights: m must be >= 2, got " + std::to_string(m));
  if (H < 1) throw ParameterError("generate_weights: H must be >= 1, got " + std::to_string(H));

  std::vector<WeightVector> out;
  out.reserve(binomial(static_cast<unsigned>(H + m - 1), static_cast<unsigned>(m - 1)));
  std::vector<int> counts(static_cast<std::size_t>(m), 0);

  // Compositions of H into m parts, first component ascending => lexicographic.
  std::function<void(int, int)> fill = [&](int k, int remaining) {
    if (k == m - 1) {
      counts[k] = remaining;
      WeightVector w(m);
      for (int i = 0; i < m; ++i) w[i] = static_cast<double>(counts[i]) / H;
      out.push_back(std::move(w));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[k] = c;
      fill(k + 1, remaining - c);
    }
  };
  fill(0, H);
  return out;
}

DecompositionScheme::DecompositionScheme(int m, int H, ObjectiveVector z_star)
    : m_(m), H_(H), weights_(generate_weights(m, H)), z_star_(std::move(z_star)) {
  if (z_star_.size() != m) throw ContractViolation("DecompositionScheme: z* length differs from m");
  if (!z_star_.allFinite()) throw ContractViolation("DecompositionScheme: z* must be finite");
  unit_weights_.reserve(weights_.size());
  for (const auto& w : weights_) unit_weights_.push_back(w.normalized());
}

std::size_t DecompositionScheme::subregion_index(const ObjectiveVector& f) const {
  if (f.size() != m_) throw ContractViolation("subregion_index: length mismatch");
  const ObjectiveVector d = f - z_star_;
  if (d.isZero(0.0)) return 0;
  // Smallest angle == largest projection onto the unit weight (|d| is shared).
  std::size_t best = 0;
  double best_proj = d.dot(unit_weights_[0]);
  for (std::size_t l = 1; l < unit_weights_.size(); ++l) {
    const double proj = d.dot(unit_weights_[l]);
    if (proj > best_proj) {
      best_proj = proj;
      best = l;
    }
  }
  return best;
}

}  // namespace ppls
