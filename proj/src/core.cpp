#include "ppls/core.hpp"

#include <array>
#include <charconv>
#include <numeric>

namespace ppls {

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

bool lexicographic_less(const ObjectiveVector& a, const ObjectiveVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::size_t> nondominated_indices(const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  // Descending lexicographic order: a point can only be dominated by one
  // that precedes it, so a single pass against the kept set suffices.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return lexicographic_less(points[j], points[i]);
  });

  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    const auto& p = points[i];
    bool drop = std::any_of(kept.begin(), kept.end(),
                            [&](std::size_t k) { return weakly_dominates(points[k], p); });
    if (!drop) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end(), [&](std::size_t i, std::size_t j) {
    return lexicographic_less(points[i], points[j]);
  });
  return kept;
}

}  // namespace ppls
