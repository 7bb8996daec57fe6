#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppls/core.hpp"
#include "ppls/history.hpp"

namespace ppls {

class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Broken parent links or similar inconsistencies in a history.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of points that fail to weakly dominate `reference`.
std::size_t count_outside_reference(const std::vector<ObjectiveVector>& points, const ObjectiveVector& reference);

/// Exact hypervolume (maximization) of the union of boxes [reference, p].
/// Points that do not weakly dominate the reference contribute nothing and
/// trigger a warning on stderr. Supports 1 to 4 objectives.
double hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& reference);

/// Objective ranges used to normalize hypervolume across a set of runs.
struct Normalization {
  ObjectiveVector f_max;
  ObjectiveVector f_min;
  Orientation orientation = Orientation::maximize;

  /// Componentwise extremes over every init/accepted event of every history.
  static Normalization from_histories(const std::vector<const RunHistory*>& histories);
};

/// Hypervolume relative to the box spanned by the best corner, with the
/// reference point pushed 10% of the range beyond the worst corner.
/// `points` are in the native orientation given by `orientation`.
double normalized_hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& f_max,
                              const ObjectiveVector& f_min, Orientation orientation);

inline double normalized_hypervolume(const std::vector<ObjectiveVector>& points, const Normalization& norm) {
  return normalized_hypervolume(points, norm.f_max, norm.f_min, norm.orientation);
}

struct CurvePoint {
  std::uint64_t checkpoint = 0;
  double value = 0.0;
};

/// Objective vectors (native orientation) of the run's merged archive once
/// every worker has spent `evaluations` evaluations.
std::vector<ObjectiveVector> archive_at(const RunHistory& history, std::uint64_t evaluations);

/// Normalized hypervolume of the merged archive at each checkpoint (sorted ascending).
std::vector<CurvePoint> anytime_curve(const RunHistory& history, std::vector<std::uint64_t> checkpoints,
                                      const Normalization& norm);

struct RatePoint {
  std::uint64_t window_start = 0;
  std::uint64_t window_end = 0;
  std::uint64_t accepted = 0;
  std::uint64_t evaluations = 0;
  double rate = 0.0;
};

/// Accepted solutions per evaluation in consecutive windows of `window`
/// per-worker evaluations, summed over workers. Windows without evaluations
/// are omitted.
std::vector<RatePoint> acceptance_rate(const RunHistory& history, std::uint64_t window);

struct TrajectoryNode {
  HistoryId id = 0;
  std::optional<HistoryId> parent;
  int worker = 0;
  std::uint64_t evals = 0;
  ObjectiveVector objectives;
  std::vector<std::size_t> children;
};

struct TrajectoryForest {
  std::vector<TrajectoryNode> nodes;
  std::vector<std::size_t> roots;
};

/// Every solution ever admitted (init or accepted), linked to the solution
/// whose neighborhood produced it.
TrajectoryForest trajectory_tree(const std::vector<HistoryEvent>& events);
std::string to_json(const TrajectoryForest& forest);

}  // namespace ppls
