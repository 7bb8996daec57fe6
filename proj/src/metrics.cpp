#include "ppls/metrics.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <unordered_map>

#include <json.hpp>

namespace ppls {

namespace {

// Points are translated so the reference is the origin; all coordinates >= 0.
double hv_recursive(std::vector<ObjectiveVector> pts, int dims) {
  if (pts.empty()) return 0.0;
  if (dims == 1) {
    double best = 0.0;
    for (const auto& p : pts) best = std::max(best, p[0]);
    return best;
  }
  if (dims == 2) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
      return a[0] > b[0] || (a[0] == b[0] && a[1] > b[1]);
    });
    double area = 0.0;
    double top = 0.0;
    for (const auto& p : pts) {
      if (p[1] > top) {
        area += p[0] * (p[1] - top);
        top = p[1];
      }
    }
    return area;
  }
  // Slice along the last axis, from the highest value down.
  const int last = dims - 1;
  std::sort(pts.begin(), pts.end(), [last](const auto& a, const auto& b) { return a[last] > b[last]; });
  double volume = 0.0;
  std::vector<ObjectiveVector> slab;
  slab.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    slab.push_back(pts[i].head(last));
    const double lower = i + 1 < pts.size() ? pts[i + 1][last] : 0.0;
    const double depth = pts[i][last] - lower;
    if (depth > 0.0) {
      slab = nondominated_filter(slab);
      volume += depth * hv_recursive(slab, last);
    }
  }
  return volume;
}

}  // namespace

std::size_t count_outside_reference(const std::vector<ObjectiveVector>& points, const ObjectiveVector& reference) {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [&](const ObjectiveVector& p) {
    return !weakly_dominates(p, reference);
  }));
}

double hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& reference) {
  const auto m = reference.size();
  if (m < 1 || m > 4) throw UnsupportedError("hypervolume: " + std::to_string(m) + " objectives not supported (1..4)");
  std::vector<ObjectiveVector> shifted;
  shifted.reserve(points.size());
  std::size_t outside = 0;
  for (const auto& p : points) {
    if (p.size() != m) throw ContractViolation("hypervolume: point dimension differs from reference");
    if (!weakly_dominates(p, reference)) {
      ++outside;
      continue;
    }
    shifted.push_back(p - reference);
  }
  if (outside > 0) {
    std::cerr << "warning: " << outside << " point(s) do not dominate the hypervolume reference point; ignored\n";
  }
  return hv_recursive(nondominated_filter(shifted), static_cast<int>(m));
}

Normalization Normalization::from_histories(const std::vector<const RunHistory*>& histories) {
  Normalization n;
  bool any = false;
  for (const auto* h : histories) {
    if (!any) n.orientation = h->orientation;
    if (h->orientation != n.orientation) throw ParameterError("normalization: histories mix orientations");
    for (const auto& e : h->events) {
      if (e.kind != EventKind::init && e.kind != EventKind::accepted) continue;
      if (!any) {
        n.f_max = e.objectives;
        n.f_min = e.objectives;
        any = true;
      } else {
        n.f_max = n.f_max.cwiseMax(e.objectives);
        n.f_min = n.f_min.cwiseMin(e.objectives);
      }
    }
  }
  if (!any) throw ParameterError("normalization: no objective vectors in histories");
  return n;
}

double normalized_hypervolume(const std::vector<ObjectiveVector>& points, const ObjectiveVector& f_max,
                              const ObjectiveVector& f_min, Orientation orientation) {
  if (f_max.size() != f_min.size()) throw ContractViolation("normalized_hypervolume: F_max/F_min length mismatch");
  if ((f_max.array() < f_min.array()).any()) throw ContractViolation("normalized_hypervolume: F_max < F_min");
  if ((f_max.array() == f_min.array()).any()) {
    throw ParameterError("normalized_hypervolume: degenerate objective range (F_max == F_min)");
  }
  if (points.empty()) return 0.0;
  const ObjectiveVector range = f_max - f_min;
  if (orientation == Orientation::maximize) {
    const ObjectiveVector ref = f_min - 0.1 * range;
    return hypervolume(points, ref) / hypervolume({f_max}, ref);
  }
  // Minimization: negate everything and treat as maximization.
  const ObjectiveVector ref = -(f_max + 0.1 * range);
  std::vector<ObjectiveVector> flipped;
  flipped.reserve(points.size());
  for (const auto& p : points) flipped.push_back(-p);
  return hypervolume(flipped, ref) / hypervolume({ObjectiveVector(-f_min)}, ref);
}

namespace {

// Replays one worker's events up to successive checkpoints.
class ArchiveReplay {
 public:
  explicit ArchiveReplay(std::vector<const HistoryEvent*> events) : events_(std::move(events)) {}

  void advance_to(std::uint64_t evaluations) {
    while (next_ < events_.size() && events_[next_]->evals <= evaluations) {
      const auto& e = *events_[next_++];
      if (e.kind == EventKind::init || e.kind == EventKind::accepted) {
        alive_[e.id] = e.objectives;
      } else if (e.kind == EventKind::removed) {
        alive_.erase(e.id);
      }
    }
  }

  void collect(std::vector<ObjectiveVector>& out) const {
    for (const auto& [id, f] : alive_) out.push_back(f);
  }

 private:
  std::vector<const HistoryEvent*> events_;
  std::size_t next_ = 0;
  std::map<HistoryId, ObjectiveVector> alive_;
};

std::vector<ArchiveReplay> replays_for(const RunHistory& history) {
  std::map<int, std::vector<const HistoryEvent*>> by_worker;
  for (const auto& e : history.events) by_worker[e.worker].push_back(&e);
  std::vector<ArchiveReplay> out;
  for (auto& [w, ev] : by_worker) out.emplace_back(std::move(ev));
  return out;
}

}  // namespace

std::vector<ObjectiveVector> archive_at(const RunHistory& history, std::uint64_t evaluations) {
  auto replays = replays_for(history);
  std::vector<ObjectiveVector> pts;
  for (auto& r : replays) {
    r.advance_to(evaluations);
    r.collect(pts);
  }
  // Non-dominance is orientation dependent: filter in the internal frame.
  for (auto& p : pts) p = to_internal(p, history.orientation);
  auto front = nondominated_filter(pts);
  for (auto& p : front) p = to_reported(p, history.orientation);
  return front;
}

std::vector<CurvePoint> anytime_curve(const RunHistory& history, std::vector<std::uint64_t> checkpoints,
                                      const Normalization& norm) {
  std::sort(checkpoints.begin(), checkpoints.end());
  auto replays = replays_for(history);
  std::vector<CurvePoint> curve;
  curve.reserve(checkpoints.size());
  for (auto c : checkpoints) {
    std::vector<ObjectiveVector> pts;
    for (auto& r : replays) {
      r.advance_to(c);
      r.collect(pts);
    }
    curve.push_back({c, normalized_hypervolume(pts, norm)});
  }
  return curve;
}

std::vector<RatePoint> acceptance_rate(const RunHistory& history, std::uint64_t window) {
  if (window == 0) throw ParameterError("acceptance_rate: window must be positive");
  std::vector<std::uint64_t> totals = history.worker_evaluations;
  if (totals.empty()) {
    // No per-worker totals recorded: fall back to the last event of each worker.
    for (const auto& e : history.events) {
      const auto w = static_cast<std::size_t>(e.worker);
      if (totals.size() <= w) totals.resize(w + 1, 0);
      totals[w] = std::max(totals[w], e.evals);
    }
  }
  const std::uint64_t horizon = totals.empty() ? 0 : *std::max_element(totals.begin(), totals.end());
  const std::uint64_t windows = (horizon + window - 1) / window;

  std::vector<std::uint64_t> accepted(windows, 0);
  for (const auto& e : history.events) {
    // An acceptance at count c happened during evaluation number c (1-based).
    if (e.kind != EventKind::accepted || e.evals == 0) continue;
    const std::uint64_t w = (e.evals - 1) / window;
    if (w < windows) ++accepted[w];
  }

  std::vector<RatePoint> out;
  for (std::uint64_t w = 0; w < windows; ++w) {
    const std::uint64_t start = w * window;
    const std::uint64_t end = start + window;
    std::uint64_t evals = 0;
    for (auto t : totals) evals += t > start ? std::min(t, end) - start : 0;
    if (evals == 0) continue;
    out.push_back({start, end, accepted[w], evals, static_cast<double>(accepted[w]) / static_cast<double>(evals)});
  }
  return out;
}

TrajectoryForest trajectory_tree(const std::vector<HistoryEvent>& events) {
  TrajectoryForest forest;
  std::unordered_map<HistoryId, std::size_t> index;
  for (const auto& e : events) {
    if (e.kind != EventKind::init && e.kind != EventKind::accepted) continue;
    if (index.count(e.id)) throw IntegrityError("trajectory_tree: duplicate node id " + std::to_string(e.id));
    index[e.id] = forest.nodes.size();
    forest.nodes.push_back({e.id, e.kind == EventKind::accepted ? e.parent : std::nullopt, e.worker, e.evals,
                            e.objectives, {}});
  }
  for (std::size_t i = 0; i < forest.nodes.size(); ++i) {
    auto& node = forest.nodes[i];
    if (!node.parent) {
      forest.roots.push_back(i);
      continue;
    }
    auto it = index.find(*node.parent);
    if (it == index.end()) {
      throw IntegrityError("trajectory_tree: node " + std::to_string(node.id) + " has dangling parent " +
                           std::to_string(*node.parent));
    }
    forest.nodes[it->second].children.push_back(i);
  }
  return forest;
}

std::string to_json(const TrajectoryForest& forest) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& n : forest.nodes) {
    nlohmann::ordered_json j;
    j["id"] = n.id;
    j["parent"] = n.parent ? nlohmann::ordered_json(*n.parent) : nlohmann::ordered_json(nullptr);
    j["worker"] = n.worker;
    j["evals"] = n.evals;
    j["objectives"] = std::vector<double>(n.objectives.begin(), n.objectives.end());
    nodes.push_back(std::move(j));
  }
  nlohmann::ordered_json roots = nlohmann::ordered_json::array();
  for (auto r : forest.roots) roots.push_back(forest.nodes[r].id);
  nlohmann::ordered_json out;
  out["roots"] = std::move(roots);
  out["nodes"] = std::move(nodes);
  return out.dump();
}

}  // namespace ppls
