#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ppls {

/// A point in objective space. Internally every problem is maximized.
using ObjectiveVector = Eigen::VectorXd;

using HistoryId = std::uint64_t;

/// Raised when a caller breaks a precondition (size mismatch, invalid genotype).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised for out-of-domain user parameters.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file; the message names the source and line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

enum class Orientation { maximize, minimize };

/// Converts an internal (maximization) vector to the problem's native
/// orientation, and back. Negation is its own inverse.
inline ObjectiveVector to_reported(const ObjectiveVector& internal, Orientation o) {
  return o == Orientation::maximize ? internal : ObjectiveVector(-internal);
}
inline ObjectiveVector to_internal(const ObjectiveVector& reported, Orientation o) {
  return to_reported(reported, o);
}

/// Pareto dominance in the maximization sense: u is no worse everywhere and
/// strictly better somewhere.
template <typename DerivedU, typename DerivedV>
bool dominates(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
  if (u.size() != v.size()) {
    throw ContractViolation("dominates: length mismatch (" + std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()) + ")");
  }
  bool strict = false;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (u[k] < v[k]) return false;
    if (u[k] > v[k]) strict = true;
  }
  return strict;
}

/// Weak dominance: u >= v componentwise (includes equality).
template <typename DerivedU, typename DerivedV>
bool weakly_dominates(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
  if (u.size() != v.size()) throw ContractViolation("weakly_dominates: length mismatch");
  return (u.array() >= v.array()).all();
}

template <typename Genotype>
struct Solution {
  Genotype genotype;
  ObjectiveVector objectives;
};

template <typename Genotype>
struct ArchiveEntry {
  Solution<Genotype> solution;
  bool explored = false;
  HistoryId history_id = 0;

  const ObjectiveVector& objectives() const { return solution.objectives; }
};

/// Mutually non-dominated set of solutions, duplicate-free by objective vector.
///
/// Single-owner: each search worker holds its own archive.
template <typename Genotype>
class Archive {
 public:
  using Entry = ArchiveEntry<Genotype>;

  struct UpdateResult {
    bool accepted = false;
    std::vector<Entry> removed;
  };

  Archive() = default;

  /// True if some member dominates `f` or has exactly the same objectives.
  bool dominated_or_equal(const ObjectiveVector& f) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
      return weakly_dominates(e.objectives(), f);
    });
  }

  /// True if some member strictly dominates `f`.
  bool dominated(const ObjectiveVector& f) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const Entry& e) { return dominates(e.objectives(), f); });
  }

  /// Inserts `entry` (forced unexplored) unless it is dominated by or equal to
  /// a member; evicts every member it dominates.
  UpdateResult update(Entry entry) {
    UpdateResult result;
    if (dominated_or_equal(entry.objectives())) return result;
    auto evicted = std::stable_partition(entries_.begin(), entries_.end(), [&](const Entry& e) {
      return !dominates(entry.objectives(), e.objectives());
    });
    result.removed.assign(std::make_move_iterator(evicted), std::make_move_iterator(entries_.end()));
    entries_.erase(evicted, entries_.end());
    entry.explored = false;
    entries_.push_back(std::move(entry));
    result.accepted = true;
    return result;
  }

  Entry* find(HistoryId id) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [id](const Entry& e) { return e.history_id == id; });
    return it == entries_.end() ? nullptr : &*it;
  }

  bool has_unexplored() const {
    return std::any_of(entries_.begin(), entries_.end(), [](const Entry& e) { return !e.explored; });
  }

  void mark_all_unexplored() {
    for (auto& e : entries_) e.explored = false;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<Entry>& entries() { return entries_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  std::vector<ObjectiveVector> objective_vectors() const {
    std::vector<ObjectiveVector> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.objectives());
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

/// Shortest decimal text that reads back to exactly `v`.
std::string format_number(double v);

/// Lexicographic "less" for objective vectors; used to give filter results a
/// canonical order.
bool lexicographic_less(const ObjectiveVector& a, const ObjectiveVector& b);

/// Indices of the maximal non-dominated, duplicate-free subset of `points`,
/// sorted lexicographically by objective vector. For duplicates the first
/// occurrence wins.
std::vector<std::size_t> nondominated_indices(const std::vector<ObjectiveVector>& points);

template <typename Genotype>
std::vector<Solution<Genotype>> nondominated_filter(const std::vector<Solution<Genotype>>& set) {
  std::vector<ObjectiveVector> points;
  points.reserve(set.size());
  for (const auto& s : set) points.push_back(s.objectives);
  std::vector<Solution<Genotype>> out;
  for (std::size_t i : nondominated_indices(points)) out.push_back(set[i]);
  return out;
}

inline std::vector<ObjectiveVector> nondominated_filter(const std::vector<ObjectiveVector>& points) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i : nondominated_indices(points)) out.push_back(points[i]);
  return out;
}

}  // namespace ppls
