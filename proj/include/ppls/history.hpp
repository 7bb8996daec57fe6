#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppls/core.hpp"

namespace ppls {

enum class EventKind { init, accepted, explored, removed };

std::string to_string(EventKind k);
EventKind event_kind_from_string(const std::string& s);

/// One line of a run's history. `objectives` are in the problem's native
/// orientation (tour lengths for mTSP, not their negation).
struct HistoryEvent {
  EventKind kind = EventKind::init;
  HistoryId id = 0;
  std::optional<HistoryId> parent;
  int worker = 0;
  std::uint64_t evals = 0;
  ObjectiveVector objectives;

  friend bool operator==(const HistoryEvent& a, const HistoryEvent& b) {
    return a.kind == b.kind && a.id == b.id && a.parent == b.parent && a.worker == b.worker &&
           a.evals == b.evals && a.objectives == b.objectives;
  }
};

/// Append-only event log of one run, plus the evaluation total of each worker.
struct RunHistory {
  Orientation orientation = Orientation::maximize;
  std::vector<HistoryEvent> events;
  std::vector<std::uint64_t> worker_evaluations;

  int workers() const { return static_cast<int>(worker_evaluations.size()); }
};

/// Event recorder owned by one worker. Ids are `local * stride + worker`, so
/// they are unique across the run without any coordination between workers.
class WorkerLog {
 public:
  WorkerLog(int worker, int stride, Orientation orientation)
      : worker_(worker), stride_(stride), orientation_(orientation) {}

  HistoryId next_id() { return next_local_++ * static_cast<HistoryId>(stride_) + static_cast<HistoryId>(worker_); }

  void record(EventKind kind, HistoryId id, std::optional<HistoryId> parent, std::uint64_t evals,
              const ObjectiveVector& internal_objectives) {
    events_.push_back({kind, id, parent, worker_, evals, to_reported(internal_objectives, orientation_)});
  }

  int worker() const { return worker_; }
  const std::vector<HistoryEvent>& events() const { return events_; }
  std::vector<HistoryEvent> take_events() { return std::move(events_); }

 private:
  int worker_;
  int stride_;
  Orientation orientation_;
  HistoryId next_local_ = 0;
  std::vector<HistoryEvent> events_;
};

/// JSON-lines codec. Each line has exactly the fields
/// kind, id, parent, worker, evals, objectives.
std::string to_json_line(const HistoryEvent& e);
HistoryEvent parse_json_line(const std::string& line, const std::string& source, std::size_t lineno);

void write_history(std::ostream& out, const std::vector<HistoryEvent>& events);
std::vector<HistoryEvent> read_history(std::istream& in, const std::string& source = "<stream>");
std::vector<HistoryEvent> read_history(const std::filesystem::path& path);

}  // namespace ppls
