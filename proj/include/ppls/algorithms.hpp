#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ppls/core.hpp"
#include "ppls/decomposition.hpp"
#include "ppls/history.hpp"
#include "ppls/problem.hpp"

namespace ppls {

/// When a search stops. A search always stops once every archive member has
/// been explored; the bounds cut it short.
struct StoppingCriterion {
  std::optional<std::uint64_t> max_evaluations;
  std::optional<std::chrono::duration<double>> max_wall_time;
  bool natural_termination = true;

  void validate() const {
    if (!natural_termination && !max_evaluations && !max_wall_time) {
      throw ParameterError("stopping criterion needs a bound or natural termination");
    }
  }
};

/// Counts neighbor evaluations against the stopping criterion.
class EvaluationBudget {
 public:
  explicit EvaluationBudget(const StoppingCriterion& stop)
      : max_evals_(stop.max_evaluations.value_or(std::numeric_limits<std::uint64_t>::max())) {
    if (stop.max_wall_time) {
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(*stop.max_wall_time);
    }
  }

  /// Reserves one evaluation. Returns false, without counting, once the budget is spent.
  bool consume() {
    if (exhausted_) return false;
    if (used_ >= max_evals_) {
      exhausted_ = true;
      return false;
    }
    if (deadline_ && (used_ % 64) == 0 && std::chrono::steady_clock::now() >= *deadline_) {
      exhausted_ = true;
      return false;
    }
    ++used_;
    return true;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t max_evals_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t used_ = 0;
  bool exhausted_ = false;
};

template <typename Genotype>
struct WorkerOutcome {
  Archive<Genotype> archive;
  std::uint64_t evaluations = 0;
};

/// Admission test of one PPLS/D worker: the subregion gate plus the two
/// acceptance criteria. Keeps the number of archive members inside the
/// worker's subregion and the archive's best scalar value current.
class SubregionGate {
 public:
  SubregionGate(const DecompositionScheme& scheme, std::size_t subregion)
      : scheme_(&scheme), subregion_(subregion) {}

  template <typename G>
  void rebuild(const Archive<G>& archive) {
    inside_ = 0;
    best_ = -std::numeric_limits<double>::infinity();
    for (const auto& e : archive) {
      if (inside(e.objectives())) ++inside_;
      best_ = std::max(best_, scalar(e.objectives()));
    }
  }

  /// Account for one accepted insertion and the members it evicted.
  template <typename G>
  void after_insert(const Archive<G>& archive, const ObjectiveVector& added,
                    const std::vector<ArchiveEntry<G>>& removed) {
    if (inside(added)) ++inside_;
    for (const auto& r : removed) {
      if (inside(r.objectives())) --inside_;
    }
    if (removed.empty()) {
      best_ = std::max(best_, scalar(added));
    } else {
      best_ = -std::numeric_limits<double>::infinity();
      for (const auto& e : archive) best_ = std::max(best_, scalar(e.objectives()));
    }
  }

  bool inside(const ObjectiveVector& f) const { return scheme_->in_subregion(f, subregion_); }
  double scalar(const ObjectiveVector& f) const { return scheme_->scalar(f, subregion_); }

  /// Candidates outside the subregion are admissible only while no archive
  /// member lies inside it.
  bool admits_region(const ObjectiveVector& f) const { return inside_ == 0 || inside(f); }

  /// Scalar improvement over the whole archive.
  bool criterion_1(const ObjectiveVector& f) const { return admits_region(f) && scalar(f) > best_; }

  /// Non-dominated by the archive.
  template <typename G>
  bool criterion_2(const ObjectiveVector& f, const Archive<G>& archive) const {
    return admits_region(f) && !archive.dominated(f);
  }

  std::size_t members_inside() const { return inside_; }
  double best_scalar() const { return best_; }
  std::size_t subregion() const { return subregion_; }

 private:
  const DecompositionScheme* scheme_;
  std::size_t subregion_;
  std::size_t inside_ = 0;
  double best_ = -std::numeric_limits<double>::infinity();
};

template <typename G>
bool acceptance_criterion_1(const ObjectiveVector& candidate, const DecompositionScheme& scheme,
                            std::size_t subregion, const Archive<G>& archive) {
  SubregionGate gate(scheme, subregion);
  gate.rebuild(archive);
  return gate.criterion_1(candidate);
}

template <typename G>
bool acceptance_criterion_2(const ObjectiveVector& candidate, const DecompositionScheme& scheme,
                            std::size_t subregion, const Archive<G>& archive) {
  SubregionGate gate(scheme, subregion);
  gate.rebuild(archive);
  return gate.criterion_2(candidate, archive);
}

namespace detail {

enum class ScanStatus { completed, stopped, exhausted };

template <Problem P>
struct Search {
  using G = typename P::Genotype;
  using Move = typename P::Move;

  struct Candidate {
    Move move;
    ObjectiveVector objectives;
  };

  const P& problem;
  Rng rng;
  EvaluationBudget budget;
  WorkerLog& log;
  Archive<G> archive;

  Search(const P& p, std::uint64_t seed, const StoppingCriterion& stop, WorkerLog& l)
      : problem(p), rng(seed), budget(stop), log(l) {
    stop.validate();
  }

  void seed_archive(const std::vector<Solution<G>>& initial) {
    if (initial.empty()) throw ParameterError("initial archive must not be empty");
    for (const auto& s : initial) {
      if (archive.dominated_or_equal(s.objectives)) continue;
      typename Archive<G>::Entry e{s, false, log.next_id()};
      auto r = archive.update(std::move(e));
      log.record(EventKind::init, archive.entries().back().history_id, std::nullopt, 0, s.objectives);
      for (const auto& gone : r.removed) {
        log.record(EventKind::removed, gone.history_id, std::nullopt, 0, gone.objectives());
      }
    }
  }

  /// Visits the neighbors of x from a random offset; `visit(move, f)` returns
  /// false to stop early.
  template <typename Visit>
  ScanStatus scan(const Solution<G>& x, Visit&& visit) {
    const std::size_t n = problem.neighborhood_size(x.genotype);
    if (n == 0) return ScanStatus::completed;
    const std::size_t offset = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    for (std::size_t t = 0; t < n; ++t) {
      if (!budget.consume()) return ScanStatus::exhausted;
      const Move mv = problem.move_at(x.genotype, (offset + t) % n);
      if (!visit(mv, problem.evaluate_move(x.genotype, x.objectives, mv))) return ScanStatus::stopped;
    }
    return ScanStatus::completed;
  }

  /// Archive update with history logging. Returns the evicted members, or
  /// nullopt if the candidate was rejected.
  std::optional<std::vector<ArchiveEntry<G>>> insert(const Solution<G>& parent, HistoryId parent_id,
                                                      const Move& mv, const ObjectiveVector& f) {
    if (archive.dominated_or_equal(f)) return std::nullopt;
    const HistoryId id = log.next_id();
    auto r = archive.update({{problem.apply_move(parent.genotype, mv), f}, false, id});
    log.record(EventKind::accepted, id, parent_id, budget.used(), f);
    for (const auto& gone : r.removed) {
      log.record(EventKind::removed, gone.history_id, std::nullopt, budget.used(), gone.objectives());
    }
    return std::move(r.removed);
  }

  void mark_explored(HistoryId id) {
    if (auto* e = archive.find(id)) {
      e->explored = true;
      log.record(EventKind::explored, id, std::nullopt, budget.used(), e->objectives());
    }
  }

  /// Uniformly random unexplored member, if any.
  std::optional<std::pair<Solution<G>, HistoryId>> pick_random_unexplored() {
    std::vector<std::size_t> open;
    const auto& entries = archive.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!entries[i].explored) open.push_back(i);
    }
    if (open.empty()) return std::nullopt;
    const auto& e = entries[open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)]];
    return std::pair{e.solution, e.history_id};
  }

  /// Unexplored member with the largest scalar value; ties go to the oldest id.
  std::optional<std::pair<Solution<G>, HistoryId>> pick_best_unexplored(const SubregionGate& gate) {
    const ArchiveEntry<G>* best = nullptr;
    double best_value = 0.0;
    for (const auto& e : archive) {
      if (e.explored) continue;
      const double v = gate.scalar(e.objectives());
      if (!best || v > best_value || (v == best_value && e.history_id < best->history_id)) {
        best = &e;
        best_value = v;
      }
    }
    if (!best) return std::nullopt;
    return std::pair{best->solution, best->history_id};
  }

  /// Full scan accepting every candidate not dominated by the archive.
  ScanStatus full_nondominated_scan(const Solution<G>& x0, HistoryId id0) {
    return scan(x0, [&](const Move& mv, const ObjectiveVector& f) {
      if (!archive.dominated(f)) insert(x0, id0, mv, f);
      return true;
    });
  }

  WorkerOutcome<G> finish() { return {std::move(archive), budget.used()}; }
};

}  // namespace detail

/// Basic Pareto local search: explore a random unexplored member's whole
/// neighborhood, admitting every candidate the archive does not dominate.
template <Problem P>
WorkerOutcome<typename P::Genotype> pls_basic(const P& problem,
                                              const std::vector<Solution<typename P::Genotype>>& initial,
                                              const StoppingCriterion& stop, std::uint64_t seed, WorkerLog& log) {
  detail::Search<P> s(problem, seed, stop, log);
  s.seed_archive(initial);
  while (!s.budget.exhausted()) {
    auto pick = s.pick_random_unexplored();
    if (!pick) break;
    const auto& [x0, id0] = *pick;
    if (s.full_nondominated_scan(x0, id0) == detail::ScanStatus::exhausted) break;
    s.mark_explored(id0);
  }
  return s.finish();
}

/// PLS with the two-round dominance acceptance and first-improvement
/// exploration, followed by one best-improvement pass over the archive.
///
/// Phase 1, per picked member x0:
///   round 1 scans neighbors and stops at the first one dominating x0;
///   if none does, round 2 admits every neighbor the archive does not dominate
///   (reusing the objective vectors computed in round 1).
/// Phase 2 starts once everything is explored: all members are marked
/// unexplored again and explored with full non-dominance scans.
template <Problem P>
WorkerOutcome<typename P::Genotype> pls_abi(const P& problem,
                                            const std::vector<Solution<typename P::Genotype>>& initial,
                                            const StoppingCriterion& stop, std::uint64_t seed, WorkerLog& log) {
  using Search = detail::Search<P>;
  using Candidate = typename Search::Candidate;
  Search s(problem, seed, stop, log);
  s.seed_archive(initial);

  bool best_improvement = false;
  std::vector<Candidate> seen;
  while (!s.budget.exhausted()) {
    auto pick = s.pick_random_unexplored();
    if (!pick) {
      if (best_improvement || s.archive.empty()) break;
      best_improvement = true;
      s.archive.mark_all_unexplored();
      continue;
    }
    const auto& [x0, id0] = *pick;

    if (best_improvement) {
      if (s.full_nondominated_scan(x0, id0) == detail::ScanStatus::exhausted) break;
    } else {
      seen.clear();
      bool improved = false;
      const auto status = s.scan(x0, [&](const auto& mv, const ObjectiveVector& f) {
        if (dominates(f, x0.objectives)) {
          s.insert(x0, id0, mv, f);
          improved = true;
          return false;
        }
        seen.push_back({mv, f});
        return true;
      });
      if (status == detail::ScanStatus::exhausted) break;
      if (!improved) {
        for (const auto& c : seen) {
          if (!s.archive.dominated(c.objectives)) s.insert(x0, id0, c.move, c.objectives);
        }
      }
    }
    s.mark_explored(id0);
  }
  return s.finish();
}

/// One PPLS/D process, searching subregion `subregion` of `scheme`.
///
/// Main phase: explore the unexplored member with the best scalar value.
/// Round 1 stops at the first neighbor passing criterion 1; otherwise round 2
/// admits every neighbor passing criterion 2 (reusing round-1 evaluations).
/// Re-check phase: mark everything unexplored and run full criterion-2 scans
/// until the archive is locally optimal or the budget runs out.
template <Problem P>
WorkerOutcome<typename P::Genotype> pplsd_worker(const P& problem, const DecompositionScheme& scheme,
                                                 std::size_t subregion,
                                                 const std::vector<Solution<typename P::Genotype>>& initial,
                                                 const StoppingCriterion& stop, std::uint64_t seed,
                                                 WorkerLog& log) {
  using Search = detail::Search<P>;
  using Candidate = typename Search::Candidate;
  if (subregion >= scheme.size()) throw ParameterError("pplsd_worker: subregion index out of range");
  Search s(problem, seed, stop, log);
  s.seed_archive(initial);
  SubregionGate gate(scheme, subregion);
  gate.rebuild(s.archive);

  auto admit = [&](const Solution<typename P::Genotype>& x0, HistoryId id0, const auto& mv,
                   const ObjectiveVector& f) {
    if (auto removed = s.insert(x0, id0, mv, f)) {
      gate.after_insert(s.archive, f, *removed);
      return true;
    }
    return false;
  };

  std::vector<Candidate> seen;
  while (!s.budget.exhausted()) {
    auto pick = s.pick_best_unexplored(gate);
    if (!pick) break;
    const auto& [x0, id0] = *pick;
    seen.clear();
    bool improved = false;
    const auto status = s.scan(x0, [&](const auto& mv, const ObjectiveVector& f) {
      if (gate.criterion_1(f) && admit(x0, id0, mv, f)) {
        improved = true;
        return false;
      }
      seen.push_back({mv, f});
      return true;
    });
    if (status == detail::ScanStatus::exhausted) return s.finish();
    if (!improved) {
      for (const auto& c : seen) {
        if (gate.criterion_2(c.objectives, s.archive)) admit(x0, id0, c.move, c.objectives);
      }
    }
    s.mark_explored(id0);
  }

  if (s.budget.exhausted()) return s.finish();
  s.archive.mark_all_unexplored();
  while (!s.budget.exhausted()) {
    auto pick = s.pick_best_unexplored(gate);
    if (!pick) break;
    const auto& [x0, id0] = *pick;
    const auto status = s.scan(x0, [&](const auto& mv, const ObjectiveVector& f) {
      if (gate.criterion_2(f, s.archive)) admit(x0, id0, mv, f);
      return true;
    });
    if (status == detail::ScanStatus::exhausted) break;
    s.mark_explored(id0);
  }
  return s.finish();
}

/// First-improvement local search maximizing the Tchebycheff value for
/// `weight` about `z_star`. Runs to a local optimum.
template <Problem P>
Solution<typename P::Genotype> scalar_local_search(const P& problem, Solution<typename P::Genotype> x,
                                                   const WeightVector& weight, const ObjectiveVector& z_star,
                                                   Rng& rng) {
  double current = tchebycheff(x.objectives, weight, z_star);
  for (;;) {
    const std::size_t n = problem.neighborhood_size(x.genotype);
    if (n == 0) return x;
    const std::size_t offset = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    bool moved = false;
    for (std::size_t t = 0; t < n; ++t) {
      const auto mv = problem.move_at(x.genotype, (offset + t) % n);
      ObjectiveVector f = problem.evaluate_move(x.genotype, x.objectives, mv);
      const double v = tchebycheff(f, weight, z_star);
      if (v > current) {
        x.genotype = problem.apply_move(x.genotype, mv);
        x.objectives = std::move(f);
        current = v;
        moved = true;
        break;
      }
    }
    if (!moved) return x;
  }
}

}  // namespace ppls
