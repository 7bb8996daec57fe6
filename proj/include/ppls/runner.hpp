#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ppls/algorithms.hpp"

namespace ppls {

enum class Algorithm { pls, pls_abi, pplsd, p_pls_abi };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

/// Raised when a worker throws; names the failing worker.
class WorkerFailure : public std::runtime_error {
 public:
  WorkerFailure(int worker, const std::string& what)
      : std::runtime_error("worker " + std::to_string(worker) + " failed: " + what), worker_(worker) {}
  int worker() const { return worker_; }

 private:
  int worker_;
};

struct RunSpec {
  Algorithm algorithm = Algorithm::pplsd;
  int H = 0;  // pplsd
  int L = 0;  // p-pls-abi
  std::uint64_t base_seed = 0;
  StoppingCriterion stopping;
  /// Upper bound on concurrently running workers; 0 = hardware concurrency.
  int threads = 0;
  /// Overrides the derived per-worker seeds (testing aid).
  std::optional<std::vector<std::uint64_t>> worker_seeds;

  void validate() const {
    if (algorithm == Algorithm::pplsd && H < 1) throw ParameterError("pplsd requires H >= 1");
    if (algorithm == Algorithm::p_pls_abi && L < 1) throw ParameterError("p-pls-abi requires an explicit L >= 1");
    stopping.validate();
  }
};

template <typename G>
struct MergedResult {
  std::vector<Solution<G>> final_archive;
  std::vector<Archive<G>> worker_archives;
  RunHistory history;
  ObjectiveVector z_star;
};

/// Runs fn(0..count-1) on at most `threads` threads and rethrows the first
/// failure as WorkerFailure.
void fork_join(int count, int threads, const std::function<void(int)>& fn);

/// Deterministic random starting solution of a run.
template <Problem P>
std::vector<Solution<typename P::Genotype>> random_initial_archive(const P& problem, std::uint64_t base_seed) {
  Rng rng(derive_seed(base_seed, 0xA11CE));
  auto x = problem.random_solution(rng);
  auto f = problem.evaluate(x);
  return {{std::move(x), std::move(f)}};
}

/// Reference point z* shared by every worker of a run: the origin for
/// zero-policy problems, otherwise the initial solution's objectives (the
/// componentwise worst member when the initial archive holds several).
template <Problem P>
ObjectiveVector reference_point(const P& problem, const std::vector<Solution<typename P::Genotype>>& initial) {
  const int m = problem.objectives();
  if (problem.reference_policy() == ReferencePolicy::zero) return ObjectiveVector::Zero(m);
  if (initial.empty()) throw ParameterError("reference_point: initial solution required");
  ObjectiveVector z = initial.front().objectives;
  for (const auto& s : initial) z = z.cwiseMin(s.objectives);
  return z;
}

namespace detail {

template <typename G>
MergedResult<G> merge(std::vector<WorkerOutcome<G>> outcomes, std::vector<WorkerLog> logs, Orientation o,
                      ObjectiveVector z_star) {
  MergedResult<G> result;
  result.z_star = std::move(z_star);
  result.history.orientation = o;
  std::vector<Solution<G>> all;
  for (auto& out : outcomes) {
    for (const auto& e : out.archive) all.push_back(e.solution);
    result.history.worker_evaluations.push_back(out.evaluations);
    result.worker_archives.push_back(std::move(out.archive));
  }
  for (auto& log : logs) {
    auto ev = log.take_events();
    result.history.events.insert(result.history.events.end(), std::make_move_iterator(ev.begin()),
                                 std::make_move_iterator(ev.end()));
  }
  result.final_archive = nondominated_filter(all);
  return result;
}

inline std::uint64_t worker_seed(const RunSpec& spec, int worker) {
  if (spec.worker_seeds) return spec.worker_seeds->at(static_cast<std::size_t>(worker));
  return derive_seed(spec.base_seed, static_cast<std::uint64_t>(worker));
}

}  // namespace detail

/// L independent PPLS/D workers, one per weight vector, sharing z* and the
/// initial archive; results merged by non-dominance.
template <Problem P>
MergedResult<typename P::Genotype> run_pplsd(const P& problem, const RunSpec& spec,
                                             const std::vector<Solution<typename P::Genotype>>& initial) {
  using G = typename P::Genotype;
  spec.validate();
  const DecompositionScheme scheme(problem.objectives(), spec.H, reference_point(problem, initial));
  const int L = static_cast<int>(scheme.size());
  std::vector<WorkerOutcome<G>> outcomes(static_cast<std::size_t>(L));
  std::vector<WorkerLog> logs;
  for (int l = 0; l < L; ++l) logs.emplace_back(l, L, problem.orientation());
  fork_join(L, spec.threads, [&](int l) {
    const auto idx = static_cast<std::size_t>(l);
    outcomes[idx] = pplsd_worker(problem, scheme, idx, initial, spec.stopping, detail::worker_seed(spec, l), logs[idx]);
  });
  return detail::merge(std::move(outcomes), std::move(logs), problem.orientation(), scheme.z_star());
}

/// L independent PLS-ABI runs over the whole objective space with distinct seeds.
template <Problem P>
MergedResult<typename P::Genotype> run_p_pls_abi(const P& problem, const RunSpec& spec,
                                                 const std::vector<Solution<typename P::Genotype>>& initial) {
  using G = typename P::Genotype;
  spec.validate();
  const int L = spec.L;
  std::vector<WorkerOutcome<G>> outcomes(static_cast<std::size_t>(L));
  std::vector<WorkerLog> logs;
  for (int l = 0; l < L; ++l) logs.emplace_back(l, L, problem.orientation());
  fork_join(L, spec.threads, [&](int l) {
    const auto idx = static_cast<std::size_t>(l);
    outcomes[idx] = pls_abi(problem, initial, spec.stopping, detail::worker_seed(spec, l), logs[idx]);
  });
  return detail::merge(std::move(outcomes), std::move(logs), problem.orientation(),
                       reference_point(problem, initial));
}

/// Dispatches on spec.algorithm; pls and pls-abi run as a single worker.
template <Problem P>
MergedResult<typename P::Genotype> run(const P& problem, const RunSpec& spec,
                                       const std::vector<Solution<typename P::Genotype>>& initial) {
  using G = typename P::Genotype;
  switch (spec.algorithm) {
    case Algorithm::pplsd: return run_pplsd(problem, spec, initial);
    case Algorithm::p_pls_abi: return run_p_pls_abi(problem, spec, initial);
    case Algorithm::pls:
    case Algorithm::pls_abi: {
      spec.validate();
      std::vector<WorkerLog> logs;
      logs.emplace_back(0, 1, problem.orientation());
      std::vector<WorkerOutcome<G>> outcomes;
      const auto seed = detail::worker_seed(spec, 0);
      try {
        outcomes.push_back(spec.algorithm == Algorithm::pls
                               ? pls_basic(problem, initial, spec.stopping, seed, logs[0])
                               : pls_abi(problem, initial, spec.stopping, seed, logs[0]));
      } catch (const ParameterError&) {
        throw;
      } catch (const std::exception& e) {
        throw WorkerFailure(0, e.what());
      }
      return detail::merge(std::move(outcomes), std::move(logs), problem.orientation(),
                           reference_point(problem, initial));
    }
  }
  throw ParameterError("unknown algorithm");
}

/// High-quality initial archive: from one shared random solution, run a
/// first-improvement Tchebycheff local search for each of the C(H+m-1, m-1)
/// weight vectors and keep the non-dominated results.
template <Problem P>
std::vector<Solution<typename P::Genotype>> scalar_seed(const P& problem, int H, std::uint64_t base_seed) {
  using G = typename P::Genotype;
  const auto start = random_initial_archive(problem, base_seed);
  const DecompositionScheme scheme(problem.objectives(), H, reference_point(problem, start));
  std::vector<Solution<G>> optima;
  optima.reserve(scheme.size());
  for (std::size_t l = 0; l < scheme.size(); ++l) {
    Rng rng(derive_seed(base_seed, 0x5EED0000ULL + l));
    optima.push_back(scalar_local_search(problem, start.front(), scheme.weight(l), scheme.z_star(), rng));
  }
  return nondominated_filter(optima);
}

}  // namespace ppls
