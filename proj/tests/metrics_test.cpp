#include <doctest.h>

#include <random>

#include "ppls/metrics.hpp"
#include "ppls/mubqp.hpp"
#include "ppls/runner.hpp"
#include "support.hpp"

using namespace ppls;
using ppls::testing::vec;

namespace {

std::vector<ObjectiveVector> random_points(std::mt19937_64& rng, int m, int count) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<ObjectiveVector> pts;
  for (int i = 0; i < count; ++i) {
    ObjectiveVector p(m);
    for (int k = 0; k < m; ++k) p(k) = u(rng);
    pts.push_back(p);
  }
  return pts;
}

HistoryEvent ev(EventKind k, HistoryId id, std::optional<HistoryId> parent, std::uint64_t evals,
                ObjectiveVector f, int worker = 0) {
  return {k, id, parent, worker, evals, std::move(f)};
}

}  // namespace

TEST_CASE("hypervolume small cases") {
  const auto r = vec({0, 0});
  CHECK(hypervolume({vec({1, 3}), vec({3, 1}), vec({2, 2})}, r) == doctest::Approx(6.0));
  CHECK(hypervolume({vec({2, 2})}, r) == doctest::Approx(4.0));
  CHECK(hypervolume({}, r) == 0.0);
  CHECK(hypervolume({vec({1, 2, 3})}, vec({0, 0, 0})) == doctest::Approx(6.0));
  CHECK(hypervolume({vec({1, 1, 1, 1}), vec({2, 0.5, 1, 1})}, vec({0, 0, 0, 0})) == doctest::Approx(1.5));
  CHECK_THROWS_AS(hypervolume({vec({1, 1, 1, 1, 1})}, vec({0, 0, 0, 0, 0})), UnsupportedError);
}

TEST_CASE("points outside the reference contribute nothing") {
  const auto r = vec({0, 0});
  CHECK(count_outside_reference({vec({-1, 5}), vec({2, 2})}, r) == 1);
  CHECK(hypervolume({vec({-1, 5}), vec({2, 2})}, r) == doctest::Approx(4.0));
}

TEST_CASE("2-D hypervolume equals the staircase formula") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto pts = random_points(rng, 2, 1 + t % 40);
    CHECK(hypervolume(pts, vec({0, 0})) == doctest::Approx(ppls::testing::staircase_2d(pts, vec({0, 0}))));
  }
}

TEST_CASE("hypervolume agrees with Monte-Carlo estimates") {
  std::mt19937_64 rng(2);
  for (int m = 2; m <= 4; ++m) {
    for (int t = 0; t < 3; ++t) {
      const auto pts = random_points(rng, m, 15);
      const ObjectiveVector r = ObjectiveVector::Zero(m);
      const auto mc = ppls::testing::monte_carlo_hypervolume(pts, r, 200000, rng);
      CHECK(std::abs(hypervolume(pts, r) - mc.estimate) <= 4.0 * mc.standard_error + 1e-9);
    }
  }
}

TEST_CASE("hypervolume properties") {
  std::mt19937_64 rng(3);
  for (int m = 2; m <= 4; ++m) {
    for (int t = 0; t < 30; ++t) {
      auto pts = random_points(rng, m, 12);
      const ObjectiveVector r = ObjectiveVector::Zero(m);
      const double hv = hypervolume(pts, r);

      auto shuffled = pts;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(hypervolume(shuffled, r) == doctest::Approx(hv));

      CHECK(hypervolume(nondominated_filter(pts), r) == doctest::Approx(hv));

      auto more = pts;
      more.push_back(random_points(rng, m, 1).front());
      CHECK(hypervolume(more, r) >= hv - 1e-9);

      auto dominated = pts;
      dominated.push_back(pts.front() * 0.5);
      CHECK(hypervolume(dominated, r) == doctest::Approx(hv));

      Eigen::VectorXi perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<ObjectiveVector> relabeled;
      for (const auto& p : pts) {
        ObjectiveVector q(m);
        for (int k = 0; k < m; ++k) q(k) = p(perm(k));
        relabeled.push_back(q);
      }
      CHECK(hypervolume(relabeled, r) == doctest::Approx(hv));
    }
  }
}

TEST_CASE("normalized hypervolume") {
  const auto fmax = vec({10, 20}), fmin = vec({0, 5});
  CHECK(normalized_hypervolume({fmax}, fmax, fmin, Orientation::maximize) == doctest::Approx(1.0));
  CHECK(normalized_hypervolume({fmin}, fmax, fmin, Orientation::maximize) ==
        doctest::Approx(std::pow(0.1 / 1.1, 2)));
  CHECK(normalized_hypervolume({}, fmax, fmin, Orientation::maximize) == 0.0);

  // minimization: best corner is f_min
  CHECK(normalized_hypervolume({fmin}, fmax, fmin, Orientation::minimize) == doctest::Approx(1.0));
  CHECK(normalized_hypervolume({fmax}, fmax, fmin, Orientation::minimize) ==
        doctest::Approx(std::pow(0.1 / 1.1, 2)));

  CHECK_THROWS_AS(normalized_hypervolume({fmax}, vec({1, 2}), vec({1, 0}), Orientation::maximize), ParameterError);
}

TEST_CASE("normalization from histories") {
  RunHistory h;
  h.worker_evaluations = {10};
  h.events = {ev(EventKind::init, 0, {}, 0, vec({1, 5})), ev(EventKind::accepted, 1, 0, 3, vec({4, 2})),
              ev(EventKind::explored, 0, {}, 5, vec({1, 5}))};
  const auto n = Normalization::from_histories({&h});
  CHECK(n.f_max == vec({4, 5}));
  CHECK(n.f_min == vec({1, 2}));
}

TEST_CASE("archive replay and anytime curve") {
  RunHistory h;
  h.worker_evaluations = {10, 4};
  h.events = {ev(EventKind::init, 0, {}, 0, vec({1, 1})),
              ev(EventKind::accepted, 2, 0, 3, vec({2, 2})),
              ev(EventKind::removed, 0, {}, 3, vec({1, 1})),
              ev(EventKind::accepted, 4, 2, 8, vec({3, 1})),
              ev(EventKind::init, 1, {}, 0, vec({1, 1}), 1),
              ev(EventKind::accepted, 3, 1, 2, vec({1, 3}), 1)};
  CHECK(archive_at(h, 0) == std::vector<ObjectiveVector>{vec({1, 1})});
  CHECK(archive_at(h, 2).size() == 1);
  CHECK(archive_at(h, 3).size() == 2);
  CHECK(archive_at(h, 100).size() == 3);

  const auto norm = Normalization::from_histories({&h});
  const auto curve = anytime_curve(h, {100, 0, 3, 8, 1000}, norm);
  REQUIRE(curve.size() == 5);
  CHECK(curve[0].checkpoint == 0);
  CHECK(curve[0].value == doctest::Approx(normalized_hypervolume({vec({1, 1})}, norm)));
  CHECK(curve[3].value == curve[4].value);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].value >= curve[i - 1].value);
}

TEST_CASE("anytime curves of PLS runs never decrease") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto p = generate_mubqp(12, 2, 0.8, 0.0, seed);
    RunSpec spec;
    spec.algorithm = Algorithm::pls;
    spec.base_seed = seed;
    const auto r = run(p, spec, random_initial_archive(p, seed));
    const auto norm = Normalization::from_histories({&r.history});
    std::vector<std::uint64_t> cps;
    for (std::uint64_t c = 0; c <= r.history.worker_evaluations[0]; c += 5) cps.push_back(c);
    const auto curve = anytime_curve(r.history, cps, norm);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].value >= curve[i - 1].value - 1e-12);
  }
}

TEST_CASE("acceptance rate") {
  RunHistory h;
  h.worker_evaluations = {100};
  h.events.push_back(ev(EventKind::init, 0, {}, 0, vec({0, 0})));
  for (HistoryId i = 1; i <= 5; ++i) h.events.push_back(ev(EventKind::accepted, i, 0, 10 * i, vec({1, 1})));
  auto rates = acceptance_rate(h, 100);
  REQUIRE(rates.size() == 1);
  CHECK(rates[0].rate == doctest::Approx(0.05));
  CHECK(rates[0].evaluations == 100);

  h.worker_evaluations = {150, 40};
  rates = acceptance_rate(h, 100);
  REQUIRE(rates.size() == 2);
  CHECK(rates[0].evaluations == 140);
  CHECK(rates[1].evaluations == 50);
  CHECK(rates[1].accepted == 0);

  h.worker_evaluations = {0};
  CHECK(acceptance_rate(h, 100).empty());
}

TEST_CASE("acceptance rates stay within [0, 1] on real runs") {
  const auto p = generate_mubqp(30, 2, 0.8, 0.0, 3);
  RunSpec spec;
  spec.H = 6;
  spec.base_seed = 4;
  const auto r = run(p, spec, random_initial_archive(p, 4));
  for (const auto& pt : acceptance_rate(r.history, 50)) {
    CHECK(pt.rate >= 0.0);
    CHECK(pt.rate <= 1.0);
    CHECK(pt.evaluations > 0);
  }
}

TEST_CASE("trajectory tree") {
  std::vector<HistoryEvent> events{ev(EventKind::init, 0, {}, 0, vec({0, 0})),
                                   ev(EventKind::accepted, 1, 0, 1, vec({1, 0})),
                                   ev(EventKind::accepted, 2, 0, 2, vec({0, 1})),
                                   ev(EventKind::accepted, 3, 0, 3, vec({1, 1})),
                                   ev(EventKind::explored, 0, {}, 3, vec({0, 0})),
                                   ev(EventKind::accepted, 4, 3, 4, vec({2, 1})),
                                   ev(EventKind::accepted, 5, 3, 5, vec({1, 2})),
                                   ev(EventKind::accepted, 6, 3, 6, vec({2, 2}))};
  const auto f = trajectory_tree(events);
  CHECK(f.nodes.size() == 7);
  REQUIRE(f.roots.size() == 1);
  CHECK(f.nodes[f.roots[0]].children.size() == 3);
  CHECK(f.nodes[3].children.size() == 3);
  const auto json = to_json(f);
  CHECK(json.find("\"roots\":[0]") != std::string::npos);

  CHECK(trajectory_tree({}).nodes.empty());

  events.push_back(ev(EventKind::accepted, 7, 99, 7, vec({3, 3})));
  CHECK_THROWS_AS(trajectory_tree(events), IntegrityError);
}

TEST_CASE("PPLS/D trajectory forest has one root per worker") {
  const auto p = generate_mubqp(20, 2, 0.8, 0.0, 5);
  RunSpec spec;
  spec.H = 6;
  spec.base_seed = 6;
  spec.stopping.max_evaluations = 500;
  const auto r = run(p, spec, random_initial_archive(p, 6));
  const auto f = trajectory_tree(r.history.events);
  CHECK(f.roots.size() == 7);
}
