#include <doctest.h>

#include <random>

#include "ppls/core.hpp"
#include "support.hpp"

using namespace ppls;
using ppls::testing::vec;

namespace {

Archive<int>::Entry entry(const ObjectiveVector& f, HistoryId id = 0) { return {{0, f}, false, id}; }

bool pairwise_nondominated_and_unique(const Archive<int>& a) {
  for (const auto& x : a) {
    for (const auto& y : a) {
      if (&x == &y) continue;
      if (dominates(x.objectives(), y.objectives()) || x.objectives() == y.objectives()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("dominance") {
  CHECK(dominates(vec({3, 4}), vec({2, 4})));
  CHECK_FALSE(dominates(vec({3, 4}), vec({3, 4})));
  CHECK_FALSE(dominates(vec({3, 1}), vec({1, 3})));
  CHECK_FALSE(dominates(vec({1, 3}), vec({3, 1})));
  CHECK(weakly_dominates(vec({3, 4}), vec({3, 4})));
  CHECK_THROWS_AS(dominates(vec({1, 2}), vec({1, 2, 3})), ContractViolation);
}

TEST_CASE("dominance is irreflexive, asymmetric and transitive") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(0, 4);
  for (int t = 0; t < 2000; ++t) {
    ObjectiveVector a(3), b(3), c(3);
    for (int k = 0; k < 3; ++k) {
      a(k) = d(rng);
      b(k) = d(rng);
      c(k) = d(rng);
    }
    CHECK_FALSE(dominates(a, a));
    if (dominates(a, b)) CHECK_FALSE(dominates(b, a));
    if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
  }
}

TEST_CASE("archive update") {
  Archive<int> a;
  CHECK(a.update(entry(vec({3, 3}))).accepted);
  auto r = a.update(entry(vec({4, 2})));
  CHECK(r.accepted);
  CHECK(r.removed.empty());
  CHECK(a.size() == 2);

  r = a.update(entry(vec({4, 4})));
  CHECK(r.accepted);
  CHECK(r.removed.size() == 2);
  REQUIRE(a.size() == 1);
  CHECK(a.entries()[0].objectives() == vec({4, 4}));

  r = a.update(entry(vec({4, 4})));
  CHECK_FALSE(r.accepted);
  CHECK(a.size() == 1);

  CHECK_FALSE(a.update(entry(vec({1, 1}))).accepted);
}

TEST_CASE("archive entries enter unexplored") {
  Archive<int> a;
  auto e = entry(vec({1, 2}), 5);
  e.explored = true;
  a.update(e);
  CHECK(a.has_unexplored());
  a.find(5)->explored = true;
  CHECK_FALSE(a.has_unexplored());
  a.mark_all_unexplored();
  CHECK(a.has_unexplored());
  CHECK(a.find(6) == nullptr);
}

TEST_CASE("archive stays non-dominated under random updates") {
  std::mt19937_64 rng(11);
  for (int m = 2; m <= 4; ++m) {
    Archive<int> a;
    std::uniform_int_distribution<int> d(0, 20);
    for (int t = 0; t < 3000; ++t) {
      ObjectiveVector f(m);
      for (int k = 0; k < m; ++k) f(k) = d(rng);
      const bool covered = a.dominated_or_equal(f);
      const auto r = a.update(entry(f, static_cast<HistoryId>(t)));
      CHECK(r.accepted == !covered);
    }
    CHECK(pairwise_nondominated_and_unique(a));
  }
}

TEST_CASE("nondominated_filter") {
  auto kept = nondominated_filter({vec({1, 3}), vec({3, 1}), vec({2, 2})});
  CHECK(kept.size() == 3);
  CHECK(kept[0] == vec({1, 3}));
  CHECK(kept[2] == vec({3, 1}));

  kept = nondominated_filter({vec({1, 1}), vec({2, 2})});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0] == vec({2, 2}));

  CHECK(nondominated_filter(std::vector<ObjectiveVector>{}).empty());

  kept = nondominated_filter({vec({2, 2}), vec({2, 2}), vec({1, 3})});
  CHECK(kept.size() == 2);
}

TEST_CASE("nondominated_filter keeps the first of duplicate solutions") {
  std::vector<Solution<int>> s{{1, vec({2, 2})}, {2, vec({2, 2})}, {3, vec({0, 0})}};
  auto kept = nondominated_filter(s);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].genotype == 1);
}

TEST_CASE("nondominated_filter agrees with archive insertion") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(0, 10);
  for (int t = 0; t < 50; ++t) {
    std::vector<ObjectiveVector> pts;
    Archive<int> a;
    for (int i = 0; i < 40; ++i) {
      ObjectiveVector f(3);
      for (int k = 0; k < 3; ++k) f(k) = d(rng);
      pts.push_back(f);
      a.update(entry(f));
    }
    auto filtered = nondominated_filter(pts);
    auto archived = a.objective_vectors();
    std::sort(archived.begin(), archived.end(), lexicographic_less);
    CHECK(filtered == archived);
  }
}

TEST_CASE("orientation conversion") {
  CHECK(to_internal(vec({100, 120}), Orientation::minimize) == vec({-100, -120}));
  CHECK(to_reported(vec({-100, -120}), Orientation::minimize) == vec({100, 120}));
  CHECK(to_internal(vec({1, 2}), Orientation::maximize) == vec({1, 2}));
}

TEST_CASE("format_number round-trips") {
  CHECK(format_number(0.8) == "0.8");
  CHECK(format_number(-3) == "-3");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    CHECK(std::stod(format_number(v)) == v);
  }
}
