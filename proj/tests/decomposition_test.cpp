#include <doctest.h>

#include <numbers>
#include <random>
#include <set>

#include "ppls/decomposition.hpp"
#include "support.hpp"

using namespace ppls;
using ppls::testing::vec;

TEST_CASE("weight counts") {
  CHECK(generate_weights(3, 4).size() == 15);
  CHECK(generate_weights(2, 6).size() == 7);
  const std::vector<std::tuple<int, int, std::size_t>> table{{2, 6, 7},   {2, 8, 9},   {2, 10, 11},
                                                             {3, 6, 28},  {3, 8, 45},  {3, 10, 66},
                                                             {4, 6, 84},  {4, 8, 165}, {4, 10, 286}};
  for (const auto& [m, H, L] : table) {
    CAPTURE(m);
    CAPTURE(H);
    CHECK(generate_weights(m, H).size() == L);
  }
  for (int m = 2; m <= 4; ++m) {
    for (int H = 1; H <= 10; ++H) {
      CHECK(generate_weights(m, H).size() == binomial(static_cast<unsigned>(H + m - 1), static_cast<unsigned>(m - 1)));
    }
  }
}

TEST_CASE("weights for m=2, H=2") {
  const auto w = generate_weights(2, 2);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == vec({0, 1}));
  CHECK(w[1] == vec({0.5, 0.5}));
  CHECK(w[2] == vec({1, 0}));
}

TEST_CASE("weights lie on the simplex grid and are distinct") {
  for (int m = 2; m <= 4; ++m) {
    const int H = 6;
    std::set<std::vector<long>> seen;
    for (const auto& w : generate_weights(m, H)) {
      CHECK(w.sum() == doctest::Approx(1.0));
      CHECK((w.array() >= 0.0).all());
      std::vector<long> grid;
      for (double x : w) {
        CHECK(x * H == doctest::Approx(std::round(x * H)));
        grid.push_back(std::lround(x * H));
      }
      CHECK(seen.insert(grid).second);
    }
  }
}

TEST_CASE("weight generation rejects bad parameters") {
  CHECK_THROWS_AS(generate_weights(1, 6), ParameterError);
  CHECK_THROWS_AS(generate_weights(2, 0), ParameterError);
}

TEST_CASE("acute angle") {
  CHECK(acute_angle(vec({1, 0}), vec({0, 1})) == doctest::Approx(std::numbers::pi / 2));
  CHECK(acute_angle(vec({1, 1}), vec({2, 2})) == doctest::Approx(0.0));
  CHECK(acute_angle(vec({1, 0}), vec({1, 1})) == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("subregion index") {
  const DecompositionScheme s(2, 2, vec({0, 0}));
  CHECK(s.subregion_index(vec({1, 1})) == 1);
  CHECK(s.subregion_index(vec({1, 0})) == 2);
  CHECK(s.subregion_index(vec({0, 1})) == 0);
  CHECK(s.subregion_index(vec({0, 0})) == 0);
  CHECK(s.in_subregion(vec({5, 5}), 1));
}

TEST_CASE("subregion index agrees with the smallest angle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int m = 2; m <= 4; ++m) {
    ObjectiveVector z(m);
    for (int k = 0; k < m; ++k) z(k) = u(rng);
    const DecompositionScheme s(m, 6, z);
    for (int t = 0; t < 500; ++t) {
      ObjectiveVector f(m);
      for (int k = 0; k < m; ++k) f(k) = u(rng);
      const auto idx = s.subregion_index(f);
      REQUIRE(idx < s.size());
      const double best = acute_angle(f - z, s.weight(idx));
      for (std::size_t l = 0; l < s.size(); ++l) CHECK(best <= acute_angle(f - z, s.weight(l)) + 1e-12);
    }
  }
}

TEST_CASE("central rays map to their own subregion") {
  for (int m = 2; m <= 4; ++m) {
    const ObjectiveVector z = ObjectiveVector::Constant(m, -3.0);
    const DecompositionScheme s(m, 6, z);
    for (std::size_t l = 0; l < s.size(); ++l) {
      for (double t : {0.01, 1.0, 250.0}) CHECK(s.subregion_index(z + t * s.weight(l)) == l);
    }
  }
}

TEST_CASE("tchebycheff") {
  CHECK(tchebycheff(vec({2, 4}), vec({0.5, 0.5}), vec({0, 0})) == doctest::Approx(4.0));
  CHECK(tchebycheff(vec({5, 9}), vec({1, 0}), vec({0, 0})) == doctest::Approx(5.0));
  for (const auto& w : generate_weights(3, 4)) CHECK(tchebycheff(vec({1, 2, 3}), w, vec({1, 2, 3})) == 0.0);
}

TEST_CASE("scheme validates z*") {
  CHECK_THROWS_AS(DecompositionScheme(2, 6, vec({0, 0, 0})), ContractViolation);
  CHECK_THROWS_AS(DecompositionScheme(2, 6, vec({0, std::numeric_limits<double>::infinity()})), ContractViolation);
}
