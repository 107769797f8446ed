#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "slinf/alpha.hpp"
#include "slinf/rng.hpp"

using namespace slinf;

namespace {

// independent oracle: expand prod_k (x - a_k) and read off e_k = (-1)^k c_{p-k}
std::vector<double> elementary_by_expansion(const std::vector<double>& roots) {
  std::vector<double> coeff{1.0};  // descending powers
  for (double r : roots) {
    std::vector<double> next(coeff.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      next[i] += coeff[i];
      next[i + 1] -= r * coeff[i];
    }
    coeff = std::move(next);
  }
  std::vector<double> e(roots.size());
  double sign = -1.0;
  for (std::size_t k = 1; k <= roots.size(); ++k) {
    e[k - 1] = sign * coeff[k];
    sign = -sign;
  }
  return e;
}

}  // namespace

TEST_CASE("make_alpha canonicalizes into the stratum") {
  CHECK(make_alpha({}).order() == 0);
  CHECK(make_alpha({}).trivial());

  const Alpha a = make_alpha({2.0, 1.0});
  CHECK(a.values() == std::vector<double>{1.0, 2.0});

  const Alpha dup = make_alpha({0.5, 0.5});
  CHECK(dup.order() == 2);
  CHECK(dup[0] == 0.5);
  CHECK(dup[1] == 0.5);

  CHECK_THROWS_AS(make_alpha({1.0, std::numeric_limits<double>::infinity()}),
                  validation_error);
  CHECK_THROWS_AS(make_alpha({std::nan("")}), validation_error);
}

TEST_CASE("power sums and the p_{-1} = 0 convention") {
  const Alpha a = make_alpha({1.0, 2.0});
  CHECK(power_sum(a, 0) == 2.0);
  CHECK(power_sum(a, -1) == 0.0);
  CHECK(power_sum(make_alpha({-3.0, 0.7}), -1) == 0.0);
  CHECK(power_sum(a, 2) == Catch::Approx(5.0));  // 1 + 4

  const Alpha empty;
  CHECK(power_sum(empty, 0) == 0.0);
  CHECK(power_sum(empty, 3) == 0.0);

  CHECK_THROWS_AS(power_sum(a, -2), validation_error);
}

TEST_CASE("shifted power sums") {
  const Alpha a = make_alpha({1.0, 2.0});
  CHECK(shifted_power_sum(a, 0) == Catch::Approx(3.0));  // p1 + p_{-1}
  CHECK(shifted_power_sum(a, 1) == Catch::Approx(7.0));  // p2 + p0
  CHECK(shifted_power_sum(Alpha{}, 5) == 0.0);
  CHECK_THROWS_AS(shifted_power_sum(a, -1), validation_error);
}

TEST_CASE("param_distance: sup metric within a stratum, +inf across strata") {
  CHECK(param_distance(make_alpha({1.0, 2.0}), make_alpha({1.0, 2.0})) == 0.0);
  CHECK(param_distance(make_alpha({0.0}), make_alpha({0.25})) == Catch::Approx(0.25));
  CHECK(std::isinf(param_distance(make_alpha({0.0}), make_alpha({0.0, 0.0}))));
  CHECK(param_distance(Alpha{}, Alpha{}) == 0.0);
}

TEST_CASE("param_distance is a metric on each stratum") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 1 + static_cast<std::size_t>(rng.uniform() * 5);
    auto draw = [&] {
      std::vector<double> v(p);
      for (double& x : v) x = rng.uniform(-5.0, 5.0);
      return make_alpha(std::move(v));
    };
    const Alpha a = draw(), b = draw(), c = draw();
    CHECK(param_distance(a, b) == Catch::Approx(param_distance(b, a)));
    CHECK(param_distance(a, a) == 0.0);
    CHECK(param_distance(a, c) <= param_distance(a, b) + param_distance(b, c) + 1e-15);
  }
}

TEST_CASE("elementary symmetric values from power sums") {
  CHECK(elementary_from_power_sums({3.0, 5.0}, 2) ==
        std::vector<double>{3.0, 2.0});  // roots {1,2}
  CHECK(elementary_from_power_sums({7.0}, 1) == std::vector<double>{7.0});
  CHECK(elementary_from_power_sums({0.0, 0.0, 0.0}, 3) ==
        std::vector<double>{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(elementary_from_power_sums({1.0, 2.0}, 3), validation_error);

  // Newton identities agree with direct polynomial expansion
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 1 + static_cast<std::size_t>(rng.uniform() * 6);
    std::vector<double> roots(p);
    for (double& r : roots) r = rng.uniform(-5.0, 5.0);
    const Alpha a = make_alpha(roots);
    std::vector<double> ps(p);
    for (std::size_t m = 1; m <= p; ++m) ps[m - 1] = power_sum(a, static_cast<int>(m));
    const auto e_newton = elementary_from_power_sums(ps, p);
    const auto e_expand = elementary_by_expansion(a.values());
    for (std::size_t k = 0; k < p; ++k)
      CHECK(e_newton[k] == Catch::Approx(e_expand[k]).margin(1e-9));
  }
}

TEST_CASE("roots from elementary symmetric values") {
  const Alpha r12 = roots_from_elementary({3.0, 2.0});  // x^2 - 3x + 2
  REQUIRE(r12.order() == 2);
  CHECK(r12[0] == Catch::Approx(1.0));
  CHECK(r12[1] == Catch::Approx(2.0));
  CHECK(roots_from_elementary({0.0}).values() == std::vector<double>{0.0});

  const Alpha pm = roots_from_elementary({0.0, -1.0});  // x^2 - 1
  CHECK(pm[0] == Catch::Approx(-1.0));
  CHECK(pm[1] == Catch::Approx(1.0));

  // x^2 + 1 has no real roots
  CHECK_THROWS_AS(roots_from_elementary({0.0, 1.0}), nonreal_spectrum_error);
}

TEST_CASE("power-sum -> elementary -> roots roundtrip, 1000 seeds") {
  Rng rng(424242);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t p = 1 + static_cast<std::size_t>(rng.uniform() * 6);
    std::vector<double> vals(p);
    for (double& v : vals) v = rng.uniform(-5.0, 5.0);
    const Alpha a = make_alpha(vals);

    std::vector<double> ps(p);
    for (std::size_t m = 1; m <= p; ++m) ps[m - 1] = power_sum(a, static_cast<int>(m));
    const Alpha back = roots_from_elementary(elementary_from_power_sums(ps, p));
    REQUIRE(back.order() == p);
    worst = std::max(worst, param_distance(a, back));
  }
  CHECK(worst <= 1e-10);
}
