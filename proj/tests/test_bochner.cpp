#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "slinf/bochner.hpp"
#include "slinf/kernels.hpp"

using namespace slinf;

namespace {

std::vector<std::pair<GroupElement, complexd>> sample_positive(
    const DiscreteParamMeasure& mu, int count, int dim) {
  std::vector<std::pair<GroupElement, complexd>> out;
  for (const CartanProfile& prof : lowdisc_profiles(count, dim)) {
    GroupElement g = GroupElement::from_profile(prof);
    out.emplace_back(std::move(g), synth_positive(mu, prof));
  }
  return out;
}

std::vector<std::pair<GroupElement, complexd>> sample_negative(
    const DiscreteParamMeasure& mu, double psi0, int count, int dim) {
  std::vector<std::pair<GroupElement, complexd>> out;
  for (const CartanProfile& prof : lowdisc_profiles(count, dim)) {
    GroupElement g = GroupElement::from_profile(prof);
    out.emplace_back(std::move(g), synth_negative(mu, psi0, prof) - psi0);
  }
  return out;
}

}  // namespace

TEST_CASE("DiscreteParamMeasure: merging, validation, restriction") {
  const DiscreteParamMeasure mu({make_alpha({1.0}), make_alpha({1.0}), Alpha{}},
                                {0.25, 0.5, 1.0});
  CHECK(mu.size() == 2);  // duplicates merged
  CHECK(mu.total_weight() == Catch::Approx(1.75));
  CHECK(mu.nontrivial_mass() == Catch::Approx(0.75));

  const auto restricted = mu.restricted_to_nontrivial();
  CHECK(restricted.size() == 1);
  CHECK(restricted.total_weight() == Catch::Approx(0.75));

  CHECK_THROWS_AS(DiscreteParamMeasure({Alpha{}}, {-0.1}), validation_error);
  CHECK_THROWS_AS(DiscreteParamMeasure({Alpha{}}, {0.1, 0.2}), validation_error);
}

TEST_CASE("synth_positive: named values and bounds") {
  const GroupElement g0 = canonical_g0();

  const DiscreteParamMeasure trivial({Alpha{}}, {1.0});
  CHECK(synth_positive(trivial, g0) == complexd{1.0, 0.0});

  const DiscreteParamMeasure at0({make_alpha({0.0})}, {1.0});
  CHECK(std::abs(synth_positive(at0, g0) - complexd{0.4199743416140261, 0.0}) < 1e-12);

  const DiscreteParamMeasure mix({make_alpha({0.0}), Alpha{}}, {0.5, 0.5});
  CHECK(std::abs(synth_positive(mix, g0) - complexd{0.7099871708070131, 0.0}) < 1e-12);

  // phi(e) = total weight, |phi| <= total weight
  const DiscreteParamMeasure mu({make_alpha({1.0, -2.0}), make_alpha({0.3})}, {0.9, 0.4});
  CHECK(std::abs(synth_positive(mu, GroupElement::identity(3)) -
                 complexd{1.3, 0.0}) < 1e-12);
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    CHECK(std::abs(synth_positive(mu, random_sl(4, seed))) <= 1.3 + 1e-12);
}

TEST_CASE("synth_negative: named values, offsets, hermitian symmetry") {
  const GroupElement g0 = canonical_g0();

  CHECK(synth_negative(DiscreteParamMeasure{}, 0.0, g0) == complexd{0.0, 0.0});

  const DiscreteParamMeasure at0({make_alpha({0.0})}, {1.0});
  CHECK(std::abs(synth_negative(at0, 0.0, g0) - complexd{0.5800256583859739, 0.0}) < 1e-12);
  CHECK(std::abs(synth_negative(at0, 0.0, GroupElement::identity(2))) < 1e-15);
  CHECK(synth_negative(at0, 0.7, GroupElement::identity(2)) == complexd{0.7, 0.0});

  CHECK_THROWS_AS(synth_negative(at0, -0.1, g0), validation_error);

  const DiscreteParamMeasure mu({make_alpha({1.5, -0.2})}, {0.8});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GroupElement g = random_sl(4, seed);
    CHECK(std::abs(synth_negative(mu, 0.2, g.inverse()) -
                   std::conj(synth_negative(mu, 0.2, g))) < 1e-12);
  }
}

TEST_CASE("mass at the trivial point is invisible to synth_negative") {
  const DiscreteParamMeasure bare({make_alpha({0.7})}, {0.9});
  const DiscreteParamMeasure padded({make_alpha({0.7}), Alpha{}}, {0.9, 123.0});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CartanProfile prof = cartan_profile(random_sl(3, seed));
    const complexd a = synth_negative(bare, 0.4, prof);
    const complexd b = synth_negative(padded, 0.4, prof);
    CHECK(a.real() == b.real());  // bit-identical
    CHECK(a.imag() == b.imag());
  }
}

TEST_CASE("decomposition identity psi = psi(e) + phi(e) - phi") {
  const DiscreteParamMeasure mu(
      {make_alpha({0.0}), make_alpha({1.0, 2.0}), Alpha{}}, {0.3, 0.45, 0.7});
  const double psi0 = 0.25;
  const DiscreteParamMeasure star = mu.restricted_to_nontrivial();
  const double phi_e = star.total_weight();
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const CartanProfile prof = cartan_profile(random_sl(5, seed));
    const complexd psi = synth_negative(mu, psi0, prof);
    const complexd rhs = psi0 + phi_e - synth_positive(star, prof);
    CHECK(std::abs(psi - rhs) < 1e-12);
  }
}

TEST_CASE("mixtures stay positive / negative type (Gram certificates)") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Rng rng(derive_seed(31, seed));
    std::vector<Alpha> atoms;
    std::vector<double> weights;
    const int natoms = 1 + static_cast<int>(rng.uniform() * 3);
    for (int k = 0; k < natoms; ++k) {
      const std::size_t p = 1 + static_cast<std::size_t>(rng.uniform() * 2);
      std::vector<double> v(p);
      for (double& x : v) x = rng.uniform(-3.0, 3.0);
      atoms.push_back(make_alpha(std::move(v)));
      weights.push_back(rng.uniform(0.05, 2.0));
    }
    const DiscreteParamMeasure mu(atoms, weights);
    const double psi0 = rng.uniform(0.0, 1.0);

    std::vector<GroupElement> els;
    for (int i = 0; i < 12; ++i)
      els.push_back(random_sl(4, derive_seed(seed, static_cast<std::uint64_t>(i))));

    const auto phi = [&mu](const GroupElement& g) { return synth_positive(mu, g); };
    CHECK(psd_check(gram_matrix(phi, els)).passed);

    const auto psi = [&](const GroupElement& g) { return synth_negative(mu, psi0, g); };
    CHECK(negtype_check(gram_matrix(psi, els)).passed);
    CHECK(schoenberg_check(psi, els, {0.1, 1.0, 10.0}).passed);
  }
}

TEST_CASE("boundedness_check: bound, stress rows, approach to the limit") {
  const auto empty = boundedness_check(DiscreteParamMeasure{}, 0.0, 4, 10, 0);
  CHECK(empty.observed_sup == 0.0);
  CHECK(empty.passed);

  const DiscreteParamMeasure at0({make_alpha({0.0})}, {1.0});
  const auto rep = boundedness_check(at0, 0.0, 4, 50, 1);
  CHECK(rep.passed);
  CHECK(rep.bound == Catch::Approx(2.0).margin(1e-9));
  REQUIRE(rep.stress_rows.size() == 10);
  // |psi - psi(e)| at stress lambda = 10 is 1 - sech^2(10), essentially the
  // nontrivial mass: phi -> 0 along the stress profiles
  CHECK(rep.stress_rows.back().second == Catch::Approx(0.9999999917553856).epsilon(1e-10));
  CHECK(rep.observed_sup <= rep.bound);

  const DiscreteParamMeasure two({make_alpha({0.0}), make_alpha({1.0})}, {0.3, 0.7});
  const auto rep2 = boundedness_check(two, 0.1, 4, 50, 2);
  CHECK(rep2.bound == Catch::Approx(2.0).margin(1e-9));
  CHECK(rep2.observed_sup <= 1.0);  // real-profile elements cannot reach 2 mass
  CHECK(rep2.passed);

  CHECK_THROWS_AS(boundedness_check(at0, 0.0, 4, 0, 0), validation_error);
}

TEST_CASE("nnls solves small systems with active constraints") {
  Eigen::MatrixXd A(3, 2);
  A << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
  Eigen::VectorXd b(3);
  b << 1.0, -2.0, 0.0;
  const auto sol = nnls(A, b);
  CHECK(sol.converged);
  CHECK(sol.x(1) == 0.0);               // constrained at the boundary
  CHECK(sol.x(0) == Catch::Approx(0.5));  // unconstrained LS of column 1
}

TEST_CASE("fit_measure roundtrips grid-supported measures") {
  const std::vector<Alpha> grid{Alpha{}, make_alpha({0.0}), make_alpha({1.0})};

  // constant 1 puts all mass on the trivial atom
  const DiscreteParamMeasure trivial({Alpha{}}, {1.0});
  const auto fit0 = fit_measure(sample_positive(trivial, 60, 6), grid);
  CHECK_FALSE(fit0.ill_conditioned);
  CHECK(fit0.residual < 1e-10);
  for (std::size_t k = 0; k < fit0.measure.size(); ++k) {
    const double expect = fit0.measure.atoms()[k].trivial() ? 1.0 : 0.0;
    CHECK(fit0.measure.weights()[k] == Catch::Approx(expect).margin(1e-6));
  }

  // single atom at (0,)
  const DiscreteParamMeasure at0({make_alpha({0.0})}, {1.0});
  const auto fit1 = fit_measure(sample_positive(at0, 60, 6), grid);
  for (std::size_t k = 0; k < fit1.measure.size(); ++k) {
    const double expect = fit1.measure.atoms()[k] == make_alpha({0.0}) ? 1.0 : 0.0;
    CHECK(fit1.measure.weights()[k] == Catch::Approx(expect).margin(1e-6));
  }

  // mixture
  const DiscreteParamMeasure mix({make_alpha({0.0}), make_alpha({1.0})}, {0.4, 0.6});
  const auto fit2 = fit_measure(sample_positive(mix, 60, 6), grid);
  for (std::size_t k = 0; k < fit2.measure.size(); ++k) {
    double expect = 0.0;
    if (fit2.measure.atoms()[k] == make_alpha({0.0})) expect = 0.4;
    if (fit2.measure.atoms()[k] == make_alpha({1.0})) expect = 0.6;
    CHECK(fit2.measure.weights()[k] == Catch::Approx(expect).margin(1e-6));
  }

  CHECK_THROWS_AS(fit_measure({}, grid), validation_error);
  CHECK_THROWS_AS(fit_measure(sample_positive(mix, 5, 6), {}), validation_error);
}

TEST_CASE("measures differing on R* are distinguishable; duplicates flag conditioning") {
  // data from an atom at (0,) cannot be explained by an atom at (1,)
  const DiscreteParamMeasure at0({make_alpha({0.0})}, {1.0});
  const auto samples = sample_positive(at0, 60, 6);
  const auto wrong_grid = fit_measure(samples, {make_alpha({1.0})});
  CHECK(wrong_grid.residual > 1e-3);

  const auto right_grid = fit_measure(samples, {make_alpha({0.0}), make_alpha({1.0})});
  CHECK(right_grid.residual < 1e-10);
  CHECK(right_grid.residual + 1e-3 < wrong_grid.residual);

  // duplicated grid atoms produce a singular design: flagged, still fit
  const auto dup = fit_measure(samples, {make_alpha({0.0}), make_alpha({0.0})});
  CHECK(dup.ill_conditioned);
  CHECK(dup.residual < 1e-8);
}

TEST_CASE("fit_negative_measure ignores trivial mass (uniqueness on R*)") {
  const std::vector<Alpha> grid{Alpha{}, make_alpha({0.0}), make_alpha({1.0})};
  const DiscreteParamMeasure bare({make_alpha({0.0})}, {0.7});
  const DiscreteParamMeasure padded({make_alpha({0.0}), Alpha{}}, {0.7, 0.5});

  const auto fit_bare = fit_negative_measure(sample_negative(bare, 0.2, 60, 6), grid);
  const auto fit_padded = fit_negative_measure(sample_negative(padded, 0.2, 60, 6), grid);

  for (std::size_t k = 0; k < fit_bare.measure.size(); ++k) {
    const Alpha& atom = fit_bare.measure.atoms()[k];
    const double wb = fit_bare.measure.weights()[k];
    const double wp = fit_padded.measure.weights()[k];
    CHECK(wb == Catch::Approx(wp).margin(1e-9));  // identical fits
    if (atom == make_alpha({0.0})) CHECK(wb == Catch::Approx(0.7).margin(1e-6));
    if (atom.trivial()) CHECK(wb == 0.0);  // structurally non-identifiable
  }
  // the trivial column being zero makes the design singular by construction
  CHECK(fit_bare.ill_conditioned);
}

TEST_CASE("lowdisc_profiles: zero-sum designs in the requested box") {
  const auto profs = lowdisc_profiles(50, 6);
  REQUIRE(profs.size() == 50);
  for (const auto& prof : profs) {
    double sum = 0.0;
    for (double l : prof.values()) {
      CHECK(std::abs(l) <= 4.0);  // [-2,2] minus a mean stays within [-4,4]
      sum += l;
    }
    CHECK(std::abs(sum) < 1e-12);
  }
  CHECK_THROWS_AS(lowdisc_profiles(0, 6), validation_error);
  CHECK_THROWS_AS(lowdisc_profiles(5, 1), validation_error);
}
