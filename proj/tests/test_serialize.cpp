#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "slinf/serialize.hpp"

using namespace slinf;

TEST_CASE("Alpha <-> JSON: the trivial point is the empty array") {
  CHECK(alpha_to_json(Alpha{}).dump() == "[]");
  CHECK(alpha_from_json(json::parse("[]")).trivial());

  const Alpha a = make_alpha({2.0, -1.25});
  const Alpha back = alpha_from_json(alpha_to_json(a));
  CHECK(back == a);

  CHECK_THROWS_AS(alpha_from_json(json::parse("{\"x\":1}")), io_error);
  CHECK_THROWS_AS(alpha_from_json(json::parse("[1, \"two\"]")), io_error);
}

TEST_CASE("CartanProfile <-> JSON") {
  const CartanProfile prof({1.5, -0.5, -1.0});
  const CartanProfile back = profile_from_json(profile_to_json(prof));
  REQUIRE(back.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(back[j] == prof[j]);
  CHECK_THROWS_AS(profile_from_json(json::parse("[]")), io_error);
}

TEST_CASE("GroupElement <-> JSON: row-major re/im pairs") {
  const GroupElement g = random_sl(3, 5);
  const json j = element_to_json(g);
  CHECK(j.at("n") == 3);
  CHECK(j.at("entries").size() == 18);

  const GroupElement back = element_from_json(j);
  CHECK((back.matrix() - g.matrix()).cwiseAbs().maxCoeff() == 0.0);

  json corrupt = j;
  corrupt["entries"][0] = 100.0;  // breaks unimodularity
  CHECK_THROWS_AS(element_from_json(corrupt), validation_error);
  CHECK_THROWS_AS(element_from_json(json::parse("{\"n\":2,\"entries\":[1,2,3]}")),
                  io_error);
}

TEST_CASE("measure <-> JSON with psi_at_e") {
  const DiscreteParamMeasure mu({make_alpha({0.0}), make_alpha({1.0, 2.0})}, {0.5, 0.25});
  const json j = measure_to_json(mu, 0.75);

  const MeasureFile back = measure_from_json(j);
  CHECK(back.psi_at_e == 0.75);
  CHECK(back.measure.size() == 2);
  CHECK(back.measure.total_weight() == Catch::Approx(0.75));

  // psi_at_e defaults to zero and must be nonnegative
  CHECK(measure_from_json(json::parse(R"({"atoms":[]})")).psi_at_e == 0.0);
  CHECK_THROWS_AS(measure_from_json(json::parse(R"({"psi_at_e":-1,"atoms":[]})")),
                  validation_error);
  CHECK_THROWS_AS(measure_from_json(json::parse("[]")), io_error);
}

TEST_CASE("GramReport JSON carries the witness when failed") {
  Eigen::MatrixXcd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;
  const json failed = gram_report_to_json(psd_check(bad));
  CHECK(failed.at("passed") == false);
  CHECK(failed.at("witness").is_array());
  CHECK(failed.at("witness").size() == 2);

  const json ok = gram_report_to_json(psd_check(Eigen::MatrixXcd::Identity(2, 2)));
  CHECK(ok.at("passed") == true);
  CHECK(ok.at("witness").is_null());
}

TEST_CASE("ClassBSamples CSV roundtrip is exact") {
  std::vector<double> lambdas;
  std::vector<complexd> values;
  const Alpha a = make_alpha({-1.0, 0.5, 2.0});
  for (int k = -5; k <= 5; ++k) {
    lambdas.push_back(0.37 * k);
    values.push_back(pi_eval(a, 0.37 * k));
  }
  const ClassBSamples samples(lambdas, values);

  std::stringstream ss;
  samples_to_csv(samples, ss);
  const ClassBSamples back = samples_from_csv(ss);
  REQUIRE(back.size() == samples.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back.lambdas[k] == samples.lambdas[k]);
    CHECK(back.values[k] == samples.values[k]);
  }

  std::stringstream bad("lambda,re,im\n1.0,2.0\n");
  CHECK_THROWS_AS(samples_from_csv(bad), io_error);
  std::stringstream nonnum("lambda,re,im\n1.0,x,0\n");
  CHECK_THROWS_AS(samples_from_csv(nonnum), io_error);
}

TEST_CASE("DensityGrid CSV roundtrip") {
  const DensityGrid d = density_grid(make_alpha({0.0}), 5.0, 0.5);
  std::stringstream ss;
  density_to_csv(d, ss);
  const DensityGrid back = density_from_csv(ss);
  CHECK(back.t_min == d.t_min);
  CHECK(back.step == d.step);
  CHECK(back.values == d.values);

  std::stringstream nonuniform("t,value\n0,1\n0.5,1\n1.7,1\n");
  CHECK_THROWS_AS(density_from_csv(nonuniform), io_error);
}
