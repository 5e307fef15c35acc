#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ssv/bounds.hpp"
#include "ssv/core.hpp"

using namespace ssv;

TEST_CASE("rogozin bound formula and clamping") {
  ConstantsConfig cfg;
  const std::vector<std::pair<double, double>> eight(8, {1.0, 0.5});
  const auto b = rogozin_bound(1.0, eight, cfg);
  CHECK(b.raw == doctest::Approx(0.5));
  CHECK(b.value == doctest::Approx(0.5));
  CHECK(b.radius == 1.0);

  CHECK_THROWS_AS(rogozin_bound(0.5, {{1.0, 0.5}}, cfg), PreconditionError);
  CHECK_THROWS_AS(rogozin_bound(1.0, {{1.0, 1.0}}, cfg), DegenerateError);
  CHECK_THROWS_AS(rogozin_bound(1.0, {}, cfg), ArgumentError);

  const auto clamped = rogozin_bound(1.0, {{1.0, 0.9}}, cfg);
  CHECK(clamped.raw == doctest::Approx(std::sqrt(10.0)));
  CHECK(clamped.value == 1.0);
}

TEST_CASE("rogozin bound monotonicity") {
  ConstantsConfig cfg;
  std::vector<std::pair<double, double>> terms = {{1.0, 0.4}, {0.5, 0.7}};
  double prev = 0.0;
  for (double h = 1.0; h <= 3.0; h += 0.25) {
    const double v = rogozin_bound(h, terms, cfg).raw;
    CHECK(v >= prev);
    prev = v;
  }
  // adding a spread term can only lower the bound
  const double before = rogozin_bound(1.0, terms, cfg).raw;
  terms.push_back({1.0, 0.2});
  CHECK(rogozin_bound(1.0, terms, cfg).raw <= before);
}

TEST_CASE("projection small-ball bound") {
  ConstantsConfig cfg;
  CHECK(rv_projection_bound(0.5, 2, cfg).value == doctest::Approx(0.25));
  CHECK(rv_projection_bound(0.1, 3, cfg).value == doctest::Approx(0.001));
  cfg.c_rv = 2.0;
  CHECK(rv_projection_bound(0.5, 1, cfg).value == 1.0);
  CHECK(rv_projection_bound(0.5, 1, cfg).raw == doctest::Approx(1.0));
}

TEST_CASE("extension bound and the ell choice") {
  ConstantsConfig cfg;
  const auto b = rv_extension_bound(1.0, 1.0, 4, 4, cfg);
  CHECK(b.value == doctest::Approx(0.5));
  CHECK(b.radius == doctest::Approx(0.5));

  CHECK(choose_ell(0.25, cfg) == 16);
  const double base = cfg.c_rv * cfg.c_rogozin / std::sqrt(16.0 * 0.25);
  CHECK(base == doctest::Approx(0.5));

  const auto trivial = rv_extension_bound(1.0, 0.5, 1, 1, cfg);
  CHECK(trivial.value == 1.0);
  CHECK(trivial.raw > 1.0);
}

TEST_CASE("chosen ell always makes the base non-trivial") {
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    ConstantsConfig cfg;
    cfg.c_rv = 0.25 + 3.0 * counter_uniform(10, trial, 0);
    cfg.c_rogozin = 0.25 + 3.0 * counter_uniform(11, trial, 0);
    const double tau = 0.01 + 0.98 * counter_uniform(12, trial, 0);
    const int ell = choose_ell(tau, cfg);
    const double base = cfg.c_rv * cfg.c_rogozin / std::sqrt(ell * tau);
    CHECK(base <= 0.5 + 1e-12);
  }
}

TEST_CASE("distance and peakiness thresholds") {
  ConstantsConfig cfg;
  CHECK(distance_threshold(16.0, 0.5, 1.0, 1.0, cfg) == doctest::Approx(0.125));
  CHECK(distance_threshold(16.0, 0.5, 2.0, 3.0, cfg) == doctest::Approx(0.75));
  CHECK(peaky_threshold(0.5, 16.0, cfg) == doctest::Approx(0.125));
  CHECK(peaky_threshold(0.5, 16.0, cfg) ==
        distance_threshold(16.0, 0.5, 1.0, 1.0, cfg));
  CHECK(peaky_threshold(0.125, 2.0, cfg) ==
        doctest::Approx(0.0198879).epsilon(1e-4));
  // the threshold vanishes as delta -> 1+
  CHECK(distance_threshold(1.0 + 1e-9, 0.5, 1.0, 1.0, cfg) ==
        doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("default c_detect matches the geometric series inverse") {
  ConstantsConfig cfg;
  double series = 0.0;
  for (int m = 0; m < 4000; ++m) series += std::pow(2.0, -m / 8.0);
  CHECK(std::abs(cfg.c_detect - 1.0 / series) < 1e-12);
  CHECK(cfg.c_detect == doctest::Approx(1.0 - std::pow(2.0, -0.125)));
  CHECK(cfg.c_net == doctest::Approx(6.0 * std::exp(1.0)));
}

TEST_CASE("bound values always clamp to [0,1]") {
  ConstantsConfig cfg;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const double eta = 0.01 + 0.98 * counter_uniform(20, trial, 0);
    const int d = 1 + static_cast<int>(counter_hash(21, trial, 0) % 6);
    const auto b = rv_projection_bound(eta, d, cfg);
    CHECK(b.value >= 0.0);
    CHECK(b.value <= 1.0);
  }
}

TEST_CASE("constants file round trip and validation") {
  ConstantsConfig cfg;
  cfg.c_rogozin = 0.02;
  cfg.c_net = 1.0;
  const std::string path = "constants_test.tmp";
  {
    std::ofstream out(path);
    out << "# calibrated for desk-scale runs\n";
    out << cfg.to_string();
  }
  const auto loaded = ConstantsConfig::load(path);
  CHECK(loaded.c_rogozin == cfg.c_rogozin);
  CHECK(loaded.c_net == cfg.c_net);
  CHECK(loaded.c_detect == cfg.c_detect);
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "c_bogus=1\n";
  }
  CHECK_THROWS_AS(ConstantsConfig::load(path), ConfigurationError);
  std::remove(path.c_str());

  ConstantsConfig bad;
  bad.c_detect = 2.0;
  CHECK_THROWS_AS(bad.validate(), ConfigurationError);
}
