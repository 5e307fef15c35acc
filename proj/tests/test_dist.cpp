#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ssv/dist.hpp"

using namespace ssv;

namespace {

// brute-force oracle: the sup over windows [l-a, l+a] with l ranging over all
// sample points and all midpoints of sample pairs
double brute_force_concentration(const std::vector<double>& samples, double a) {
  std::vector<double> centers(samples);
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i; j < samples.size(); ++j)
      centers.push_back(0.5 * (samples[i] + samples[j]));
  std::size_t best = 0;
  for (double l : centers) {
    std::size_t inside = 0;
    for (double x : samples)
      if (x >= l - a && x <= l + a) ++inside;
    best = std::max(best, inside);
  }
  return static_cast<double>(best) / static_cast<double>(samples.size());
}

std::vector<double> sorted_uniform_draws(std::size_t count, std::uint64_t seed,
                                         double lo = 0.0, double hi = 1.0) {
  std::vector<double> v(count);
  for (std::size_t k = 0; k < count; ++k)
    v[k] = lo + (hi - lo) * counter_uniform(seed, k, 0);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("degenerate and deterministic sampling") {
  const auto c5 = EntryDistribution::constant(5.0);
  const Matrix m = sample_matrix(c5, 2, 2, 7);
  CHECK(m.minCoeff() == 5.0);
  CHECK(m.maxCoeff() == 5.0);

  const auto rad = EntryDistribution::rademacher();
  const Matrix a = sample_matrix(rad, 3, 2, 1);
  const Matrix b = sample_matrix(rad, 3, 2, 1);
  CHECK(a == b);
  CHECK((a.array().abs() == 1.0).all());
}

TEST_CASE("entry streams are counter-keyed") {
  const auto g = EntryDistribution::gaussian();
  const Matrix m = sample_matrix(g, 5, 4, 99);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(m(i, j) == g.sample(99, static_cast<std::uint64_t>(i),
                                static_cast<std::uint64_t>(j)));
}

TEST_CASE("cauchy absolute median is near 1") {
  const auto c = EntryDistribution::cauchy();
  const Matrix m = sample_matrix(c, 100, 50, 42);
  std::vector<double> abs(m.size());
  for (Index k = 0; k < m.size(); ++k) abs[static_cast<std::size_t>(k)] =
      std::abs(m.data()[k]);
  std::nth_element(abs.begin(), abs.begin() + abs.size() / 2, abs.end());
  CHECK(abs[abs.size() / 2] == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("concentration estimate on small grids") {
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(i);
  const auto q = concentration_estimate(grid, 0.5);
  CHECK(q.estimate == doctest::Approx(0.2));
  CHECK(q.sample_count == 10);

  // alpha >= range/2 pins the estimate at 1
  CHECK(concentration_estimate(grid, 4.5).estimate == 1.0);
  CHECK(concentration_estimate(grid, 100.0).estimate == 1.0);
  CHECK_THROWS_AS(concentration_estimate({}, 0.5), ArgumentError);
}

TEST_CASE("concentration estimate matches the brute-force oracle") {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    const std::size_t count = 1 + counter_hash(3, trial, 0) % 12;
    auto samples = sorted_uniform_draws(count, 1000 + trial, -2.0, 2.0);
    const double alpha = counter_uniform(2000 + trial, 0, 0);
    const auto fast = concentration_estimate(samples, alpha).estimate;
    CHECK(fast == doctest::Approx(brute_force_concentration(samples, alpha))
                      .epsilon(1e-12));
  }
}

TEST_CASE("concentration estimate is monotone in alpha") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    auto samples = sorted_uniform_draws(40, 500 + trial, -3.0, 3.0);
    double previous = 0.0;
    for (double alpha = 0.0; alpha <= 3.2; alpha += 0.1) {
      const double estimate = concentration_estimate(samples, alpha).estimate;
      CHECK(estimate >= previous);
      previous = estimate;
    }
  }
}

TEST_CASE("uniform(0,1) concentration matches the analytic value") {
  auto samples = sorted_uniform_draws(100000, 77);
  const auto q = concentration_estimate(samples, 0.1);
  CHECK(q.estimate == doctest::Approx(0.2).epsilon(0.1));
  CHECK(std::abs(q.estimate - 0.2) < 0.02);
}

TEST_CASE("cdf and quantile are right-continuity consistent") {
  const std::vector<EntryDistribution> laws = {
      EntryDistribution::gaussian(),
      EntryDistribution::cauchy(0.5),
      EntryDistribution::pareto(1.5),
      EntryDistribution::rademacher(),
      EntryDistribution::uniform(-1.0, 3.0),
      EntryDistribution::twopoint(0.3, -2.0, 5.0),
      EntryDistribution::constant(2.0),
      EntryDistribution::empirical({0.0, 0.5, 0.5, 1.0, 4.0}),
  };
  for (const auto& law : laws) {
    // grid kept within |x| <= 5: storing cdf values near 1 in a double loses
    // the absolute precision a tighter roundtrip would need
    for (double x = -5.0; x <= 5.0; x += 0.25) {
      const double F = law.cdf(x);
      if (F > 0.0) CHECK(law.quantile(F) <= x + 1e-9);
      if (F < 1.0) {
        const double Fp = std::nextafter(F, 2.0);
        CHECK(law.quantile(std::min(1.0, Fp)) >= x - 1e-9);
      }
    }
  }
}

TEST_CASE("analytic concentration values") {
  CHECK(EntryDistribution::rademacher().concentration(1.0) == 1.0);
  CHECK(EntryDistribution::rademacher().concentration(0.99) == 0.5);
  CHECK(EntryDistribution::uniform(0.0, 10.0).concentration(1.0) ==
        doctest::Approx(0.2));
  CHECK(EntryDistribution::cauchy().concentration(1.0) == doctest::Approx(0.5));
  CHECK(EntryDistribution::pareto(1.0).concentration(1.0) ==
        doctest::Approx(2.0 / 3.0));
  CHECK(EntryDistribution::constant(0.0).concentration(10.0) == 1.0);
}

TEST_CASE("select_shift_and_case on uniform(0,10)") {
  const auto sel =
      select_shift_and_case(EntryDistribution::uniform(0.0, 10.0), 0.5, 16);
  CHECK(sel.z == doctest::Approx(3.5));
  CHECK(sel.left_mass == doctest::Approx(0.25));
  CHECK(sel.right_mass == doctest::Approx(0.30));
  CHECK(sel.gamma == doctest::Approx(0.125));
  CHECK(sel.case_id == CaseId::two_sided);
}

TEST_CASE("select_shift_and_case rejects concentrated laws") {
  CHECK_THROWS_AS(
      select_shift_and_case(EntryDistribution::constant(0.0), 0.5, 16),
      PreconditionError);
}

TEST_CASE("select_shift_and_case catches a deficient right window") {
  const auto sel = select_shift_and_case(
      EntryDistribution::twopoint(0.9, 0.0, 100.0), 0.05, 100);
  CHECK(sel.z == doctest::Approx(1.0));
  CHECK(sel.right_mass == 0.0);
  CHECK(sel.gamma == doctest::Approx(0.0125));
  CHECK(sel.case_id == CaseId::right_deficient);
  CHECK(sel.left_mass == doctest::Approx(0.9));
}

TEST_CASE("the shift satisfies both quantile inequalities on analytic laws") {
  const std::vector<EntryDistribution> laws = {
      EntryDistribution::gaussian(),          EntryDistribution::cauchy(),
      EntryDistribution::uniform(0.0, 10.0),  EntryDistribution::pareto(1.5),
      EntryDistribution::twopoint(0.3, -2.0, 5.0),
  };
  for (const auto& law : laws) {
    for (double beta : {0.1, 0.5, 0.9}) {
      const double z = quantile_shift(law, beta);
      CHECK(law.cdf(z - 1.0) >= 0.5 * beta - 1e-12);
      CHECK(law.cdf_left(z - 1.0) <= 0.5 * beta + 1e-12);
    }
  }
}

TEST_CASE("empirical shift satisfies both quantile inequalities exactly") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const std::size_t count = 5 + counter_hash(9, trial, 1) % 40;
    auto samples = sorted_uniform_draws(count, 4000 + trial, -5.0, 5.0);
    const auto law = EntryDistribution::empirical(samples);
    const double beta = 0.1 + 0.8 * counter_uniform(5000 + trial, 0, 0);
    const double z = quantile_shift(law, beta);
    CHECK(law.cdf(z - 1.0) >= 0.5 * beta - 1e-12);
    CHECK(law.cdf_left(z - 1.0) <= 0.5 * beta + 1e-12);
  }
}

TEST_CASE("spec string parsing") {
  CHECK(EntryDistribution::parse("gaussian").family() == Family::gaussian);
  CHECK(EntryDistribution::parse("pareto:1.5").family() == Family::pareto);
  CHECK(EntryDistribution::parse("uniform:0,10").family() == Family::uniform);
  CHECK(EntryDistribution::parse("twopoint:0.5,-1,3").family() ==
        Family::twopoint);
  CHECK(EntryDistribution::parse("constant:2").family() == Family::constant);
  CHECK_THROWS_AS(EntryDistribution::parse("pareto:-1"), ConfigurationError);
  CHECK_THROWS_AS(EntryDistribution::parse("pareto:0"), ConfigurationError);
  CHECK_THROWS_AS(EntryDistribution::parse("nosuch"), ConfigurationError);
  CHECK_THROWS_AS(EntryDistribution::parse("uniform:3,1"), ConfigurationError);
}

TEST_CASE("support bound and mean") {
  CHECK(*EntryDistribution::rademacher().support_bound() == 1.0);
  CHECK(*EntryDistribution::uniform(-2.0, 1.0).support_bound() == 2.0);
  CHECK_FALSE(EntryDistribution::gaussian().support_bound());
  CHECK(*EntryDistribution::rademacher().mean() == 0.0);
  CHECK(*EntryDistribution::uniform(-1.0, 1.0).mean() == 0.0);
  CHECK_FALSE(EntryDistribution::cauchy().mean());
  CHECK(*EntryDistribution::pareto(2.0).mean() == doctest::Approx(2.0));
  CHECK_FALSE(EntryDistribution::pareto(1.0).mean());
}

TEST_CASE("partial means agree with closed forms") {
  // gaussian: E[X; a<=X<=b] = phi(a) - phi(b)
  const auto g = EntryDistribution::gaussian();
  auto phi = [](double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
  };
  CHECK(g.partial_mean(-1.0, 2.0) ==
        doctest::Approx(phi(-1.0) - phi(2.0)).epsilon(1e-9));
  // uniform(0,10): E[X; 2<=X<=5] = (25-4)/20
  CHECK(EntryDistribution::uniform(0.0, 10.0).partial_mean(2.0, 5.0) ==
        doctest::Approx(21.0 / 20.0).epsilon(1e-9));
  // cauchy: integral of x/(pi(1+x^2)) = log((1+b^2)/(1+a^2)) / (2 pi)
  CHECK(EntryDistribution::cauchy().partial_mean(1.0, 4.0) ==
        doctest::Approx(std::log(17.0 / 2.0) / (2.0 * 3.14159265358979323846))
            .epsilon(1e-9));
  // pareto shape 1: integral of x * x^(-2) over [a,b] is log(b/a)
  CHECK(EntryDistribution::pareto(1.0).partial_mean(1.0, std::exp(1.0)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // scale acts multiplicatively
  CHECK(EntryDistribution::uniform(0.0, 10.0, 2.0).partial_mean(4.0, 10.0) ==
        doctest::Approx(2.0 * 21.0 / 20.0).epsilon(1e-9));
}

TEST_CASE("counter-keyed uniforms look uniform") {
  double sum = 0.0, sumsq = 0.0, cross = 0.0;
  const std::size_t M = 100000;
  double prev = 0.5;
  for (std::size_t k = 0; k < M; ++k) {
    const double u = counter_uniform(31415, k, 0);
    sum += u;
    sumsq += u * u;
    cross += (u - 0.5) * (prev - 0.5);
    prev = u;
  }
  const double mean = sum / M;
  const double var = sumsq / M - mean * mean;
  CHECK(std::abs(mean - 0.5) < 0.005);
  CHECK(std::abs(var - 1.0 / 12.0) < 0.005);
  CHECK(std::abs(cross / M) < 0.001);  // lag-1 autocorrelation
}
