#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ssv/dist.hpp"
#include "ssv/harness.hpp"
#include "ssv/matrix_io.hpp"
#include "ssv/sphere.hpp"

using namespace ssv;

TEST_CASE("matrix csv round trip") {
  Matrix m(2, 3);
  m << 1.5, -2.25, 0.0, 1e-17, 3.0, -4.0;
  const Matrix back = parse_matrix_csv(matrix_to_csv(m));
  CHECK(back == m);

  CHECK_THROWS_AS(parse_matrix_csv(""), ArgumentError);
  CHECK_THROWS_AS(parse_matrix_csv("1,2\n3\n"), ArgumentError);
  CHECK_THROWS_AS(parse_matrix_csv("1,x\n"), ArgumentError);
}

TEST_CASE("matrix files and shift sources") {
  Matrix m(3, 2);
  m << 1, 2, 3, 4, 5, 6;
  const std::string path = "shift_test.tmp.csv";
  write_matrix_csv(m, path);
  CHECK(read_matrix_csv(path) == m);

  auto shift = ShiftSource::from_file(path);
  CHECK(shift.materialize(3, 2) == m);
  CHECK_THROWS_AS(shift.materialize(4, 2), ConfigurationError);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_matrix_csv("definitely_missing.csv"),
                  ConfigurationError);
  CHECK(ShiftSource::zero().materialize(2, 2) == Matrix::Zero(2, 2));
  CHECK(ShiftSource::scaled_ones(2.5).materialize(2, 2) ==
        Matrix::Constant(2, 2, 2.5));
}

TEST_CASE("empirical law from a sample file") {
  const std::string path = "samples_test.tmp";
  {
    std::ofstream out(path);
    out << "0.5\n-1.25\n3.0\n0.5\n";
  }
  const auto law = EntryDistribution::parse("empirical:" + path);
  CHECK(law.family() == Family::empirical);
  CHECK(law.samples().size() == 4);
  CHECK(law.cdf(0.5) == doctest::Approx(0.75));
  std::remove(path.c_str());
  CHECK_THROWS_AS(EntryDistribution::parse("empirical:" + path),
                  ConfigurationError);
}

TEST_CASE("net csv parse errors") {
  CHECK_THROWS_AS(Net::parse_csv("0:0.5;bad\n", 4), std::exception);
  CHECK_THROWS_AS(Net::parse_csv("7:0.5\n", 4), ArgumentError);
  const Net net = Net::parse_csv("0:0.5;2:-0.25\n\n", 4);
  REQUIRE(net.size() == 2);
  CHECK(net.points[0].support == std::vector<int>{0, 2});
  CHECK(net.points[1].support.empty());  // blank line = zero point
}
