#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hiergame/binomial.hpp"

using hiergame::binomial_pmf;
using hiergame::binomial_row;
using hiergame::choose;

TEST_CASE("binomial_pmf small values") {
  CHECK(binomial_pmf(0, 7, 0.0) == 1.0);
  CHECK(binomial_pmf(3, 7, 0.0) == 0.0);
  CHECK(binomial_pmf(7, 7, 1.0) == 1.0);
  CHECK(binomial_pmf(2, 2, 0.5) == 0.25);
  CHECK(binomial_pmf(1, 3, 1.0 / 3.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(choose(10, 3) == 120.0);
  CHECK(choose(4, 5) == 0.0);
}

TEST_CASE("binomial_pmf domain errors") {
  CHECK_THROWS_AS(binomial_pmf(-1, 3, 0.5), std::domain_error);
  CHECK_THROWS_AS(binomial_pmf(4, 3, 0.5), std::domain_error);
  CHECK_THROWS_AS(binomial_pmf(1, 3, 1.5), std::domain_error);
  CHECK_THROWS_AS(binomial_pmf(1, 3, std::nan("")), std::domain_error);
}

TEST_CASE("binomial rows normalize") {
  for (int m : {1, 2, 10, 50, 120, 121, 200, 400}) {
    for (double p : {1.0 / 50.0, 0.3, 0.5, 0.97}) {
      double total = 0.0;
      for (double v : binomial_row(m, p)) {
        CHECK(v >= 0.0);
        total += v;
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("linear and log-gamma routes agree at the switch-over") {
  // pmf(k, m) = pmf(k, m-1) * (1-p) + pmf(k-1, m-1) * p crosses m = 120 -> 121.
  for (double p : {0.05, 0.4, 0.9}) {
    for (int k = 1; k <= 120; k += 7) {
      const double lhs = binomial_pmf(k, 121, p);
      const double rhs = binomial_pmf(k, 120, p) * (1.0 - p) + binomial_pmf(k - 1, 120, p) * p;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("mean of the row equals m p") {
  for (int m : {5, 60, 200}) {
    const double p = 0.37;
    const auto row = binomial_row(m, p);
    double mean = 0.0;
    for (int k = 0; k <= m; ++k) mean += k * row[static_cast<std::size_t>(k)];
    CHECK(mean == doctest::Approx(m * p).epsilon(1e-12));
  }
}
