#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "stlab/errors.hpp"
#include "stlab/st_stats.hpp"

using namespace stlab;
using std::numbers::pi;

namespace {

// Angle with st_cdf(psi) = u, by bisection on the oracle CDF.
double quantile(double u) {
  double lo = 0.0;
  double hi = pi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle::st_cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

AngleSample from_u(std::initializer_list<double> us) {
  std::vector<double> psis;
  for (double u : us) psis.push_back(quantile(u));
  return AngleSample(psis);
}

}  // namespace

TEST_CASE("interval validation") {
  CHECK_THROWS_AS(Interval(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(Interval(-0.1, 0.5), DomainError);
  CHECK_THROWS_AS(Interval(0.0, 3.2), DomainError);
  CHECK(Interval(1.0, 1.0).contains(1.0));
}

TEST_CASE("Sato-Tate mass") {
  CHECK(mu_st(Interval::full()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mu_st(Interval(0, pi / 2)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mu_st(Interval(pi / 3, 2 * pi / 3)) == doctest::Approx(1.0 / 3 + std::sqrt(3.0) / (2 * pi)).epsilon(1e-14));
  CHECK(std::abs(mu_st(Interval(pi / 3, 2 * pi / 3)) - oracle::mu_quadrature(pi / 3, 2 * pi / 3)) < 1e-12);
  CHECK(st_cdf(0) == 0.0);
  CHECK(st_cdf(pi) == 1.0);
  CHECK(st_cdf(pi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(st_cdf(-0.5), DomainError);
}

TEST_CASE("Chebyshev polynomials and sym") {
  for (unsigned n = 0; n <= 20; ++n) CHECK(chebyshev_u(n, 1.0) == doctest::Approx(n + 1.0));
  CHECK(chebyshev_u(2, 0.0) == doctest::Approx(-1.0));
  CHECK(chebyshev_u(3, 0.5) == doctest::Approx(-1.0));
  CHECK(sym(1, pi / 3) == doctest::Approx(1.0));
  CHECK(sym(2, pi / 2) == doctest::Approx(-1.0));
  CHECK(sym(4, 0.0) == 5.0);
  CHECK(sym(3, pi) == -4.0);
}

TEST_CASE("sym sums") {
  CHECK(sym_sum(AngleSample(), 3) == std::complex<double>(0.0));
  CHECK(std::abs(sym_sum(AngleSample({pi / 2}), 1)) < 1e-15);
  CHECK(std::abs(sym_sum(AngleSample({pi / 3, 2 * pi / 3}), 1)) < 1e-15);
  const AngleSample s({0.3, 1.2});
  const double w[] = {2.0, -1.0};
  CHECK(sym_sum(s, 2, w).real() == doctest::Approx(2 * sym(2, 0.3) - sym(2, 1.2)));
  const std::complex<double> cw[] = {{0, 1}, {1, 0}};
  CHECK(sym_sum(s, 2, cw).imag() == doctest::Approx(sym(2, 0.3)));
  const double bad[] = {1.0};
  CHECK_THROWS_AS(sym_sum(s, 2, bad), DomainError);
  CHECK_THROWS_AS(AngleSample({4.0}), DomainError);
}

TEST_CASE("star discrepancy") {
  CHECK(star_discrepancy(AngleSample({pi / 2})) == doctest::Approx(0.5));
  std::vector<double> psis;
  for (int i = 1; i <= 10; ++i) psis.push_back(quantile((2 * i - 1) / 20.0));
  CHECK(star_discrepancy(AngleSample(psis)) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(star_discrepancy(from_u({0.1, 0.2})) == doctest::Approx(0.8).epsilon(1e-9));
  CHECK_THROWS_AS(star_discrepancy(AngleSample()), DomainError);
}

TEST_CASE("interval discrepancy equals endpoint enumeration") {
  CHECK(interval_discrepancy(AngleSample({pi / 2})) == doctest::Approx(1.0));
  CHECK(interval_discrepancy(from_u({0.1, 0.2})) == doctest::Approx(0.9).epsilon(1e-9));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0.0, pi);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> psis(1 + trial % 40);
    for (auto& x : psis) x = ang(rng);
    if (trial % 7 == 0) psis.push_back(psis.front());
    const AngleSample s(psis);
    CHECK(interval_discrepancy(s) == doctest::Approx(oracle::interval_discrepancy(psis)).epsilon(1e-12));
    CHECK(star_discrepancy(s) == doctest::Approx(oracle::star_discrepancy(psis)).epsilon(1e-12));
    CHECK(interval_discrepancy(s) >= star_discrepancy(s) - 1e-15);
    CHECK(interval_discrepancy(s) <= 2 * star_discrepancy(s) + 1e-15);
  }
}

TEST_CASE("Niederreiter bracket and report") {
  CHECK(niederreiter_rhs(AngleSample(), 1) == 0.0);
  const AngleSample s({0.4, 1.9, 2.5});
  CHECK(niederreiter_rhs(s, 1) == doctest::Approx(3 + std::abs(2 * std::cos(0.4) + 2 * std::cos(1.9) + 2 * std::cos(2.5))));
  CHECK(niederreiter_rhs(AngleSample(std::vector<double>(6, pi / 2)), 2) == doctest::Approx(6.0));

  CHECK(discrepancy_report(s, 3.0).k_used == 1);
  std::vector<double> many(10000, 1.0);
  const DiscrepancyReport r = discrepancy_report(AngleSample(many), 100.0, 1.0);
  CHECK(r.k_used == 10);
  CHECK(r.m == 10000);
  CHECK(discrepancy_report(AngleSample({1.0})).k_used == 1);
}

TEST_CASE("histogram") {
  const AngleSample s({0.0, 1.0, pi / 2, 2.0, pi});
  const auto one = emit_histogram(s, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].count == 5);
  CHECK(one[0].st_mass == doctest::Approx(1.0));
  const auto two = emit_histogram(s, 2);
  CHECK(two[0].st_mass == doctest::Approx(0.5));
  CHECK(two[1].st_mass == doctest::Approx(0.5));
  CHECK(two[0].count == 2);
  CHECK(two[1].count == 3);
  for (unsigned bins : {3u, 7u, 64u, 1000u}) {
    double total = 0;
    for (const auto& row : emit_histogram(AngleSample(), bins)) {
      total += row.st_mass;
      CHECK(row.count == 0);
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
  }
}
