#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stlab {

/// Closed interval [alpha, beta] inside [0, pi].
class Interval {
 public:
  /// Throws DomainError unless 0 <= alpha <= beta <= pi.
  Interval(double alpha, double beta);
  static Interval full();

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  bool contains(double psi) const { return alpha_ <= psi && psi <= beta_; }

 private:
  double alpha_;
  double beta_;
};

/// Sato-Tate mass (2/pi) int_alpha^beta sin^2 = (b - a)/pi - (sin 2b - sin 2a)/(2 pi).
double mu_st(const Interval& iv);

/// mu_st([0, theta]). Throws DomainError outside [0, pi].
double st_cdf(double theta);

/// Chebyshev polynomial of the second kind by the three-term recurrence.
double chebyshev_u(unsigned n, double z);

/// sym_n(theta) = sin((n+1) theta) / sin(theta) = U_n(cos theta); exact at
/// 0 and pi since it never forms the quotient.
double sym(unsigned n, double theta);

/// Frobenius angles with provenance.
struct AngleSample {
  std::vector<double> psis;
  std::string descriptor;

  AngleSample() = default;
  /// Throws DomainError if an angle lies outside [0, pi].
  explicit AngleSample(std::vector<double> angles, std::string desc = {});

  std::size_t size() const { return psis.size(); }
};

std::complex<double> sym_sum(const AngleSample& sample, unsigned n);
std::complex<double> sym_sum(const AngleSample& sample, unsigned n, std::span<const double> weights);
std::complex<double> sym_sum(const AngleSample& sample, unsigned n,
                             std::span<const std::complex<double>> weights);

/// Exact star discrepancy of st_cdf(psi_i) against the uniform law.
double star_discrepancy(const AngleSample& sample);

/// Exact sup over closed [alpha, beta] of |count/m - mu_st([alpha, beta])|.
double interval_discrepancy(const AngleSample& sample);

/// m/k + sum_{n <= k} |sum_i sym_n(psi_i)| / n, without the implied constant.
double niederreiter_rhs(const AngleSample& sample, unsigned k);

struct DiscrepancyReport {
  std::size_t m = 0;
  double star = 0.0;
  double interval_bound = 0.0;
  double niederreiter_rhs = 0.0;
  unsigned k_used = 1;
  double sigma = 0.0;
  double a_exponent = 1.0;
};

/// Largest n probed when no sigma hint is given.
inline constexpr unsigned kSigmaProbeDegree = 20;

/// Picks k = ceil((m / sigma)^{1/(A+1)}) and fills the report. Without a hint
/// sigma = max_{n <= 20} |sym_sum(n)| / n^A.
DiscrepancyReport discrepancy_report(const AngleSample& sample, std::optional<double> sigma_hint = std::nullopt,
                                     double a_hint = 1.0);

struct HistogramRow {
  double lo;
  double hi;
  std::size_t count;
  double st_mass;
};

/// Equal-width bins over [0, pi]; bins are half open except the last.
std::vector<HistogramRow> emit_histogram(const AngleSample& sample, unsigned bins);

}  // namespace stlab
