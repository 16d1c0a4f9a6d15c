#include "stlab/st_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stlab/errors.hpp"

namespace stlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sorted_cdf(const AngleSample& sample) {
  std::vector<double> u;
  u.reserve(sample.size());
  for (double psi : sample.psis) u.push_back(st_cdf(psi));
  std::sort(u.begin(), u.end());
  return u;
}

void require_nonempty(const AngleSample& sample, const char* what) {
  if (sample.size() == 0) throw DomainError(std::string(what) + ": empty sample");
}

}  // namespace

Interval::Interval(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(0.0 <= alpha && alpha <= beta && beta <= kPi)) {
    throw DomainError("interval must satisfy 0 <= alpha <= beta <= pi, got [" + std::to_string(alpha) + ", " +
                      std::to_string(beta) + "]");
  }
}

Interval Interval::full() { return Interval(0.0, kPi); }

double mu_st(const Interval& iv) {
  const double a = iv.alpha();
  const double b = iv.beta();
  return (b - a) / kPi - (std::sin(2.0 * b) - std::sin(2.0 * a)) / (2.0 * kPi);
}

double st_cdf(double theta) {
  if (!(0.0 <= theta && theta <= kPi)) throw DomainError("st_cdf: theta outside [0, pi]");
  if (theta == kPi) return 1.0;
  return theta / kPi - std::sin(2.0 * theta) / (2.0 * kPi);
}

double chebyshev_u(unsigned n, double z) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * z;
  for (unsigned k = 1; k < n; ++k) {
    const double next = 2.0 * z * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double sym(unsigned n, double theta) {
  // cos(pi) is exactly -1 in double, cos(0) exactly 1, so the endpoint limits
  // (n+1) and (-1)^n (n+1) come out exactly.
  return chebyshev_u(n, std::cos(theta));
}

AngleSample::AngleSample(std::vector<double> angles, std::string desc)
    : psis(std::move(angles)), descriptor(std::move(desc)) {
  for (double psi : psis) {
    if (!(0.0 <= psi && psi <= kPi)) throw DomainError("angle outside [0, pi]: " + std::to_string(psi));
  }
}

std::complex<double> sym_sum(const AngleSample& sample, unsigned n) {
  double acc = 0.0;
  for (double psi : sample.psis) acc += sym(n, psi);
  return {acc, 0.0};
}

std::complex<double> sym_sum(const AngleSample& sample, unsigned n, std::span<const double> weights) {
  if (weights.size() != sample.size()) throw DomainError("sym_sum: weight count does not match sample size");
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * sym(n, sample.psis[i]);
  return {acc, 0.0};
}

std::complex<double> sym_sum(const AngleSample& sample, unsigned n,
                             std::span<const std::complex<double>> weights) {
  if (weights.size() != sample.size()) throw DomainError("sym_sum: weight count does not match sample size");
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * sym(n, sample.psis[i]);
  return acc;
}

double star_discrepancy(const AngleSample& sample) {
  require_nonempty(sample, "star_discrepancy");
  const std::vector<double> u = sorted_cdf(sample);
  const double m = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    d = std::max({d, k / m - u[i], u[i] - (k - 1.0) / m});
  }
  return d;
}

double interval_discrepancy(const AngleSample& sample) {
  require_nonempty(sample, "interval_discrepancy");
  const std::vector<double> u = sorted_cdf(sample);
  const std::size_t m = u.size();
  const double inv_m = 1.0 / static_cast<double>(m);

  // Excess: closed [u_i, u_j] holds j - i + 1 points, so the excess is
  // 1/m + c_j - c_i with c_k = k/m - u_k, maximized over i <= j.
  double excess = 0.0;
  double min_c = std::numeric_limits<double>::infinity();
  // Deficit: the gap strictly between u_i and u_j (with u_0 = 0, u_{m+1} = 1
  // as non-points) holds j - i - 1 points: 1/m + e_j - e_i, e_k = u_k - k/m,
  // maximized over i < j.
  double deficit = 0.0;
  double min_e = 0.0;  // e_0
  for (std::size_t k = 1; k <= m + 1; ++k) {
    const double uk = k <= m ? u[k - 1] : 1.0;
    const double kk = static_cast<double>(k);
    const double e = uk - kk * inv_m;
    deficit = std::max(deficit, inv_m + e - min_e);
    min_e = std::min(min_e, e);
    if (k <= m) {
      const double c = kk * inv_m - uk;
      min_c = std::min(min_c, c);
      excess = std::max(excess, inv_m + c - min_c);
    }
  }
  return std::max(excess, deficit);
}

double niederreiter_rhs(const AngleSample& sample, unsigned k) {
  if (k == 0) throw DomainError("niederreiter_rhs: k must be positive");
  double rhs = static_cast<double>(sample.size()) / static_cast<double>(k);
  for (unsigned n = 1; n <= k; ++n) rhs += std::abs(sym_sum(sample, n)) / static_cast<double>(n);
  return rhs;
}

DiscrepancyReport discrepancy_report(const AngleSample& sample, std::optional<double> sigma_hint, double a_hint) {
  require_nonempty(sample, "discrepancy_report");
  if (!(a_hint > 0.0)) throw DomainError("discrepancy_report: A must be positive");
  DiscrepancyReport r;
  r.m = sample.size();
  r.a_exponent = a_hint;
  if (sigma_hint) {
    r.sigma = *sigma_hint;
  } else {
    for (unsigned n = 1; n <= kSigmaProbeDegree; ++n) {
      r.sigma = std::max(r.sigma, std::abs(sym_sum(sample, n)) / std::pow(static_cast<double>(n), a_hint));
    }
  }
  const double m = static_cast<double>(r.m);
  if (r.sigma >= m) {
    r.k_used = 1;
  } else if (r.sigma <= 0.0) {
    r.k_used = static_cast<unsigned>(r.m);
  } else {
    const double x = std::pow(m / r.sigma, 1.0 / (a_hint + 1.0));
    // Absorb pow() rounding so exact powers do not step up a unit.
    const double k = std::ceil(x * (1.0 - 1e-12));
    r.k_used = static_cast<unsigned>(std::clamp(k, 1.0, m));
  }
  r.star = star_discrepancy(sample);
  r.interval_bound = interval_discrepancy(sample);
  r.niederreiter_rhs = niederreiter_rhs(sample, r.k_used);
  return r;
}

std::vector<HistogramRow> emit_histogram(const AngleSample& sample, unsigned bins) {
  if (bins == 0) throw DomainError("emit_histogram: bins must be positive");
  const double width = kPi / bins;
  std::vector<HistogramRow> rows(bins);
  for (unsigned b = 0; b < bins; ++b) {
    const double lo = b * width;
    const double hi = b + 1 == bins ? kPi : (b + 1) * width;
    rows[b] = {lo, hi, 0, mu_st(Interval(lo, hi))};
  }
  for (double psi : sample.psis) {
    const auto b = std::min<std::size_t>(static_cast<std::size_t>(psi / width), bins - 1);
    ++rows[b].count;
  }
  return rows;
}

}  // namespace stlab
