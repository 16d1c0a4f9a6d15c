#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "experiments_internal.hpp"
#include "stlab/errors.hpp"
#include "stlab/param_sets.hpp"

namespace stlab {

namespace detail {

void resolve_km(std::uint64_t limit, std::optional<double>& k_param, std::optional<double>& m_param) {
  const double l = static_cast<double>(limit);
  if (!k_param) k_param = std::cbrt(l);
  if (!m_param) m_param = std::cbrt(l);
  if (!(*k_param >= 1.0) || !(*m_param >= 1.0)) throw DomainError("K and M must be at least 1");
  if (*k_param * *m_param > l * (1.0 + 1e-12)) {
    throw DomainError("K M = " + std::to_string(*k_param * *m_param) + " exceeds L = " + std::to_string(limit));
  }
}

}  // namespace detail

namespace {

double log_p(std::uint64_t p) { return std::log(static_cast<double>(p)); }

// Largest integer <= x for x >= 0.
std::uint64_t ifloor(double x) { return x <= 0.0 ? 0 : static_cast<std::uint64_t>(std::floor(x)); }

// sum_{m <= L/k} psi(km)
double row_sum(std::span<const double> psi, std::uint64_t k) {
  const std::uint64_t limit = psi.size() - 1;
  double s = 0.0;
  for (std::uint64_t t = k; t <= limit; t += k) s += psi[t];
  return s;
}

// c(k) = sum_{d | k, d <= K} mu(d) for k <= L.
std::vector<int> truncated_mobius(const ArithTables& at, double k_param) {
  const std::uint64_t limit = at.limit;
  std::vector<int> c(limit + 1, 0);
  const std::uint64_t kmax = std::min<std::uint64_t>(ifloor(k_param), limit);
  for (std::uint64_t d = 1; d <= kmax; ++d) {
    if (at.mu[d] == 0) continue;
    for (std::uint64_t k = d; k <= limit; k += d) c[k] += at.mu[d];
  }
  return c;
}

// |sum_{M < m <= L/K} w(m) sum_{K < k <= L/m} c(k) psi(km)|
template <typename Weight>
double type_two(std::span<const double> psi, const std::vector<int>& c, double k_param, double m_param,
                Weight&& w) {
  const std::uint64_t limit = psi.size() - 1;
  const double l = static_cast<double>(limit);
  const std::uint64_t m_hi = std::min(ifloor(l / k_param), limit);
  const std::uint64_t k_lo = ifloor(k_param) + 1;
  double outer = 0.0;
  for (std::uint64_t m = ifloor(m_param) + 1; m <= m_hi; ++m) {
    const double wm = w(m);
    if (wm == 0.0) continue;
    double inner = 0.0;
    const std::uint64_t k_hi = limit / m;
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
      if (c[k] != 0) inner += c[k] * psi[k * m];
    }
    outer += wm * inner;
  }
  return std::abs(outer);
}

}  // namespace

std::vector<double> sym_weights(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit, unsigned n,
                                const ExperimentOptions& opts) {
  detail::require_nondeg_mod_p(fam, p);
  std::vector<std::int64_t> ts(limit);
  std::iota(ts.begin(), ts.end(), std::int64_t{1});
  const BatchResult batch = detail::traces_for(fam, p, ts, opts);
  std::vector<double> psi(limit + 1, 0.0);
  for (const auto& rec : batch.records) psi[static_cast<std::size_t>(rec.t)] = detail::sym_of_trace(n, rec.a, p);
  return psi;
}

SumReport incomplete_geom_sum(const FamilyPoly& fam, std::uint64_t p, std::int64_t lambda, std::uint64_t count,
                              unsigned n, const ExperimentOptions& opts) {
  detail::require_nondeg_mod_p(fam, p);
  if (reduce_mod(lambda, p) == 0) throw DomainError("incomplete_geom_sum: p divides lambda");
  const std::uint64_t ord = mult_order(lambda, p);
  if (count > ord) {
    throw DomainError("incomplete_geom_sum: T = " + std::to_string(count) + " exceeds ord_p(lambda) = " +
                      std::to_string(ord));
  }
  SumReport r;
  if (count > 0) {
    const ParamSet s = geometric(lambda, count, p);
    const BatchResult batch = detail::traces_for(fam, p, s.elements, opts);
    double v = 0.0;
    for (const auto& rec : batch.records) v += detail::sym_of_trace(n, rec.a, p);
    r.value = v;
    r.terms = batch.records.size();
  }
  r.bracket = n * std::sqrt(static_cast<double>(p)) * log_p(p);
  return r;
}

SumReport interval_sum(const FamilyPoly& fam, std::uint64_t p, std::int64_t k, std::int64_t start,
                       std::uint64_t length, unsigned n, const ExperimentOptions& opts) {
  detail::require_nondeg_mod_p(fam, p);
  const std::uint64_t kr = reduce_mod(k, p);
  if (kr == 0) throw DomainError("interval_sum: p divides k");
  SumReport r;
  if (length > 0) {
    std::vector<std::int64_t> ts(length);
    for (std::uint64_t i = 0; i < length; ++i) {
      ts[i] = static_cast<std::int64_t>(mul_mod(kr, reduce_mod(start + static_cast<std::int64_t>(i) + 1, p), p));
    }
    const BatchResult batch = detail::traces_for(fam, p, ts, opts);
    double v = 0.0;
    for (const auto& rec : batch.records) v += detail::sym_of_trace(n, rec.a, p);
    r.value = v;
    r.terms = batch.records.size();
  }
  const double sp = std::sqrt(static_cast<double>(p));
  r.bracket = n * (static_cast<double>(length) / sp + sp * log_p(p));
  return r;
}

SumReport bilinear_sum(const FamilyPoly& fam, std::uint64_t p, std::span<const std::int64_t> u,
                       std::span<const std::int64_t> v, std::span<const std::complex<double>> alpha,
                       std::span<const std::complex<double>> beta, unsigned n, const ExperimentOptions& opts) {
  if (alpha.size() != u.size() || beta.size() != v.size()) {
    throw DomainError("bilinear_sum: weight and set sizes differ");
  }
  detail::require_nondeg_mod_p(fam, p);
  std::vector<std::int64_t> ts;
  ts.reserve(u.size() * v.size());
  for (std::int64_t a : u) {
    for (std::int64_t b : v) ts.push_back(static_cast<std::int64_t>(mul_mod(reduce_mod(a, p), reduce_mod(b, p), p)));
  }
  // Traces by residue; the batch drops bad residues so look them up per pair.
  const BatchResult batch = detail::traces_for(fam, p, ts, opts);
  std::vector<std::pair<std::int64_t, double>> sym;
  sym.reserve(batch.records.size());
  for (const auto& rec : batch.records) sym.emplace_back(rec.t, detail::sym_of_trace(n, rec.a, p));
  std::sort(sym.begin(), sym.end());
  sym.erase(std::unique(sym.begin(), sym.end()), sym.end());

  SumReport r;
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::complex<double> row = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      const std::int64_t w = ts[i * v.size() + j];
      const auto it = std::lower_bound(sym.begin(), sym.end(), std::pair<std::int64_t, double>{w, -1e300});
      if (it == sym.end() || it->first != w) continue;
      row += beta[j] * it->second;
      ++r.terms;
    }
    r.value += alpha[i] * row;
  }

  double a_max = 0.0;
  double b_max = 0.0;
  for (const auto& x : alpha) a_max = std::max(a_max, std::abs(x));
  for (const auto& x : beta) b_max = std::max(b_max, std::abs(x));
  auto extent = [p](std::span<const std::int64_t> xs) {
    double top = 0.0;
    for (std::int64_t x : xs) top = std::max(top, std::abs(static_cast<double>(x)));
    return static_cast<double>(xs.size()) * (top / static_cast<double>(p) + 1.0);
  };
  r.bracket = n * a_max * b_max * std::sqrt(extent(u) * extent(v) * static_cast<double>(p));
  return r;
}

VaughanReport vaughan_pieces(std::span<const double> psi, double k_param, double m_param) {
  if (psi.size() < 3) throw DomainError("vaughan: L must be at least 2");
  const std::uint64_t limit = psi.size() - 1;
  std::optional<double> kk = k_param;
  std::optional<double> mm = m_param;
  detail::resolve_km(limit, kk, mm);
  const ArithTables at = sieve_arith(limit);

  VaughanReport r;
  r.L = limit;
  r.K = k_param;
  r.M = m_param;
  for (std::uint64_t t = 1; t <= limit; ++t) {
    r.direct_sum += at.lambda[t] * psi[t];
    r.chebyshev_psi += at.lambda[t];
  }

  double s1 = 0.0;
  for (std::uint64_t t = 1; t <= std::min(ifloor(m_param), limit); ++t) s1 += at.lambda[t] * psi[t];
  r.sigma1 = std::abs(s1);

  const std::uint64_t km = std::min(ifloor(k_param * m_param), limit);
  for (std::uint64_t k = 1; k <= km; ++k) r.sigma2 += std::abs(row_sum(psi, k));

  // max over w of |sum_{w <= m <= L/k} psi(km)|: the largest suffix sum.
  const std::uint64_t kmax = std::min(ifloor(k_param), limit);
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    double suffix = 0.0;
    double best = 0.0;
    for (std::uint64_t m = limit / k; m >= 1; --m) {
      suffix += psi[k * m];
      best = std::max(best, std::abs(suffix));
    }
    r.sigma3 += best;
  }

  const std::vector<int> c = truncated_mobius(at, k_param);
  r.sigma4 = type_two(psi, c, k_param, m_param, [&](std::uint64_t m) { return at.lambda[m]; });
  return r;
}

VaughanReport vaughan_decompose(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit,
                                std::optional<double> k_param, std::optional<double> m_param, unsigned n,
                                bool surrogate, const ExperimentOptions& opts) {
  if (limit < 2) throw DomainError("vaughan: L must be at least 2");
  detail::resolve_km(limit, k_param, m_param);
  std::vector<double> psi;
  if (surrogate) {
    PrimeModulus pm(p);
    psi.assign(limit + 1, 1.0);
    psi[0] = 0.0;
  } else {
    psi = sym_weights(fam, p, limit, n, opts);
  }
  VaughanReport r = vaughan_pieces(psi, *k_param, *m_param);
  r.p = p;
  r.n = n;
  r.surrogate = surrogate;
  const double l = static_cast<double>(limit);
  const double pp = static_cast<double>(p);
  r.lambda_bracket = l / std::sqrt(pp) + std::pow(l, 5.0 / 6.0) + std::sqrt(l * pp);
  return r;
}

MobiusReport mobius_sums(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit, unsigned n,
                         std::optional<double> k_param, std::optional<double> m_param,
                         const ExperimentOptions& opts) {
  if (limit < 2) throw DomainError("mobius: L must be at least 2");
  detail::resolve_km(limit, k_param, m_param);
  const std::vector<double> psi = sym_weights(fam, p, limit, n, opts);
  const ArithTables at = sieve_arith(limit);
  const double kp = *k_param;
  const double mp = *m_param;

  MobiusReport r;
  r.p = p;
  r.L = limit;
  r.K = kp;
  r.M = mp;
  r.n = n;
  for (std::uint64_t t = 1; t <= limit; ++t) {
    if (at.mu[t] == 0) continue;
    ++r.squarefree_count;
    r.abs_mu_sum += psi[t];
    r.mu_sum += at.mu[t] * psi[t];
  }

  double o1 = 0.0;
  for (std::uint64_t t = 1; t <= std::min(ifloor(std::max(kp, mp)), limit); ++t) o1 += at.mu[t] * psi[t];
  r.omega1 = std::abs(o1);

  const std::uint64_t km = std::min(ifloor(kp * mp), limit);
  for (std::uint64_t k = 1; k <= km; ++k) r.omega2 += at.tau[k] * std::abs(row_sum(psi, k));

  const std::vector<int> c = truncated_mobius(at, kp);
  r.omega4 = type_two(psi, c, kp, mp, [&](std::uint64_t m) { return static_cast<double>(at.mu[m]); });
  return r;
}

PrimeSymReport prime_sym_sum(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit, unsigned n,
                             const ExperimentOptions& opts) {
  if (limit < 2) throw DomainError("prime_sym_sum: L must be at least 2");
  detail::require_nondeg_mod_p(fam, p);
  const ParamSet ells = primes_upto(limit);
  const BatchResult batch = detail::traces_for(fam, p, ells.elements, opts);
  PrimeSymReport r;
  r.p = p;
  r.L = limit;
  r.n = n;
  for (const auto& rec : batch.records) r.value += detail::sym_of_trace(n, rec.a, p);
  r.terms = batch.records.size();
  const double l = static_cast<double>(limit);
  const double pp = static_cast<double>(p);
  r.prime2_bracket = n * (l / std::sqrt(pp) + std::pow(l, 5.0 / 6.0) + std::sqrt(l * pp));
  r.prime1_bracket = n * static_cast<double>(ells.elements.size()) * std::pow(1.0 + pp / l, 1.0 / 12.0) *
                     std::pow(pp, -1.0 / 48.0);
  return r;
}

}  // namespace stlab
