#include <cmath>
#include <string>

#include "experiments_internal.hpp"
#include "stlab/errors.hpp"
#include "stlab/param_sets.hpp"
#include "stlab/store.hpp"

namespace stlab {

namespace detail {

void require_nondeg_mod_p(const FamilyPoly& fam, std::uint64_t p) {
  const NondegStatus st = check_nondeg_mod_p(fam, p);
  if (!st) {
    throw HypothesisError("family degenerates modulo " + std::to_string(p) + " (" + to_string(st.reason) + ")");
  }
}

void require_nondeg_global(const FamilyPoly& fam) {
  const NondegStatus st = check_nondeg_global(fam);
  if (!st) throw HypothesisError(std::string("family is degenerate (") + to_string(st.reason) + ")");
}

BatchResult traces_for(const FamilyPoly& fam, std::uint64_t p, std::span<const std::int64_t> params,
                       const ExperimentOptions& opts) {
  BatchOptions bo;
  bo.cache = opts.cache;
  bo.threads = opts.threads;
  return batch_traces(p, fam, params, bo);
}

double sym_of_trace(unsigned n, std::int64_t a, std::uint64_t p) {
  return chebyshev_u(n, normalized_trace(a, p));
}

}  // namespace detail

namespace {

VerticalReport vertical_count(const FamilyPoly& fam, std::uint64_t p, std::span<const std::int64_t> params,
                              const Interval& iv, std::string descriptor, const ExperimentOptions& opts) {
  detail::require_nondeg_mod_p(fam, p);
  const BatchResult batch = detail::traces_for(fam, p, params, opts);
  VerticalReport r;
  r.p = p;
  r.set_descriptor = std::move(descriptor);
  r.interval = iv;
  r.set_size = params.size();
  r.sample_size = batch.records.size();
  r.bad_reduction = batch.skipped.size();
  for (const auto& rec : batch.records) {
    if (iv.contains(angle(rec))) ++r.count;
  }
  r.mu = mu_st(iv);
  r.expected = r.mu * static_cast<double>(r.sample_size);
  r.empirical_error = std::abs(static_cast<double>(r.count) - r.expected);
  return r;
}

void finish(VerticalReport& r, double bracket) {
  r.theorem_bracket = bracket;
  r.ratio = detail::safe_ratio(r.empirical_error, bracket);
}

}  // namespace

AngleSample vertical_sample(const FamilyPoly& fam, std::uint64_t p, std::span<const std::int64_t> params,
                            std::string descriptor, const ExperimentOptions& opts) {
  const BatchResult batch = detail::traces_for(fam, p, params, opts);
  std::vector<double> psis;
  psis.reserve(batch.records.size());
  for (const auto& rec : batch.records) psis.push_back(angle(rec));
  return AngleSample(std::move(psis), std::move(descriptor));
}

VerticalReport vertical_subgroup(const FamilyPoly& fam, std::uint64_t p, std::uint64_t r, const Interval& iv,
                                 const ExperimentOptions& opts) {
  const ParamSet g = subgroup(p, r);
  VerticalReport rep = vertical_count(fam, p, g.elements, iv, g.descriptor, opts);
  finish(rep, std::sqrt(static_cast<double>(r)) * std::pow(static_cast<double>(p), 0.25));
  return rep;
}

VerticalReport vertical_product(const FamilyPoly& fam, std::uint64_t p, std::span<const std::int64_t> u,
                                std::span<const std::int64_t> v, const Interval& iv, const ExperimentOptions& opts) {
  if (u.empty() || v.empty()) throw DomainError("vertical_product: U and V must be non-empty");
  const ParamSet s = product_residues(u, v, p);
  VerticalReport rep = vertical_count(fam, p, s.elements, iv, s.descriptor, opts);
  const double uv = static_cast<double>(u.size()) * static_cast<double>(v.size());
  finish(rep, std::pow(uv, 0.75) * std::pow(static_cast<double>(p), 0.25));
  return rep;
}

VerticalReport vertical_primes(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit, const Interval& iv,
                               const ExperimentOptions& opts) {
  if (limit < 3) throw DomainError("vertical_primes: L must be at least 3");
  const ParamSet s = primes_upto(limit);
  VerticalReport rep = vertical_count(fam, p, s.elements, iv, s.descriptor, opts);
  const double l = static_cast<double>(limit);
  const double pp = static_cast<double>(p);
  finish(rep, l * std::pow(pp, -0.25) + std::pow(l, 11.0 / 12.0) + std::pow(l, 0.75) * std::pow(pp, 0.25));
  rep.bracket_factor_omitted = true;
  return rep;
}

}  // namespace stlab
