#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stlab/experiments.hpp"
#include "stlab/point_count.hpp"

namespace stlab::detail {

/// Throws HypothesisError unless (Nondeg p) holds.
void require_nondeg_mod_p(const FamilyPoly& fam, std::uint64_t p);
/// Throws HypothesisError unless (Nondeg) holds.
void require_nondeg_global(const FamilyPoly& fam);

/// batch_traces with the experiment's thread count and cache.
BatchResult traces_for(const FamilyPoly& fam, std::uint64_t p, std::span<const std::int64_t> params,
                       const ExperimentOptions& opts);

/// sym_n at the Frobenius angle of a trace, via U_n(a / (2 sqrt p)).
double sym_of_trace(unsigned n, std::int64_t a, std::uint64_t p);

/// Resolves optional Vaughan parameters to L^{1/3} and validates them.
void resolve_km(std::uint64_t limit, std::optional<double>& k_param, std::optional<double>& m_param);

inline double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace stlab::detail
