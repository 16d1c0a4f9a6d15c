#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stlab/curve_family.hpp"
#include "stlab/finite_field.hpp"
#include "stlab/st_stats.hpp"

namespace stlab {

class TraceCache;

struct ExperimentOptions {
  /// 0 = hardware concurrency. Reports do not depend on this value.
  unsigned threads = 1;
  TraceCache* cache = nullptr;
};

// ---------------------------------------------------------------------------
// Vertical aspect: p fixed, the parameter runs over a set.

struct VerticalReport {
  std::uint64_t p = 0;
  std::string set_descriptor;
  Interval interval = Interval::full();
  std::uint64_t set_size = 0;       ///< parameters, with multiplicity
  std::uint64_t sample_size = 0;    ///< parameters with good reduction (m)
  std::uint64_t bad_reduction = 0;  ///< set_size - sample_size
  std::uint64_t count = 0;          ///< good parameters with angle in the interval
  double mu = 0.0;
  double expected = 0.0;            ///< mu * m
  double empirical_error = 0.0;     ///< |count - expected|
  double theorem_bracket = 0.0;     ///< error term without its implied constant
  double ratio = 0.0;               ///< empirical_error / theorem_bracket
  bool bracket_factor_omitted = false;
};

/// Angles of the good-reduction members of `params` (in input order).
AngleSample vertical_sample(const FamilyPoly& fam, std::uint64_t p, std::span<const std::int64_t> params,
                            std::string descriptor, const ExperimentOptions& opts = {});

/// N_p(alpha, beta; G) for the subgroup of order r; bracket r^{1/2} p^{1/4}.
VerticalReport vertical_subgroup(const FamilyPoly& fam, std::uint64_t p, std::uint64_t r, const Interval& iv,
                                 const ExperimentOptions& opts = {});

/// N_p(alpha, beta; U, V), counting pairs; bracket (#U #V)^{3/4} p^{1/4}.
VerticalReport vertical_product(const FamilyPoly& fam, std::uint64_t p, std::span<const std::int64_t> u,
                                std::span<const std::int64_t> v, const Interval& iv,
                                const ExperimentOptions& opts = {});

/// Q_p(alpha, beta; L); bracket L p^{-1/4} + L^{11/12} + L^{3/4} p^{1/4}
/// (the L^{c / log log L} factor is omitted and flagged).
VerticalReport vertical_primes(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit, const Interval& iv,
                               const ExperimentOptions& opts = {});

// ---------------------------------------------------------------------------
// Mixed aspect: average of horizontal counts over a parameter set.

struct PrimeCount {
  std::uint64_t p = 0;
  std::uint64_t count = 0;  ///< M_p: good parameters with angle in the interval
  std::uint64_t good = 0;   ///< parameters with good reduction at p
};

struct MixedReport {
  std::uint64_t x = 0;
  std::string set_descriptor;
  Interval interval = Interval::full();
  std::uint64_t set_size = 0;
  std::uint64_t pi_x = 0;
  std::uint64_t total_count = 0;    ///< sum_p M_p
  std::uint64_t total_good = 0;
  std::uint64_t bad_reduction = 0;  ///< (parameter, prime) pairs excluded for bad reduction
  double normalized_average = 0.0;  ///< total_count / (pi(x) * set_size)
  double mu = 0.0;
  double deviation = 0.0;
  double theorem_bracket = 0.0;
  double ratio = 0.0;
  bool bracket_factor_omitted = false;
  /// Primes <= x not used: p <= 3, or the family degenerates mod p.
  std::vector<std::uint64_t> skipped_primes;
  std::vector<PrimeCount> per_prime;
  /// Geometric progressions only: S_{1/2}(x; lambda) and whether T meets the
  /// theorem's lower bound.
  std::optional<double> order_sum_half;
  std::optional<bool> t_condition_met;
};

/// (1 / (pi(x) #U #V)) sum_{u,v} pi_{E(uv)}(alpha, beta; x); bracket (x / (#U #V))^{1/4}.
MixedReport mixed_product(const FamilyPoly& fam, std::uint64_t x, std::span<const std::int64_t> u,
                          std::span<const std::int64_t> v, const Interval& iv, const ExperimentOptions& opts = {});

/// (1 / (pi(x) T)) sum_{t <= T} pi_lambda(alpha, beta; t, x); bracket
/// (log x)^{-3 delta / 4} (log log x)^{-9/8}.
MixedReport mixed_geometric(const FamilyPoly& fam, std::uint64_t x, std::int64_t lambda, std::uint64_t count,
                            const Interval& iv, const ExperimentOptions& opts = {});

/// (1 / (pi(x) pi(L))) sum_{l <= L} pi_{E(l)}(alpha, beta; x); bracket
/// x^{-1/4} + L^{-1/12} + L^{-1/4} x^{1/4} (L^{c / log log L} omitted, flagged).
MixedReport mixed_primes(const FamilyPoly& fam, std::uint64_t x, std::uint64_t limit, const Interval& iv,
                         const ExperimentOptions& opts = {});

// ---------------------------------------------------------------------------
// Character sums.

enum class CharSumMode { exhaustive, sampled };

const char* to_string(CharSumMode m);

struct CharSumOptions {
  CharSumMode mode = CharSumMode::exhaustive;
  std::uint64_t samples = 64;  ///< characters drawn in sampled mode
  std::uint64_t seed = 0;
  /// Restrict the sum to the subgroup of this order.
  std::optional<std::uint64_t> subgroup_order;
  std::uint64_t index_limit = IndexTable::kDefaultLimit;
};

struct CharSumReport {
  std::uint64_t p = 0;
  std::uint64_t fingerprint = 0;
  unsigned n = 0;
  CharSumMode mode = CharSumMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t characters_checked = 0;
  std::optional<std::uint64_t> subgroup_order;
  double max_abs = 0.0;
  double bound = 0.0;  ///< (n + 1) deg Delta sqrt p
  std::uint64_t worst_character = 0;
};

/// Tolerance added to the exact bound before a violation is declared.
inline constexpr double kCharSumSlack = 1e-6;

/// max_s |sum_{w in F_p^*, Delta(w) != 0} sym_n(psi_p(E(w))) chi_s(w)| for
/// n = 1..n_max. chi_s(0) = 0 for every s. In exhaustive mode all p - 1
/// characters are evaluated (one DFT of length p - 1 per n) and a value above
/// the bound throws InternalError.
std::vector<CharSumReport> charsum_verify(const FamilyPoly& fam, std::uint64_t p, unsigned n_max,
                                          const CharSumOptions& cs = {}, const ExperimentOptions& opts = {});

// ---------------------------------------------------------------------------
// Single and bilinear sums of sym_n.

struct SumReport {
  std::complex<double> value;
  double bracket = 0.0;          ///< without implied constant
  std::uint64_t terms = 0;       ///< summands with good reduction
};

/// sum_{t <= T, Delta(lambda^t) != 0 mod p} sym_n(psi_p(E(lambda^t))); bracket n sqrt(p) log p.
/// Throws DomainError when T exceeds ord_p(lambda).
SumReport incomplete_geom_sum(const FamilyPoly& fam, std::uint64_t p, std::int64_t lambda, std::uint64_t count,
                              unsigned n, const ExperimentOptions& opts = {});

/// sum_{m = M+1}^{M+N} over good km of sym_n(psi_p(E(km))); bracket n (N p^{-1/2} + p^{1/2} log p).
SumReport interval_sum(const FamilyPoly& fam, std::uint64_t p, std::int64_t k, std::int64_t start,
                       std::uint64_t length, unsigned n, const ExperimentOptions& opts = {});

/// sum over (u, v) with Delta(uv) != 0 mod p of alpha_u beta_v sym_n(psi_p(E(uv)));
/// bracket n A B sqrt(#U (U/p + 1) #V (V/p + 1) p) with U, V the largest elements.
SumReport bilinear_sum(const FamilyPoly& fam, std::uint64_t p, std::span<const std::int64_t> u,
                       std::span<const std::int64_t> v, std::span<const std::complex<double>> alpha,
                       std::span<const std::complex<double>> beta, unsigned n, const ExperimentOptions& opts = {});

/// psi(t) = sym_n(psi_p(E(t))) delta(t) for t = 0..L, delta the good-reduction
/// indicator (entry 0 is unused by the sums).
std::vector<double> sym_weights(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit, unsigned n,
                                const ExperimentOptions& opts = {});

// ---------------------------------------------------------------------------
// Sums over primes.

struct VaughanReport {
  std::uint64_t p = 0;
  std::uint64_t L = 0;
  double K = 0.0;
  double M = 0.0;
  unsigned n = 0;
  bool surrogate = false;      ///< psi == 1 validation mode
  double direct_sum = 0.0;     ///< sum_{t <= L} Lambda(t) psi(t)
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma3 = 0.0;
  double sigma4 = 0.0;
  double chebyshev_psi = 0.0;  ///< sum_{t <= L} Lambda(t)
  double lambda_bracket = 0.0; ///< L p^{-1/2} + L^{5/6} + L^{1/2} p^{1/2}
};

/// Sigma_1..Sigma_4 of the Vaughan decomposition evaluated exactly. K and M
/// default to L^{1/3}; throws DomainError unless K, M >= 1 and KM <= L.
VaughanReport vaughan_decompose(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit,
                                std::optional<double> k_param, std::optional<double> m_param, unsigned n,
                                bool surrogate = false, const ExperimentOptions& opts = {});

/// Vaughan pieces for an arbitrary weight sequence psi[1..L] (psi[0] ignored).
VaughanReport vaughan_pieces(std::span<const double> psi, double k_param, double m_param);

struct MobiusReport {
  std::uint64_t p = 0;
  std::uint64_t L = 0;
  double K = 0.0;
  double M = 0.0;
  unsigned n = 0;
  double abs_mu_sum = 0.0;  ///< sum over squarefree t
  double mu_sum = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;      ///< identically zero
  double omega4 = 0.0;
  std::uint64_t squarefree_count = 0;
};

MobiusReport mobius_sums(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit, unsigned n,
                         std::optional<double> k_param, std::optional<double> m_param,
                         const ExperimentOptions& opts = {});

struct PrimeSymReport {
  std::uint64_t p = 0;
  std::uint64_t L = 0;
  unsigned n = 0;
  double value = 0.0;
  std::uint64_t terms = 0;
  /// n (L p^{-1/2} + L^{5/6} + (L p)^{1/2}), L^{c / log log L} omitted.
  double prime2_bracket = 0.0;
  /// n^A pi(L) (1 + p/L)^{1/12} p^{-eta} at the nominal A = 1, eta = 1/48.
  double prime1_bracket = 0.0;
};

PrimeSymReport prime_sym_sum(const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit, unsigned n,
                             const ExperimentOptions& opts = {});

}  // namespace stlab
