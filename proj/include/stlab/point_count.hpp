#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "stlab/curve_family.hpp"
#include "stlab/finite_field.hpp"

namespace stlab {

class TraceCache;

/// Frobenius trace a = p + 1 - #E(F_p) of the specialization at t.
struct TraceRecord {
  std::uint64_t p;
  std::int64_t t;
  std::int64_t a;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Largest p accepted by count_points_naive.
inline constexpr std::uint64_t kNaiveCountLimit = 10'000;

/// Exhaustive count of affine solutions plus the point at infinity.
/// Throws RefusedError above kNaiveCountLimit.
std::uint64_t count_points_naive(const CurveInstance& c);

/// a^2 <= 4p, evaluated exactly.
bool hasse_ok(std::int64_t a, std::uint64_t p);

/// a = -sum_x (x^3 + ax + b / p). Throws InternalError if the result breaks
/// the Hasse bound.
std::int64_t trace(const CurveInstance& c, const ResidueTable& tbl);

/// Same sum for raw coefficients already reduced mod p; the inner loop of
/// every experiment.
std::int64_t trace_of(std::uint64_t a, std::uint64_t b, const ResidueTable& tbl);

/// psi = arccos(a / (2 sqrt p)) in [0, pi]. Throws DomainError when |a| > 2 sqrt p.
double angle(const TraceRecord& rec);
double angle(std::int64_t a, std::uint64_t p);

/// a / (2 sqrt p), the cosine of the Frobenius angle.
inline double normalized_trace(std::int64_t a, std::uint64_t p) {
  return static_cast<double>(a) / (2.0 * std::sqrt(static_cast<double>(p)));
}

/// Running totals of traces checked against the Hasse bound by this process.
struct HasseAudit {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};
HasseAudit hasse_audit();

struct BatchOptions {
  /// Consulted for every distinct residue; new traces are put() back when
  /// write_cache is set.
  TraceCache* cache = nullptr;
  bool write_cache = true;
  unsigned threads = 1;
};

struct BatchResult {
  /// One record per good-reduction parameter, in input order.
  std::vector<TraceRecord> records;
  /// Parameters with Delta(t) = 0 mod p, in input order.
  std::vector<std::int64_t> skipped;
  /// Residue-keyed records computed by this call (not found in the cache).
  std::vector<TraceRecord> fresh;
};

/// Traces of E(t) mod p for every t in ts. Parameters are collapsed to
/// residues first; each distinct residue is counted once, in parallel across
/// residues, and the result is independent of thread count and cache state.
BatchResult batch_traces(std::uint64_t p, const FamilyPoly& fam, std::span<const std::int64_t> ts,
                         const BatchOptions& opts = {});

}  // namespace stlab
