#include "stlab/point_count.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "stlab/errors.hpp"
#include "stlab/parallel.hpp"
#include "stlab/store.hpp"

namespace stlab {

namespace {

std::atomic<std::uint64_t> g_checked{0};
std::atomic<std::uint64_t> g_violations{0};

inline std::uint64_t add_mod(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
  const std::uint64_t s = x + y;
  return s >= p ? s - p : s;
}

}  // namespace

HasseAudit hasse_audit() { return {g_checked.load(), g_violations.load()}; }

bool hasse_ok(std::int64_t a, std::uint64_t p) {
  const std::uint64_t m = a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
  return static_cast<unsigned __int128>(m) * m <= static_cast<unsigned __int128>(p) * 4;
}

std::uint64_t count_points_naive(const CurveInstance& c) {
  const std::uint64_t p = c.p();
  if (p > kNaiveCountLimit) {
    throw RefusedError("count_points_naive refused: p = " + std::to_string(p) + " exceeds " +
                       std::to_string(kNaiveCountLimit));
  }
  std::uint64_t count = 1;  // point at infinity
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t rhs = (x * x % p * x + c.a() * x + c.b()) % p;
    for (std::uint64_t y = 0; y < p; ++y) {
      if (y * y % p == rhs) ++count;
    }
  }
  return count;
}

std::int64_t trace_of(std::uint64_t a, std::uint64_t b, const ResidueTable& tbl) {
  const std::uint64_t p = tbl.modulus();
  const std::int8_t* chi = tbl.symbols().data();
  // h(x) = x^3 + a x + b walked by forward differences:
  // h(x+1) - h(x) = 3x^2 + 3x + 1 + a, second difference 6x + 6, third 6.
  std::uint64_t v = b % p;
  std::uint64_t d1 = (1 + a) % p;
  std::uint64_t d2 = 6 % p;
  const std::uint64_t d3 = 6 % p;
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    sum += chi[v];
    v = add_mod(v, d1, p);
    d1 = add_mod(d1, d2, p);
    d2 = add_mod(d2, d3, p);
  }
  const std::int64_t tr = -sum;
  g_checked.fetch_add(1, std::memory_order_relaxed);
  if (!hasse_ok(tr, p)) {
    g_violations.fetch_add(1, std::memory_order_relaxed);
    throw InternalError("Hasse bound violated: a = " + std::to_string(tr) + " for p = " + std::to_string(p));
  }
  return tr;
}

std::int64_t trace(const CurveInstance& c, const ResidueTable& tbl) {
  if (tbl.modulus() != c.p()) throw DomainError("trace: residue table built for a different prime");
  return trace_of(c.a(), c.b(), tbl);
}

double angle(std::int64_t a, std::uint64_t p) {
  if (!hasse_ok(a, p)) {
    throw DomainError("angle: |a| = " + std::to_string(a) + " exceeds 2 sqrt(" + std::to_string(p) + ")");
  }
  return std::acos(std::clamp(normalized_trace(a, p), -1.0, 1.0));
}

double angle(const TraceRecord& rec) { return angle(rec.a, rec.p); }

BatchResult batch_traces(std::uint64_t p, const FamilyPoly& fam, std::span<const std::int64_t> ts,
                         const BatchOptions& opts) {
  const PrimeModulus pm(p);
  const ReducedFamily red(fam, p);
  if (opts.cache && opts.cache->fingerprint() != fam.fingerprint()) {
    throw CacheError("trace cache belongs to family " + hex16(opts.cache->fingerprint()) + ", not " +
                     fam.fingerprint_hex());
  }

  std::vector<std::uint64_t> residues(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) residues[i] = reduce_mod(ts[i], p);

  std::vector<std::uint64_t> distinct;
  distinct.reserve(residues.size());
  for (std::uint64_t w : residues) {
    if (red.good(w)) distinct.push_back(w);
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<std::int64_t> traces(distinct.size(), 0);
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const auto hit = opts.cache ? opts.cache->get(p, static_cast<std::int64_t>(distinct[i])) : std::nullopt;
    if (hit) {
      traces[i] = *hit;
    } else {
      missing.push_back(i);
    }
  }

  BatchResult out;
  if (!missing.empty()) {
    const ResidueTable tbl(pm);
    parallel_for(missing.size(), opts.threads, [&](std::size_t k) {
      const std::uint64_t w = distinct[missing[k]];
      traces[missing[k]] = trace_of(red.f_at(w), red.g_at(w), tbl);
    });
    out.fresh.reserve(missing.size());
    for (std::size_t i : missing) out.fresh.push_back({p, static_cast<std::int64_t>(distinct[i]), traces[i]});
    if (opts.cache && opts.write_cache) {
      for (const auto& rec : out.fresh) opts.cache->put(rec);
    }
  }

  out.records.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), residues[i]);
    if (it == distinct.end() || *it != residues[i]) {
      out.skipped.push_back(ts[i]);
    } else {
      out.records.push_back({p, ts[i], traces[static_cast<std::size_t>(it - distinct.begin())]});
    }
  }
  return out;
}

}  // namespace stlab
