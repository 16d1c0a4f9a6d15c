#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "experiments_internal.hpp"
#include "stlab/errors.hpp"
#include "stlab/parallel.hpp"
#include "stlab/param_sets.hpp"
#include "stlab/store.hpp"

namespace stlab {

namespace {

/// Residue of a parameter mod p with the number of set members mapping to it.
struct Weighted {
  std::int64_t residue;
  std::uint64_t mult;
};

struct PrimeSlot {
  PrimeCount tally;
  std::uint64_t bad = 0;
  std::vector<TraceRecord> fresh;
};

std::vector<Weighted> collapse(std::vector<Weighted> ws) {
  std::sort(ws.begin(), ws.end(), [](const Weighted& a, const Weighted& b) { return a.residue < b.residue; });
  std::vector<Weighted> out;
  for (const auto& w : ws) {
    if (!out.empty() && out.back().residue == w.residue) {
      out.back().mult += w.mult;
    } else {
      out.push_back(w);
    }
  }
  return out;
}

// Sum over primes 5 <= p <= x of M_p. `params_for(p)` lists the parameter
// residues mod p with multiplicities. Primes run in parallel; the cache is
// only read during that phase and new traces are stored afterwards in
// ascending prime order.
template <typename ParamsFor>
MixedReport mixed_core(const FamilyPoly& fam, std::uint64_t x, std::uint64_t set_size, std::string descriptor,
                       const Interval& iv, const ExperimentOptions& opts, ParamsFor&& params_for) {
  if (x < 2) throw DomainError("mixed experiments need x >= 2");
  if (set_size == 0) throw DomainError("mixed experiments need a non-empty parameter set");
  detail::require_nondeg_global(fam);
  if (opts.cache && opts.cache->fingerprint() != fam.fingerprint()) {
    throw CacheError("trace cache belongs to another family");
  }

  MixedReport r;
  r.x = x;
  r.set_descriptor = std::move(descriptor);
  r.interval = iv;
  r.set_size = set_size;

  const std::vector<std::uint64_t> primes = sieve_primes(x);
  r.pi_x = primes.size();
  std::vector<std::uint64_t> eligible;
  for (std::uint64_t p : primes) {
    if (p <= 3 || !check_nondeg_mod_p(fam, p)) {
      r.skipped_primes.push_back(p);
    } else {
      eligible.push_back(p);
    }
  }

  std::vector<PrimeSlot> slots(eligible.size());
  parallel_for(eligible.size(), opts.threads, [&](std::size_t i) {
    const std::uint64_t p = eligible[i];
    const std::vector<Weighted> ws = collapse(params_for(p));
    std::vector<std::int64_t> ts;
    ts.reserve(ws.size());
    for (const auto& w : ws) ts.push_back(w.residue);

    BatchOptions bo;
    bo.cache = opts.cache;
    bo.write_cache = false;
    bo.threads = 1;
    BatchResult batch = batch_traces(p, fam, ts, bo);

    PrimeSlot& slot = slots[i];
    slot.tally.p = p;
    std::size_t j = 0;
    for (const auto& w : ws) {
      if (j < batch.records.size() && batch.records[j].t == w.residue) {
        slot.tally.good += w.mult;
        if (iv.contains(angle(batch.records[j]))) slot.tally.count += w.mult;
        ++j;
      } else {
        slot.bad += w.mult;
      }
    }
    slot.fresh = std::move(batch.fresh);
  });

  for (auto& slot : slots) {
    r.total_count += slot.tally.count;
    r.total_good += slot.tally.good;
    r.bad_reduction += slot.bad;
    r.per_prime.push_back(slot.tally);
    if (opts.cache) {
      for (const auto& rec : slot.fresh) opts.cache->put(rec);
    }
  }

  r.mu = mu_st(iv);
  r.normalized_average =
      static_cast<double>(r.total_count) / (static_cast<double>(r.pi_x) * static_cast<double>(r.set_size));
  r.deviation = std::abs(r.normalized_average - r.mu);
  return r;
}

void finish(MixedReport& r, double bracket) {
  r.theorem_bracket = bracket;
  r.ratio = detail::safe_ratio(r.deviation, bracket);
}

}  // namespace

MixedReport mixed_product(const FamilyPoly& fam, std::uint64_t x, std::span<const std::int64_t> u,
                          std::span<const std::int64_t> v, const Interval& iv, const ExperimentOptions& opts) {
  if (u.empty() || v.empty()) throw DomainError("mixed_product: U and V must be non-empty");
  // Integer products uv with the number of pairs producing each.
  std::map<std::int64_t, std::uint64_t> products;
  for (std::int64_t a : u) {
    for (std::int64_t b : v) ++products[a * b];
  }
  const std::string desc = "mixed-product:x=" + std::to_string(x) + ":U=" + set_hash(u) + ":V=" + set_hash(v);
  MixedReport r = mixed_core(fam, x, u.size() * v.size(), desc, iv, opts, [&](std::uint64_t p) {
    std::vector<Weighted> ws;
    ws.reserve(products.size());
    for (const auto& [t, mult] : products) ws.push_back({static_cast<std::int64_t>(reduce_mod(t, p)), mult});
    return ws;
  });
  finish(r, std::pow(static_cast<double>(x) / static_cast<double>(r.set_size), 0.25));
  return r;
}

MixedReport mixed_geometric(const FamilyPoly& fam, std::uint64_t x, std::int64_t lambda, std::uint64_t count,
                            const Interval& iv, const ExperimentOptions& opts) {
  if (lambda >= -1 && lambda <= 1) throw DomainError("mixed_geometric: |lambda| must be at least 2");
  if (count == 0) throw DomainError("mixed_geometric: T must be positive");
  const std::string desc = "mixed-geom:x=" + std::to_string(x) + ":lambda=" + std::to_string(lambda) +
                           ":T=" + std::to_string(count);
  MixedReport r = mixed_core(fam, x, count, desc, iv, opts, [&](std::uint64_t p) {
    const std::uint64_t base = reduce_mod(lambda, p);
    if (base == 0) return std::vector<Weighted>{{0, count}};
    // T = k ord + s: the first s powers occur k + 1 times, the rest k times.
    const std::uint64_t ord = mult_order(lambda, p);
    const std::uint64_t k = count / ord;
    const std::uint64_t s = count % ord;
    const std::uint64_t period = std::min(count, ord);
    std::vector<Weighted> ws;
    ws.reserve(period);
    std::uint64_t w = base;
    for (std::uint64_t t = 1; t <= period; ++t) {
      ws.push_back({static_cast<std::int64_t>(w), k + (t <= s ? 1 : 0)});
      w = mul_mod(w, base, p);
    }
    return ws;
  });
  const double delta = erdos_delta();
  const double lx = std::log(static_cast<double>(x));
  const double llx = std::log(lx);
  finish(r, llx > 0.0 ? std::pow(lx, -0.75 * delta) * std::pow(llx, -9.0 / 8.0) : 0.0);
  r.order_sum_half = order_sum(x, lambda, 0.5);
  const double t_min = llx > 0.0 ? std::sqrt(static_cast<double>(x)) * std::pow(lx, 1.0 + 1.5 * delta) *
                                       std::pow(llx, 9.0 / 4.0)
                                 : 0.0;
  r.t_condition_met = static_cast<double>(count) >= t_min;
  return r;
}

MixedReport mixed_primes(const FamilyPoly& fam, std::uint64_t x, std::uint64_t limit, const Interval& iv,
                         const ExperimentOptions& opts) {
  if (limit < 3) throw DomainError("mixed_primes: L must be at least 3");
  const std::vector<std::uint64_t> ells = sieve_primes(limit);
  const std::string desc = "mixed-primes:x=" + std::to_string(x) + ":L=" + std::to_string(limit);
  MixedReport r = mixed_core(fam, x, ells.size(), desc, iv, opts, [&](std::uint64_t p) {
    std::vector<Weighted> ws;
    ws.reserve(ells.size());
    for (std::uint64_t l : ells) ws.push_back({static_cast<std::int64_t>(l % p), 1});
    return ws;
  });
  const double xx = static_cast<double>(x);
  const double l = static_cast<double>(limit);
  finish(r, std::pow(xx, -0.25) + std::pow(l, -1.0 / 12.0) + std::pow(l, -0.25) * std::pow(xx, 0.25));
  r.bracket_factor_omitted = true;
  return r;
}

}  // namespace stlab
