#include "stlab/param_sets.hpp"

#include <algorithm>
#include <cmath>

#include "stlab/curve_family.hpp"
#include "stlab/errors.hpp"
#include "stlab/finite_field.hpp"

namespace stlab {

const char* to_string(SetKind k) {
  switch (k) {
    case SetKind::subgroup:
      return "subgroup";
    case SetKind::product:
      return "product";
    case SetKind::primes:
      return "primes";
    case SetKind::geometric:
      return "geom";
    case SetKind::interval:
      return "interval";
  }
  return "unknown";
}

std::string set_hash(std::span<const std::int64_t> elements) {
  std::string joined;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) joined += ',';
    joined += std::to_string(elements[i]);
  }
  return hex16(fnv1a64(joined));
}

ParamSet subgroup(std::uint64_t p, std::uint64_t r) {
  const PrimeModulus pm(p);
  if (r == 0 || (p - 1) % r != 0) {
    throw DomainError("subgroup: r = " + std::to_string(r) + " does not divide p - 1 = " + std::to_string(p - 1));
  }
  const std::uint64_t step = mod_pow(primitive_root(p), (p - 1) / r, p);
  ParamSet s{SetKind::subgroup, {}, "subgroup:p=" + std::to_string(p) + ":r=" + std::to_string(r), {}};
  s.elements.reserve(r);
  std::uint64_t w = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    s.elements.push_back(static_cast<std::int64_t>(w));
    w = mul_mod(w, step, p);
  }
  return s;
}

ParamSet product_residues(std::span<const std::int64_t> u, std::span<const std::int64_t> v, std::uint64_t p) {
  const PrimeModulus pm(p);
  auto check = [p](std::span<const std::int64_t> xs, const char* name) {
    for (std::int64_t x : xs) {
      if (reduce_mod(x, p) == 0) {
        throw DomainError(std::string("product_residues: element of ") + name + " is 0 mod p");
      }
    }
  };
  check(u, "U");
  check(v, "V");
  ParamSet s{SetKind::product, {}, "product:p=" + std::to_string(p) + ":U=" + set_hash(u) + ":V=" + set_hash(v), {}};
  s.elements.reserve(u.size() * v.size());
  s.pairs.reserve(u.size() * v.size());
  for (std::int64_t a : u) {
    for (std::int64_t b : v) {
      s.elements.push_back(static_cast<std::int64_t>(mul_mod(reduce_mod(a, p), reduce_mod(b, p), p)));
      s.pairs.emplace_back(a, b);
    }
  }
  return s;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;

  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  constexpr std::uint64_t kSegment = 1 << 15;
  std::vector<char> seg(kSegment);
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(lo + kSegment - 1, limit);
    std::fill(seg.begin(), seg.end(), 1);
    for (std::uint64_t q : base) {
      if (q * q > hi) break;
      std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
      for (std::uint64_t j = start; j <= hi; j += q) seg[j - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (seg[n - lo]) primes.push_back(n);
    }
  }
  return primes;
}

ParamSet primes_upto(std::uint64_t limit) {
  if (limit < 2) throw DomainError("primes_upto: L must be at least 2");
  ParamSet s{SetKind::primes, {}, "primes:L=" + std::to_string(limit), {}};
  for (std::uint64_t q : sieve_primes(limit)) s.elements.push_back(static_cast<std::int64_t>(q));
  return s;
}

ParamSet geometric(std::int64_t lambda, std::uint64_t count, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("geometric: modulus is not prime");
  const std::uint64_t base = reduce_mod(lambda, p);
  if (base == 0) throw DomainError("geometric: p divides lambda");
  ParamSet s{SetKind::geometric, {},
             "geom:lambda=" + std::to_string(lambda) + ":T=" + std::to_string(count) + ":p=" + std::to_string(p), {}};
  s.elements.reserve(count);
  std::uint64_t w = base;
  for (std::uint64_t t = 1; t <= count; ++t) {
    s.elements.push_back(static_cast<std::int64_t>(w));
    w = mul_mod(w, base, p);
  }
  return s;
}

ParamSet integer_interval(std::int64_t start, std::uint64_t length) {
  ParamSet s{SetKind::interval, {}, "interval:M=" + std::to_string(start) + ":N=" + std::to_string(length), {}};
  s.elements.reserve(length);
  for (std::uint64_t i = 1; i <= length; ++i) s.elements.push_back(start + static_cast<std::int64_t>(i));
  return s;
}

ArithTables sieve_arith(std::uint64_t limit) {
  if (limit < 2) throw DomainError("sieve_arith: L must be at least 2");
  ArithTables t;
  t.limit = limit;
  const std::size_t n = limit + 1;
  t.lambda.assign(n, 0.0);
  t.mu.assign(n, 0);
  t.omega.assign(n, 0);
  t.tau.assign(n, 0);
  t.mu[1] = 1;
  t.tau[1] = 1;

  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> spf(n, 0);       // smallest prime factor
  std::vector<std::uint8_t> spf_exp(n, 0);    // its exponent
  std::vector<std::uint64_t> spf_power(n, 0); // spf^spf_exp
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = i;
      spf_exp[i] = 1;
      spf_power[i] = i;
      primes.push_back(i);
      t.mu[i] = -1;
      t.omega[i] = 1;
      t.tau[i] = 2;
      t.lambda[i] = std::log(static_cast<double>(i));
    }
    for (std::uint64_t q : primes) {
      if (q > spf[i] || i * q > limit) break;
      const std::uint64_t j = i * q;
      spf[j] = q;
      if (q == spf[i]) {
        spf_exp[j] = static_cast<std::uint8_t>(spf_exp[i] + 1);
        spf_power[j] = spf_power[i] * q;
        t.mu[j] = 0;
        t.omega[j] = t.omega[i];
        t.tau[j] = t.tau[i] / (spf_exp[i] + 1u) * (spf_exp[j] + 1u);
        if (spf_power[j] == j) t.lambda[j] = std::log(static_cast<double>(q));
      } else {
        spf_exp[j] = 1;
        spf_power[j] = q;
        t.mu[j] = static_cast<std::int8_t>(-t.mu[i]);
        t.omega[j] = static_cast<std::uint8_t>(t.omega[i] + 1);
        t.tau[j] = t.tau[i] * 2;
      }
    }
  }
  return t;
}

double order_sum(std::uint64_t x, std::int64_t lambda, double alpha) {
  if (lambda >= -1 && lambda <= 1) throw DomainError("order_sum: |lambda| must exceed 1");
  double sum = 0.0;
  for (std::uint64_t p : sieve_primes(x)) {
    if (reduce_mod(lambda, p) == 0) continue;
    sum += std::pow(static_cast<double>(mult_order(lambda, p)), -alpha);
  }
  return sum;
}

std::uint64_t divisor_window_count(std::uint64_t x, std::uint64_t y) {
  if (y < 3) throw DomainError("divisor_window_count: y must be at least 3");
  std::uint64_t count = 0;
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t p : sieve_primes(x)) {
    if (p - 1 <= y) continue;
    divisors.assign(1, 1);
    for (const auto& f : factor(p - 1)) {
      const std::size_t base = divisors.size();
      std::uint64_t pk = 1;
      for (int e = 1; e <= f.exponent; ++e) {
        pk *= f.prime;
        for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pk);
      }
    }
    if (std::any_of(divisors.begin(), divisors.end(), [y](std::uint64_t d) { return d > y && d <= 2 * y; })) {
      ++count;
    }
  }
  return count;
}

double erdos_delta() { return 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0); }

}  // namespace stlab
