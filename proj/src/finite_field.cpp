#include "stlab/finite_field.hpp"

#include <array>
#include <numbers>
#include <string>

#include "stlab/errors.hpp"

namespace stlab {

Factorization factor(std::uint64_t n) {
  if (n == 0) throw DomainError("factor: n must be positive");
  Factorization out;
  auto strip = [&](std::uint64_t q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e > 0) out.push_back({q, e});
  };
  strip(2);
  strip(3);
  // 6k +- 1 wheel
  for (std::uint64_t q = 5; q <= n / q; q += 6) {
    strip(q);
    strip(q + 2);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  if (p == 1) return 0;
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kWitnesses = {2, 3, 5, 7, 11, 13,
                                                                17, 19, 23, 29, 31, 37};
  for (std::uint64_t q : kWitnesses) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int legendre(std::int64_t a, std::uint64_t p) {
  // Jacobi-symbol algorithm; agrees with the Legendre symbol for prime p.
  std::uint64_t x = reduce_mod(a, p);
  std::uint64_t n = p;
  int sign = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const std::uint64_t r = n & 7;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(x, n);
    if ((x & 3) == 3 && (n & 3) == 3) sign = -sign;
    x %= n;
  }
  return n == 1 ? sign : 0;
}

namespace {

bool has_full_order(std::uint64_t g, std::uint64_t p, const Factorization& fs) {
  for (const auto& f : fs) {
    if (mod_pow(g, (p - 1) / f.prime, p) == 1) return false;
  }
  return true;
}

void require_prime(std::uint64_t p, const char* what) {
  if (!is_prime(p)) throw DomainError(std::string(what) + ": modulus " + std::to_string(p) + " is not prime");
}

}  // namespace

std::uint64_t primitive_root(std::uint64_t p) {
  require_prime(p, "primitive_root");
  if (p == 2) return 1;
  const Factorization fs = factor(p - 1);
  for (std::uint64_t g = 2;; ++g) {
    if (has_full_order(g, p, fs)) return g;
  }
}

std::uint64_t mult_order(std::int64_t lambda, std::uint64_t p) {
  require_prime(p, "mult_order");
  const std::uint64_t x = reduce_mod(lambda, p);
  if (x == 0) throw DomainError("mult_order: p divides lambda");
  std::uint64_t order = p - 1;
  for (const auto& f : factor(p - 1)) {
    for (int e = 0; e < f.exponent; ++e) {
      if (mod_pow(x, order / f.prime, p) != 1) break;
      order /= f.prime;
    }
  }
  return order;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  if (p <= 3 || !is_prime(p)) {
    throw DomainError("expected a prime greater than 3, got " + std::to_string(p));
  }
  factors_ = factor(p - 1);
}

ResidueTable::ResidueTable(const PrimeModulus& pm) : p_(pm.value()), symbols_(pm.value(), -1) {
  symbols_[0] = 0;
  // x and p - x share a square; half the range covers every residue.
  for (std::uint64_t x = 1; x <= (p_ - 1) / 2; ++x) {
    symbols_[mul_mod(x, x, p_)] = 1;
  }
}

IndexTable::IndexTable(const PrimeModulus& pm, std::uint64_t limit) : p_(pm.value()) {
  if (p_ > limit) {
    throw RefusedError("index table refused: p = " + std::to_string(p_) + " exceeds limit " +
                       std::to_string(limit));
  }
  g_ = 2;
  while (!has_full_order(g_, p_, pm.p_minus_1_factors())) ++g_;
  ind_.assign(p_, 0);
  pow_.assign(p_ - 1, 0);
  std::uint64_t w = 1;
  for (std::uint64_t z = 0; z + 1 < p_; ++z) {
    pow_[z] = static_cast<std::uint32_t>(w);
    ind_[w] = static_cast<std::uint32_t>(z);
    w = mul_mod(w, g_, p_);
  }
}

std::complex<double> character_eval(std::uint64_t s, std::int64_t w, const IndexTable& tbl) {
  const std::uint64_t p = tbl.modulus();
  const std::uint64_t x = reduce_mod(w, p);
  if (x == 0) throw DomainError("character_eval: w = 0 mod p");
  const std::uint64_t q = p - 1;
  const std::uint64_t k = mul_mod(s % q, tbl.ind(x), q);
  if (k == 0) return {1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q);
  return std::polar(1.0, angle);
}

}  // namespace stlab
