#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace stlab {

struct PrimePower {
  std::uint64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

/// Complete factorization by trial division, primes in ascending order.
/// factor(1) is empty.
Factorization factor(std::uint64_t n);

/// Deterministic Miller-Rabin (first twelve prime witnesses; exact for all
/// 64-bit inputs).
bool is_prime(std::uint64_t n);

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

/// Canonical representative of a in [0, m).
inline std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m) {
  if (a >= 0) return static_cast<std::uint64_t>(a) % m;
  const std::uint64_t r = static_cast<std::uint64_t>(-(a + 1)) % m;
  return m - 1 - r;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

/// Legendre symbol (a/p) for an odd prime p, by quadratic reciprocity.
int legendre(std::int64_t a, std::uint64_t p);

/// Smallest generator of the multiplicative group mod p.
std::uint64_t primitive_root(std::uint64_t p);

/// Multiplicative order of lambda modulo the prime p. Throws DomainError if
/// p divides lambda.
std::uint64_t mult_order(std::int64_t lambda, std::uint64_t p);

/// A prime p > 3 together with the factorization of p - 1.
class PrimeModulus {
 public:
  /// Throws DomainError unless p is a prime greater than 3.
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const { return p_; }
  const Factorization& p_minus_1_factors() const { return factors_; }

 private:
  std::uint64_t p_;
  Factorization factors_;
};

/// Legendre symbols of every residue mod p, stored as int8 so a point count
/// is a sum of table lookups.
class ResidueTable {
 public:
  explicit ResidueTable(const PrimeModulus& p);

  std::uint64_t modulus() const { return p_; }
  int chi(std::uint64_t x) const { return symbols_[x]; }
  bool is_residue(std::uint64_t x) const { return symbols_[x] == 1; }
  std::span<const std::int8_t> symbols() const { return symbols_; }

 private:
  std::uint64_t p_;
  std::vector<std::int8_t> symbols_;
};

/// Discrete logarithms to the smallest primitive root.
class IndexTable {
 public:
  static constexpr std::uint64_t kDefaultLimit = std::uint64_t{1} << 22;

  /// Throws RefusedError when p exceeds `limit`.
  explicit IndexTable(const PrimeModulus& p, std::uint64_t limit = kDefaultLimit);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t generator() const { return g_; }
  /// ind w for w in [1, p-1].
  std::uint64_t ind(std::uint64_t w) const { return ind_[w]; }
  /// g^z for z in [0, p-2].
  std::uint64_t power(std::uint64_t z) const { return pow_[z]; }

 private:
  std::uint64_t p_;
  std::uint64_t g_;
  std::vector<std::uint32_t> ind_;
  std::vector<std::uint32_t> pow_;
};

/// chi_s(w) = exp(2 pi i s ind(w) / (p - 1)). Throws DomainError for w = 0 mod p.
std::complex<double> character_eval(std::uint64_t s, std::int64_t w, const IndexTable& tbl);

}  // namespace stlab
