#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stlab {

enum class SetKind { subgroup, product, primes, geometric, interval };

const char* to_string(SetKind k);

/// A materialized parameter set. Product and geometric sets are multisets;
/// product sets also keep the (u, v) pair behind every element.
struct ParamSet {
  SetKind kind;
  std::vector<std::int64_t> elements;
  std::string descriptor;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
};

/// The order-r subgroup {g^(d i)} of F_p^*, d = (p-1)/r, g the smallest
/// primitive root. Throws DomainError if r does not divide p - 1.
ParamSet subgroup(std::uint64_t p, std::uint64_t r);

/// Multiset {u v mod p} in row-major (u, v) order. Throws DomainError if an
/// element is 0 mod p.
ParamSet product_residues(std::span<const std::int64_t> u, std::span<const std::int64_t> v, std::uint64_t p);

/// Primes up to L by a segmented sieve.
ParamSet primes_upto(std::uint64_t limit);
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// lambda^1, ..., lambda^T mod p.
ParamSet geometric(std::int64_t lambda, std::uint64_t count, std::uint64_t p);

/// The integers M+1, ..., M+N.
ParamSet integer_interval(std::int64_t start, std::uint64_t length);

/// FNV-1a of the comma-joined decimal elements, as 16 hex digits.
std::string set_hash(std::span<const std::int64_t> elements);

struct ArithTables {
  std::uint64_t limit = 0;
  std::vector<double> lambda;         ///< von Mangoldt
  std::vector<std::int8_t> mu;        ///< Moebius
  std::vector<std::uint8_t> omega;    ///< distinct prime factors
  std::vector<std::uint32_t> tau;     ///< number of divisors
};

/// Linear sieve for Lambda, mu, omega, tau on [0, L]; index 0 is unused.
ArithTables sieve_arith(std::uint64_t limit);

/// S_alpha(x; lambda) = sum over primes p <= x, p not dividing lambda, of
/// ord_p(lambda)^(-alpha).
double order_sum(std::uint64_t x, std::int64_t lambda, double alpha);

/// #{p <= x : some d in (y, 2y] divides p - 1}.
std::uint64_t divisor_window_count(std::uint64_t x, std::uint64_t y);

/// 1 - (1 + log log 2) / log 2.
double erdos_delta();

}  // namespace stlab
