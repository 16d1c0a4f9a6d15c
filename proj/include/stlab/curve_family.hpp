#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace stlab {

using BigInt = boost::multiprecision::cpp_int;

/// Integer polynomial, ascending degree, no trailing zero coefficients.
/// The zero polynomial is the empty vector.
using IntPoly = std::vector<BigInt>;

enum class NondegReason { none, delta_zero, j_constant };

const char* to_string(NondegReason r);

struct NondegStatus {
  NondegReason reason = NondegReason::none;

  bool pass() const { return reason == NondegReason::none; }
  explicit operator bool() const { return pass(); }
};

/// The family E(Z): Y^2 = X^3 + f(Z) X + g(Z) over Z[Z] with its discriminant
/// Delta(Z) = -16 (4 f^3 + 27 g^2).
class FamilyPoly {
 public:
  /// Throws DomainError if both f and g are zero.
  FamilyPoly(IntPoly f, IntPoly g);

  const IntPoly& f() const { return f_; }
  const IntPoly& g() const { return g_; }
  const IntPoly& delta() const { return delta_; }
  /// Index of the last nonzero coefficient of Delta; -1 when Delta = 0.
  int deg_delta() const { return static_cast<int>(delta_.size()) - 1; }

  /// "f=c0,c1,...;g=c0,c1,..." with the zero polynomial written as "0".
  std::string canonical() const;
  /// 64-bit FNV-1a over canonical().
  std::uint64_t fingerprint() const;
  std::string fingerprint_hex() const;

 private:
  IntPoly f_;
  IntPoly g_;
  IntPoly delta_;
};

FamilyPoly build_family(IntPoly f, IntPoly g);

/// Parses "c0,c1,..." (ascending degree, decimal, optional sign).
IntPoly parse_coefficients(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex16(std::uint64_t v);

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
BigInt poly_eval(const IntPoly& a, const BigInt& t);

/// Delta != 0 and j(Z) non-constant over Q.
NondegStatus check_nondeg_global(const FamilyPoly& fam);
/// The same conditions for the reduction modulo p (p > 3).
NondegStatus check_nondeg_mod_p(const FamilyPoly& fam, std::uint64_t p);

/// Exact Delta(t).
BigInt delta_at(const FamilyPoly& fam, std::int64_t t);

/// Coefficients of f, g and Delta reduced mod p, evaluated by Horner.
class ReducedFamily {
 public:
  ReducedFamily(const FamilyPoly& fam, std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t f_at(std::uint64_t w) const { return horner(f_, w); }
  std::uint64_t g_at(std::uint64_t w) const { return horner(g_, w); }
  std::uint64_t delta_at(std::uint64_t w) const { return horner(delta_, w); }
  bool good(std::uint64_t w) const { return delta_at(w) != 0; }

 private:
  std::uint64_t horner(const std::vector<std::uint64_t>& c, std::uint64_t w) const;

  std::uint64_t p_;
  std::vector<std::uint64_t> f_;
  std::vector<std::uint64_t> g_;
  std::vector<std::uint64_t> delta_;
};

/// True iff Delta(t) is nonzero mod p.
bool good_reduction(const FamilyPoly& fam, std::int64_t t, std::uint64_t p);

/// y^2 = x^3 + a x + b over F_p with 4a^3 + 27b^2 != 0 (mod p).
class CurveInstance {
 public:
  /// Throws DomainError unless p is a prime > 3, HypothesisError when the
  /// curve is singular.
  CurveInstance(std::uint64_t p, std::int64_t a, std::int64_t b, std::int64_t t = 0);

  std::uint64_t p() const { return p_; }
  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }
  std::int64_t t() const { return t_; }

 private:
  std::uint64_t p_;
  std::uint64_t a_;
  std::uint64_t b_;
  std::int64_t t_;
};

/// Specialization E(t) mod p. Throws HypothesisError on bad reduction.
CurveInstance reduce_at(const FamilyPoly& fam, std::int64_t t, std::uint64_t p);

}  // namespace stlab
