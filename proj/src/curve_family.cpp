#include "stlab/curve_family.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "stlab/errors.hpp"
#include "stlab/finite_field.hpp"

namespace stlab {

const char* to_string(NondegReason r) {
  switch (r) {
    case NondegReason::none:
      return "none";
    case NondegReason::delta_zero:
      return "delta_zero";
    case NondegReason::j_constant:
      return "j_constant";
  }
  return "unknown";
}

namespace {

void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
  IntPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

IntPoly poly_scale(const IntPoly& a, const BigInt& c) {
  IntPoly out(a);
  for (auto& x : out) x *= c;
  trim(out);
  return out;
}

std::string join(const IntPoly& a) {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += a[i].str();
  }
  return out;
}

std::uint64_t residue_of(const BigInt& c, std::uint64_t p) {
  BigInt r = c % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::vector<std::uint64_t> reduce_poly(const IntPoly& a, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(residue_of(c, p));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Rank <= 1 test on the pair of coefficient vectors.
template <typename Coeffs, typename Equal>
bool proportional(const Coeffs& a, const Coeffs& d, Equal cross_equal) {
  const std::size_t n = std::max(a.size(), d.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!cross_equal(i, j)) return false;
    }
  }
  return true;
}

}  // namespace

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

BigInt poly_eval(const IntPoly& a, const BigInt& t) {
  BigInt acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

IntPoly parse_coefficients(std::string_view text) {
  IntPoly out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    std::size_t digits = (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
    if (digits == tok.size() ||
        !std::all_of(tok.begin() + digits, tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw DomainError("malformed coefficient '" + std::string(tok) + "' in '" + std::string(text) + "'");
    }
    std::string s(tok[0] == '+' ? tok.substr(1) : tok);
    out.emplace_back(s);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  trim(out);
  return out;
}

FamilyPoly::FamilyPoly(IntPoly f, IntPoly g) : f_(std::move(f)), g_(std::move(g)) {
  trim(f_);
  trim(g_);
  if (f_.empty() && g_.empty()) throw DomainError("invalid family: f and g are both zero");
  const IntPoly f3 = poly_mul(poly_mul(f_, f_), f_);
  const IntPoly g2 = poly_mul(g_, g_);
  delta_ = poly_scale(poly_add(poly_scale(f3, 4), poly_scale(g2, 27)), -16);
}

std::string FamilyPoly::canonical() const { return "f=" + join(f_) + ";g=" + join(g_); }

std::uint64_t FamilyPoly::fingerprint() const { return fnv1a64(canonical()); }

std::string FamilyPoly::fingerprint_hex() const { return hex16(fingerprint()); }

FamilyPoly build_family(IntPoly f, IntPoly g) { return FamilyPoly(std::move(f), std::move(g)); }

NondegStatus check_nondeg_global(const FamilyPoly& fam) {
  const IntPoly& d = fam.delta();
  if (d.empty()) return {NondegReason::delta_zero};
  // (4f)^3 and Delta proportional  <=>  j = -1728 (4f)^3 / Delta constant
  const IntPoly f4 = poly_scale(fam.f(), 4);
  const IntPoly a = poly_mul(poly_mul(f4, f4), f4);
  auto at = [](const IntPoly& v, std::size_t i) { return i < v.size() ? v[i] : BigInt(0); };
  const bool prop = proportional(a, d, [&](std::size_t i, std::size_t j) {
    return at(a, i) * at(d, j) == at(a, j) * at(d, i);
  });
  return {prop ? NondegReason::j_constant : NondegReason::none};
}

NondegStatus check_nondeg_mod_p(const FamilyPoly& fam, std::uint64_t p) {
  const PrimeModulus pm(p);
  const auto d = reduce_poly(fam.delta(), p);
  if (d.empty()) return {NondegReason::delta_zero};
  const IntPoly f4 = poly_scale(fam.f(), 4);
  const auto a = reduce_poly(poly_mul(poly_mul(f4, f4), f4), p);
  auto at = [](const std::vector<std::uint64_t>& v, std::size_t i) -> std::uint64_t {
    return i < v.size() ? v[i] : 0;
  };
  const bool prop = proportional(a, d, [&](std::size_t i, std::size_t j) {
    return mul_mod(at(a, i), at(d, j), p) == mul_mod(at(a, j), at(d, i), p);
  });
  return {prop ? NondegReason::j_constant : NondegReason::none};
}

BigInt delta_at(const FamilyPoly& fam, std::int64_t t) { return poly_eval(fam.delta(), BigInt(t)); }

ReducedFamily::ReducedFamily(const FamilyPoly& fam, std::uint64_t p)
    : p_(p), f_(reduce_poly(fam.f(), p)), g_(reduce_poly(fam.g(), p)), delta_(reduce_poly(fam.delta(), p)) {}

std::uint64_t ReducedFamily::horner(const std::vector<std::uint64_t>& c, std::uint64_t w) const {
  std::uint64_t acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = mul_mod(acc, w, p_) + *it;
    if (acc >= p_) acc -= p_;
  }
  return acc;
}

bool good_reduction(const FamilyPoly& fam, std::int64_t t, std::uint64_t p) {
  const PrimeModulus pm(p);
  return ReducedFamily(fam, p).good(reduce_mod(t, p));
}

CurveInstance::CurveInstance(std::uint64_t p, std::int64_t a, std::int64_t b, std::int64_t t)
    : p_(PrimeModulus(p).value()), a_(reduce_mod(a, p)), b_(reduce_mod(b, p)), t_(t) {
  const std::uint64_t a3 = mul_mod(mul_mod(a_, a_, p), a_, p);
  const std::uint64_t disc = (mul_mod(4, a3, p) + mul_mod(27, mul_mod(b_, b_, p), p)) % p;
  if (disc == 0) {
    throw HypothesisError("singular curve: 4a^3 + 27b^2 = 0 mod " + std::to_string(p));
  }
}

CurveInstance reduce_at(const FamilyPoly& fam, std::int64_t t, std::uint64_t p) {
  const PrimeModulus pm(p);
  const ReducedFamily red(fam, p);
  const std::uint64_t w = reduce_mod(t, p);
  if (!red.good(w)) {
    throw HypothesisError("bad reduction: Delta(" + std::to_string(t) + ") = 0 mod " + std::to_string(p));
  }
  return CurveInstance(p, static_cast<std::int64_t>(red.f_at(w)), static_cast<std::int64_t>(red.g_at(w)), t);
}

}  // namespace stlab
