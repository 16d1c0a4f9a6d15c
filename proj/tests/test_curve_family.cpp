#include <doctest.h>

#include "oracles.hpp"
#include "stlab/curve_family.hpp"
#include "stlab/errors.hpp"

using namespace stlab;

namespace {

FamilyPoly fam(const char* f, const char* g) { return FamilyPoly(parse_coefficients(f), parse_coefficients(g)); }

IntPoly ints(std::initializer_list<int> cs) {
  IntPoly out;
  for (int c : cs) out.emplace_back(c);
  return out;
}

}  // namespace

TEST_CASE("discriminant of small families") {
  CHECK(fam("0,1", "0,1").delta() == ints({0, 0, -432, -64}));
  CHECK(fam("0,1", "0,1").deg_delta() == 3);
  CHECK(fam("1", "0").delta() == ints({-64}));
  CHECK(fam("1", "0").deg_delta() == 0);
  CHECK(fam("0", "1").delta() == ints({-432}));
  CHECK_THROWS_AS(fam("0", "0"), DomainError);
  CHECK_THROWS_AS(fam("0,x", "1"), DomainError);
  CHECK_THROWS_AS(fam("", "1"), DomainError);
}

TEST_CASE("coefficient parsing and canonical form") {
  CHECK(parse_coefficients("0,1,0,0") == ints({0, 1}));
  CHECK(parse_coefficients("-3, 2") == ints({-3, 2}));
  CHECK(parse_coefficients("0").empty());
  CHECK(fam("0,1,0", "0,1").canonical() == "f=0,1;g=0,1");
  CHECK(fam("0", "0,0,0,1").canonical() == "f=0;g=0,0,0,1");
  CHECK(fam("0,1", "0,1").fingerprint() == fnv1a64("f=0,1;g=0,1"));
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex16(255) == "00000000000000ff");
}

TEST_CASE("global nondegeneracy") {
  CHECK(check_nondeg_global(fam("0,1", "0,1")).pass());
  CHECK(check_nondeg_global(fam("0", "0,1")).reason == NondegReason::j_constant);
  CHECK(check_nondeg_global(fam("0,1", "0")).reason == NondegReason::j_constant);
  CHECK(check_nondeg_global(fam("0", "0,0,0,1")).reason == NondegReason::j_constant);
  // f^3 and g^2 proportional: f = Z^2, g = Z^3 gives constant j.
  CHECK(check_nondeg_global(fam("0,0,1", "0,0,0,1")).reason == NondegReason::j_constant);
  CHECK(check_nondeg_global(fam("1", "0,1")).pass());
}

TEST_CASE("nondegeneracy modulo p") {
  CHECK(check_nondeg_mod_p(fam("0,1", "0,1"), 5).pass());
  CHECK(check_nondeg_mod_p(fam("0,7", "0,7"), 7).reason == NondegReason::delta_zero);
  CHECK(check_nondeg_mod_p(fam("1", "0,1"), 7).pass());
  CHECK(check_nondeg_mod_p(fam("0,1", "0,1"), 31).pass());
  CHECK_THROWS_AS(check_nondeg_mod_p(fam("0,1", "0,1"), 9), DomainError);
}

TEST_CASE("delta values and good reduction") {
  const FamilyPoly e = fam("0,1", "0,1");
  CHECK(delta_at(e, 1) == -496);
  CHECK(delta_at(e, 0) == 0);
  CHECK(delta_at(fam("1", "0"), 99) == -64);
  const BigInt big = 1'000'000'000;
  CHECK(delta_at(e, 1'000'000'000) == -64 * big * big * big - 432 * big * big);
  CHECK_FALSE(good_reduction(e, 1, 31));
  CHECK(good_reduction(e, 1, 5));
  CHECK_FALSE(good_reduction(e, 0, 7));
  const oracle::Spec s{{0, 1}, {0, 1}};
  for (std::int64_t p : {5, 7, 11, 13, 31, 101}) {
    const ReducedFamily red(e, p);
    for (std::int64_t t = -50; t <= 50; ++t) CHECK(good_reduction(e, t, p) == s.good_at(p, t));
    for (std::uint64_t w = 0; w < static_cast<std::uint64_t>(p); ++w) {
      CHECK(red.f_at(w) == static_cast<std::uint64_t>(oracle::poly_mod(s.f, w, p)));
    }
  }
}

TEST_CASE("reduce_at") {
  const FamilyPoly e = fam("0,1", "0,1");
  const CurveInstance c = reduce_at(e, 1, 5);
  CHECK(c.a() == 1);
  CHECK(c.b() == 1);
  // 7 = 2 mod 5 and 4 * 2^3 + 27 * 2^2 = 140 = 0 mod 5: singular.
  CHECK_THROWS_AS(reduce_at(e, 7, 5), HypothesisError);
  const CurveInstance d = reduce_at(e, 8, 5);
  CHECK(d.a() == 3);
  CHECK(d.b() == 3);
  CHECK_THROWS_AS(reduce_at(e, 1, 31), HypothesisError);
  CHECK_THROWS_AS(CurveInstance(5, 0, 0), HypothesisError);
  CHECK_THROWS_AS(CurveInstance(6, 1, 1), DomainError);
}
