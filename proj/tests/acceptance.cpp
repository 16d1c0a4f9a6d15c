// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "stlab/cli.hpp"
#include "stlab/curve_family.hpp"
#include "stlab/errors.hpp"
#include "stlab/experiments.hpp"
#include "stlab/param_sets.hpp"
#include "stlab/point_count.hpp"
#include "stlab/st_stats.hpp"
#include "stlab/store.hpp"

using namespace stlab;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    v.pass = false;
    v.detail += " [over time budget " + std::to_string(limit_s) + " s]";
  }
  if (!v.pass) ++failures;
  std::printf("%s %2d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

FamilyPoly zz() { return FamilyPoly(parse_coefficients("0,1"), parse_coefficients("0,1")); }

// CLI stdout with the runtime field dropped.
std::string report_without_runtime(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = run(args, out, err);
  if (code) *code = rc;
  if (rc != kExitOk) throw std::runtime_error("command failed: " + err.str());
  auto j = nlohmann::ordered_json::parse(out.str());
  j.erase("runtime_ms");
  return j.dump(2);
}

Verdict oracle_equivalence() {
  std::uint64_t curves = 0;
  for (std::int64_t p : oracle::primes_upto(101)) {
    if (p < 5) continue;
    const ResidueTable tbl{PrimeModulus(p)};
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        if (!oracle::good(p, a, b)) continue;
        const CurveInstance c(p, a, b);
        const auto naive = static_cast<std::int64_t>(count_points_naive(c));
        if (trace(c, tbl) != p + 1 - naive) {
          return {false, "mismatch at p=" + std::to_string(p) + " a=" + std::to_string(a) + " b=" + std::to_string(b)};
        }
        ++curves;
      }
    }
  }
  return {true, std::to_string(curves) + " curves agree"};
}

Verdict charsum_theorem() {
  const FamilyPoly fam = zz();
  double worst = 0.0;
  std::uint64_t sums = 0;
  for (std::uint64_t p : {101, 211, 401, 1009}) {
    const std::uint64_t r = (p - 1) / factor(p - 1).front().prime;
    for (int variant = 0; variant < 2; ++variant) {
      CharSumOptions cs;
      if (variant == 1) cs.subgroup_order = r;
      for (const auto& rep : charsum_verify(fam, p, 5, cs)) {
        if (rep.characters_checked != p - 1) return {false, "not exhaustive at p=" + std::to_string(p)};
        const double bound = (rep.n + 1) * 3.0 * std::sqrt(static_cast<double>(p));
        if (rep.max_abs > bound + 1e-6) {
          return {false, "p=" + std::to_string(p) + " n=" + std::to_string(rep.n) + " max " + fmt(rep.max_abs)};
        }
        worst = std::max(worst, rep.max_abs / bound);
        sums += rep.characters_checked;
      }
    }
  }
  return {true, std::to_string(sums) + " sums, max |S|/bound = " + fmt(worst)};
}

Verdict sym_consistency() {
  double worst = 0.0;
  bool bounded = true;
  for (unsigned n = 0; n <= 50; ++n) {
    for (int i = 0; i < 1000; ++i) {
      const double theta = 0.01 + (pi - 0.02) * i / 999.0;
      worst = std::max(worst, std::abs(sym(n, theta) - oracle::sym_sin(n, theta)));
      bounded = bounded && std::abs(sym(n, theta)) <= n + 1 + 1e-12;
    }
    for (double theta : {0.0, pi}) bounded = bounded && std::abs(sym(n, theta)) <= n + 1;
    bounded = bounded && sym(n, 0.0) == n + 1.0 && sym(n, pi) == (n % 2 ? -1.0 : 1.0) * (n + 1);
  }
  return {worst <= 1e-9 && bounded, "max deviation " + fmt(worst) + (bounded ? ", bounded by n+1" : ", bound broken")};
}

Verdict mu_correctness() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ang(0.0, pi);
  double quad = 0.0;
  double additive = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double a = ang(rng);
    double b = ang(rng);
    if (a > b) std::swap(a, b);
    const double c = a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double m = mu_st(Interval(a, b));
    quad = std::max(quad, std::abs(m - oracle::mu_quadrature(a, b)));
    additive = std::max(additive, std::abs(m - mu_st(Interval(a, c)) - mu_st(Interval(c, b))));
  }
  const double full = mu_st(Interval::full());
  const bool ok = quad <= 1e-9 && additive <= 1e-12 && std::abs(full - 1.0) <= 1e-15;
  return {ok, "quadrature " + fmt(quad) + ", additivity " + fmt(additive) + ", full " + fmt(full)};
}

Verdict equidistribution_decay() {
  const FamilyPoly fam = zz();
  ExperimentOptions opts;
  opts.threads = 0;
  std::vector<double> d;
  std::string detail;
  for (std::uint64_t p : {1009, 10007, 100003}) {
    const ParamSet g = subgroup(p, p - 1);
    d.push_back(star_discrepancy(vertical_sample(fam, p, g.elements, g.descriptor, opts)));
    detail += "D*(" + std::to_string(p) + ") = " + fmt(d.back()) + " ";
  }
  int inversions = 0;
  bool small_inversions = true;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] > d[i - 1]) {
      ++inversions;
      small_inversions = small_inversions && d[i] <= 1.10 * d[i - 1];
    }
  }
  return {inversions <= 1 && small_inversions && d.back() < 0.05, detail + "inversions " + std::to_string(inversions)};
}

Verdict vaughan_exactness() {
  const FamilyPoly fam = zz();
  const VaughanReport r = vaughan_decompose(fam, 101, 500, std::nullopt, std::nullopt, 1);
  const oracle::Spec spec{{0, 1}, {0, 1}};
  std::vector<double> psi(501, 0.0);
  for (std::int64_t t = 1; t <= 500; ++t) {
    if (spec.good_at(101, t)) psi[t] = oracle::sym_sin(1, spec.angle_at(101, t));
  }
  const double k = std::cbrt(500.0);
  const auto o = oracle::pieces(psi, k, k, oracle::von_mangoldt, false);
  const double err = std::max({std::abs(r.sigma1 - o.s1), std::abs(r.sigma2 - o.s2), std::abs(r.sigma3 - o.s3),
                               std::abs(r.sigma4 - o.s4), std::abs(r.direct_sum - o.direct)});
  double cheb = 0.0;
  for (std::int64_t t = 1; t <= 500; ++t) cheb += oracle::von_mangoldt(t);
  const VaughanReport sur = vaughan_decompose(fam, 101, 500, std::nullopt, std::nullopt, 1, true);
  const double sur_err = std::abs(sur.direct_sum - cheb);
  return {err <= 1e-6 && sur_err <= 1e-6, "max piece error " + fmt(err) + ", surrogate error " + fmt(sur_err)};
}

Verdict mixed_identity() {
  const FamilyPoly fam = zz();
  std::vector<std::int64_t> u(10);
  for (int i = 0; i < 10; ++i) u[i] = i + 1;
  const Interval iv(pi / 3, 2 * pi / 3);
  const MixedReport mixed = mixed_product(fam, 200, u, u, iv);
  std::uint64_t per_prime = 0;
  for (std::uint64_t p : sieve_primes(200)) {
    if (p <= 3) continue;
    if (p > 10) {
      per_prime += vertical_product(fam, p, u, u, iv).count;
      continue;
    }
    // Some elements of U vanish mod p; count the products directly.
    std::vector<std::int64_t> products;
    for (auto a : u) {
      for (auto b : u) products.push_back(a * b);
    }
    const AngleSample s = vertical_sample(fam, p, products, "products");
    per_prime += std::count_if(s.psis.begin(), s.psis.end(), [&](double x) { return iv.contains(x); });
  }
  return {mixed.total_count == per_prime,
          "accumulator " + std::to_string(mixed.total_count) + ", per-prime sum " + std::to_string(per_prime)};
}

Verdict mixed_statistics() {
  const FamilyPoly fam = zz();
  std::vector<std::int64_t> u(50);
  for (int i = 0; i < 50; ++i) u[i] = i + 1;
  ExperimentOptions opts;
  opts.threads = 0;
  const MixedReport r = mixed_product(fam, 2000, u, u, Interval(pi / 3, 2 * pi / 3), opts);
  const double dev = std::abs(r.normalized_average - 0.608998);
  return {dev <= 0.05, "normalized average " + fmt(r.normalized_average) + ", |dev| " + fmt(dev)};
}

Verdict order_exactness() {
  const double s = order_sum(20, 2, 1.0);
  const std::uint64_t c = divisor_window_count(20, 3);
  return {std::abs(s - 1.44722) <= 1e-4 && c == 6, "order_sum " + fmt(s) + ", divisor_window_count " + std::to_string(c)};
}

std::vector<std::vector<std::string>> experiment_commands(const std::string& cache) {
  std::vector<std::vector<std::string>> cmds = {
      {"experiment", "mixed-product", "--f", "0,1", "--g", "0,1", "--x", "400", "--U", "1..20", "--V", "1..20",
       "--alpha", "1.0471975511965976", "--beta", "2.0943951023931953", "--per-prime"},
      {"experiment", "vertical-subgroup", "--f", "0,1", "--g", "0,1", "-p", "10007", "--r", "5003"},
      {"experiment", "mixed-geometric", "--f", "0,1", "--g", "0,1", "--x", "300", "--lambda", "3", "--T", "40"},
      {"sums", "vaughan", "--f", "0,1", "--g", "0,1", "-p", "1009", "--L", "3000", "--n", "2"},
      {"verify", "charsum", "--f", "0,1", "--g", "0,1", "-p", "1009", "--n-max", "3"},
  };
  if (!cache.empty()) {
    for (auto& c : cmds) {
      c.push_back("--cache");
      c.push_back(cache);
    }
  }
  return cmds;
}

Verdict cache_round_trip() {
  const fs::path path = fs::temp_directory_path() / "stlab_acceptance_roundtrip.cache";
  const fs::path exp_path = fs::temp_directory_path() / "stlab_acceptance_experiments.cache";
  fs::remove(path);
  fs::remove(exp_path);
  const FamilyPoly fam = zz();
  std::mt19937_64 rng(99);
  std::vector<TraceRecord> recs;
  {
    TraceCache c = TraceCache::open(path, fam);
    const std::uint64_t primes[] = {1009, 10007, 100003, 1000003};
    while (recs.size() < 10000) {
      const std::uint64_t p = primes[rng() % 4];
      const auto t = static_cast<std::int64_t>(rng() % p);
      if (c.get(p, t)) continue;
      const auto lim = static_cast<std::int64_t>(std::floor(2 * std::sqrt(static_cast<double>(p))));
      const std::int64_t a = static_cast<std::int64_t>(rng() % (2 * lim + 1)) - lim;
      c.put({p, t, a});
      recs.push_back({p, t, a});
    }
  }
  std::size_t matched = 0;
  {
    const TraceCache c = TraceCache::open(path, fam);
    for (const auto& r : recs) matched += c.get(r.p, r.t) == r.a;
  }
  fs::remove(path);
  if (matched != recs.size()) return {false, "round trip lost " + std::to_string(recs.size() - matched) + " rows"};

  std::size_t identical = 0;
  const auto uncached = experiment_commands("");
  const auto cached = experiment_commands(exp_path.string());
  for (std::size_t i = 0; i < cached.size(); ++i) {
    const std::string none = report_without_runtime(uncached[i]);
    const std::string cold = report_without_runtime(cached[i]);
    const std::string warm = report_without_runtime(cached[i]);
    identical += none == cold && cold == warm;
  }
  const auto rows = TraceCache::open(exp_path, fam).size();
  fs::remove(exp_path);
  return {identical == cached.size() && rows > 0,
          "10000 rows round-tripped, " + std::to_string(identical) + "/" + std::to_string(cached.size()) +
              " reports identical cold/warm/uncached, " + std::to_string(rows) + " cached traces"};
}

Verdict parallel_determinism() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t identical = 0;
  const auto cmds = experiment_commands("");
  for (auto cmd : cmds) {
    std::vector<std::string> outs;
    for (const std::string& t : std::vector<std::string>{"1", "4", std::to_string(hw)}) {
      auto c = cmd;
      c.push_back("--threads");
      c.push_back(t);
      outs.push_back(report_without_runtime(c));
    }
    identical += outs[0] == outs[1] && outs[1] == outs[2];
  }
  return {identical == cmds.size(), std::to_string(identical) + "/" + std::to_string(cmds.size()) +
                                        " reports identical for threads 1, 4, " + std::to_string(hw)};
}

}  // namespace

int main() {
  criterion(1, "trace equals p + 1 - naive count for 5 <= p <= 101", 30, oracle_equivalence);
  criterion(3, "exhaustive character sums within (n+1) deg Delta sqrt p", 120, charsum_theorem);
  criterion(4, "sym_n matches the sine quotient", 0, sym_consistency);
  criterion(5, "Sato-Tate mass: closed form, additivity, total", 0, mu_correctness);
  criterion(6, "star discrepancy decays over p = 1009, 10007, 100003", 300, equidistribution_decay);
  criterion(7, "Vaughan pieces exact, surrogate gives Chebyshev psi", 0, vaughan_exactness);
  criterion(8, "mixed accumulator equals sum of per-prime counts", 0, mixed_identity);
  criterion(9, "mixed product average near mu_ST([pi/3, 2pi/3])", 300, mixed_statistics);
  criterion(10, "order sum and divisor window count", 0, order_exactness);
  criterion(11, "cache round trip, cold and warm reports identical", 0, cache_round_trip);
  criterion(12, "reports identical for thread counts 1, 4, max", 0, parallel_determinism);
  // Last, so it covers every trace computed above.
  criterion(2, "Hasse bound for every computed trace", 0, [] {
    const HasseAudit audit = hasse_audit();
    return Verdict{audit.checked > 0 && audit.violations == 0,
                   std::to_string(audit.checked) + " traces checked, " + std::to_string(audit.violations) +
                       " violations"};
  });
  std::printf("%s\n", failures == 0 ? "ALL PASS" : (std::to_string(failures) + " FAILED").c_str());
  return failures == 0 ? 0 : 1;
}
