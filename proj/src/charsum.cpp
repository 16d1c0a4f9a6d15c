#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "experiments_internal.hpp"
#include "stlab/errors.hpp"

namespace stlab {

const char* to_string(CharSumMode m) { return m == CharSumMode::exhaustive ? "exhaustive" : "sampled"; }

namespace {

// Backward (e^{+2 pi i sz/N}) complex DFT of fixed length.
class Dft {
 public:
  explicit Dft(std::size_t n)
      : n_(n), in_(fftw_alloc_complex(n)), out_(fftw_alloc_complex(n)) {
    if (!in_ || !out_) throw Error("FFTW allocation failed");
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Dft() {
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  /// Returns |S(s)| for every s.
  std::vector<double> magnitudes(std::span<const double> coeffs) {
    for (std::size_t z = 0; z < n_; ++z) {
      in_[z][0] = coeffs[z];
      in_[z][1] = 0.0;
    }
    fftw_execute(plan_);
    std::vector<double> mags(n_);
    for (std::size_t s = 0; s < n_; ++s) mags[s] = std::hypot(out_[s][0], out_[s][1]);
    return mags;
  }

 private:
  std::size_t n_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

}  // namespace

std::vector<CharSumReport> charsum_verify(const FamilyPoly& fam, std::uint64_t p, unsigned n_max,
                                          const CharSumOptions& cs, const ExperimentOptions& opts) {
  if (n_max == 0) throw DomainError("charsum_verify: n_max must be positive");
  const PrimeModulus pm(p);
  detail::require_nondeg_mod_p(fam, p);
  const std::uint64_t q = p - 1;
  std::uint64_t stride = 1;  // subgroup of order r = {g^z : (p-1)/r divides z}
  if (cs.subgroup_order) {
    const std::uint64_t r = *cs.subgroup_order;
    if (r == 0 || q % r != 0) throw DomainError("charsum_verify: subgroup order must divide p - 1");
    stride = q / r;
  }
  const IndexTable tbl(pm, cs.index_limit);

  std::vector<std::int64_t> params;
  for (std::uint64_t z = 0; z < q; z += stride) params.push_back(static_cast<std::int64_t>(tbl.power(z)));
  const BatchResult batch = detail::traces_for(fam, p, params, opts);

  // Characters to evaluate.
  std::vector<std::uint64_t> chars;
  if (cs.mode == CharSumMode::sampled && cs.samples < q) {
    std::mt19937_64 rng(cs.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
    std::vector<char> seen(q, 0);
    while (chars.size() < cs.samples) {
      const std::uint64_t s = pick(rng);
      if (!seen[s]) {
        seen[s] = 1;
        chars.push_back(s);
      }
    }
    std::sort(chars.begin(), chars.end());
  } else {
    chars.resize(q);
    for (std::uint64_t s = 0; s < q; ++s) chars[s] = s;
  }

  std::vector<std::complex<double>> roots;
  std::optional<Dft> dft;
  if (cs.mode == CharSumMode::exhaustive) {
    dft.emplace(q);
  } else {
    roots.resize(q);
    for (std::uint64_t k = 0; k < q; ++k) {
      roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q));
    }
  }

  std::vector<CharSumReport> reports;
  std::vector<double> coeffs(q);
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  for (unsigned n = 1; n <= n_max; ++n) {
    std::fill(coeffs.begin(), coeffs.end(), 0.0);
    for (const auto& rec : batch.records) {
      coeffs[tbl.ind(static_cast<std::uint64_t>(rec.t))] = detail::sym_of_trace(n, rec.a, p);
    }

    CharSumReport rep;
    rep.p = p;
    rep.fingerprint = fam.fingerprint();
    rep.n = n;
    rep.mode = cs.mode;
    rep.seed = cs.seed;
    rep.subgroup_order = cs.subgroup_order;
    rep.bound = static_cast<double>(n + 1) * fam.deg_delta() * sqrt_p;
    rep.characters_checked = chars.size();

    if (dft) {
      const std::vector<double> mags = dft->magnitudes(coeffs);
      const auto it = std::max_element(mags.begin(), mags.end());
      rep.max_abs = *it;
      rep.worst_character = static_cast<std::uint64_t>(it - mags.begin());
    } else {
      for (std::uint64_t s : chars) {
        std::complex<double> acc = 0.0;
        for (std::uint64_t z = 0; z < q; z += stride) {
          if (coeffs[z] != 0.0) acc += coeffs[z] * roots[mul_mod(s, z, q)];
        }
        if (std::abs(acc) > rep.max_abs) {
          rep.max_abs = std::abs(acc);
          rep.worst_character = s;
        }
      }
    }

    if (cs.mode == CharSumMode::exhaustive && rep.max_abs > rep.bound + kCharSumSlack) {
      throw InternalError("character sum bound violated at p = " + std::to_string(p) + ", n = " +
                          std::to_string(n) + ": " + std::to_string(rep.max_abs) + " > " +
                          std::to_string(rep.bound));
    }
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace stlab
