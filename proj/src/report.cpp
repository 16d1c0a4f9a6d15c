#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "stlab/errors.hpp"

namespace stlab::report {

Json envelope(const std::string& command, const std::optional<std::string>& fingerprint, Json params) {
  Json j;
  j["command"] = command;
  j["family_fingerprint"] = fingerprint ? Json(*fingerprint) : Json(nullptr);
  j["params"] = std::move(params);
  j["mu"] = nullptr;
  j["count_or_average"] = nullptr;
  j["bracket"] = nullptr;
  j["ratio"] = nullptr;
  return j;
}

void finalize(Json& j, double runtime_ms) {
  j.erase("runtime_ms");
  j["runtime_ms"] = runtime_ms;
}

Json interval_json(const Interval& iv) { return Json{{"alpha", iv.alpha()}, {"beta", iv.beta()}}; }

Json to_json(const VerticalReport& r) {
  return Json{{"p", r.p},
              {"set", r.set_descriptor},
              {"interval", interval_json(r.interval)},
              {"set_size", r.set_size},
              {"sample_size", r.sample_size},
              {"bad_reduction", r.bad_reduction},
              {"count", r.count},
              {"mu", r.mu},
              {"expected", r.expected},
              {"empirical_error", r.empirical_error},
              {"theorem_bracket", r.theorem_bracket},
              {"ratio", r.ratio},
              {"bracket_factor_omitted", r.bracket_factor_omitted}};
}

Json to_json(const MixedReport& r, bool per_prime) {
  Json j{{"x", r.x},
         {"set", r.set_descriptor},
         {"interval", interval_json(r.interval)},
         {"set_size", r.set_size},
         {"pi_x", r.pi_x},
         {"total_count", r.total_count},
         {"total_good", r.total_good},
         {"bad_reduction", r.bad_reduction},
         {"normalized_average", r.normalized_average},
         {"mu", r.mu},
         {"deviation", r.deviation},
         {"theorem_bracket", r.theorem_bracket},
         {"ratio", r.ratio},
         {"bracket_factor_omitted", r.bracket_factor_omitted},
         {"skipped_primes", r.skipped_primes}};
  if (r.order_sum_half) j["order_sum_half"] = *r.order_sum_half;
  if (r.t_condition_met) j["t_condition_met"] = *r.t_condition_met;
  if (per_prime) {
    Json rows = Json::array();
    for (const auto& pc : r.per_prime) rows.push_back(Json{{"p", pc.p}, {"count", pc.count}, {"good", pc.good}});
    j["per_prime"] = std::move(rows);
  }
  return j;
}

Json to_json(const CharSumReport& r) {
  Json j{{"n", r.n},
         {"mode", to_string(r.mode)},
         {"characters_checked", r.characters_checked},
         {"max_abs", r.max_abs},
         {"bound", r.bound},
         {"worst_character", r.worst_character}};
  if (r.mode == CharSumMode::sampled) j["seed"] = r.seed;
  if (r.subgroup_order) j["subgroup_order"] = *r.subgroup_order;
  return j;
}

Json to_json(const VaughanReport& r) {
  return Json{{"p", r.p},          {"L", r.L},
              {"K", r.K},          {"M", r.M},
              {"n", r.n},          {"surrogate", r.surrogate},
              {"direct_sum", r.direct_sum}, {"sigma1", r.sigma1},
              {"sigma2", r.sigma2}, {"sigma3", r.sigma3},
              {"sigma4", r.sigma4}, {"chebyshev_psi", r.chebyshev_psi},
              {"lambda_bracket", r.lambda_bracket}};
}

Json to_json(const MobiusReport& r) {
  return Json{{"p", r.p},
              {"L", r.L},
              {"K", r.K},
              {"M", r.M},
              {"n", r.n},
              {"abs_mu_sum", r.abs_mu_sum},
              {"mu_sum", r.mu_sum},
              {"omega1", r.omega1},
              {"omega2", r.omega2},
              {"omega3", r.omega3},
              {"omega4", r.omega4},
              {"squarefree_count", r.squarefree_count}};
}

Json to_json(const PrimeSymReport& r) {
  return Json{{"p", r.p},
              {"L", r.L},
              {"n", r.n},
              {"value", r.value},
              {"terms", r.terms},
              {"prime2_bracket", r.prime2_bracket},
              {"prime1_bracket", r.prime1_bracket},
              {"bracket_factor_omitted", true}};
}

Json to_json(const DiscrepancyReport& r) {
  return Json{{"m", r.m},
              {"star", r.star},
              {"interval", r.interval_bound},
              {"niederreiter_rhs", r.niederreiter_rhs},
              {"k", r.k_used},
              {"sigma", r.sigma},
              {"A", r.a_exponent}};
}

void write_histogram_csv(const std::filesystem::path& path, const std::vector<HistogramRow>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DomainError("cannot write " + path.string());
  std::fputs("bin_lo,bin_hi,count,st_mass\n", f);
  for (const auto& r : rows) std::fprintf(f, "%.6f,%.6f,%zu,%.6f\n", r.lo, r.hi, r.count, r.st_mass);
  if (std::fclose(f) != 0) throw DomainError("cannot write " + path.string());
}

void write_histogram_svg(const std::filesystem::path& path, const std::vector<HistogramRow>& rows,
                         const std::string& title) {
  constexpr double kW = 640, kH = 400, kPad = 40;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.count;
  auto density = [&](const HistogramRow& r) {
    return total == 0 ? 0.0 : static_cast<double>(r.count) / static_cast<double>(total) / (r.hi - r.lo);
  };
  double ymax = 2.0 / std::numbers::pi;
  for (const auto& r : rows) ymax = std::max(ymax, density(r));
  ymax *= 1.1;
  auto sx = [&](double t) { return kPad + t / std::numbers::pi * (kW - 2 * kPad); };
  auto sy = [&](double y) { return kH - kPad - y / ymax * (kH - 2 * kPad); };

  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"#9ecae1\" stroke=\"#3182bd\"/>\n",
                  sx(r.lo), sy(density(r)), sx(r.hi) - sx(r.lo), sy(0) - sy(density(r)));
    out << buf;
  }
  out << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
  for (int i = 0; i <= 200; ++i) {
    const double t = std::numbers::pi * i / 200.0;
    const double s = std::sin(t);
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(t), sy(2.0 / std::numbers::pi * s * s));
    out << buf;
  }
  out << "\"/>\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", sx(0),
                sy(0), sx(std::numbers::pi), sy(0));
  out << buf;
  out << "<text x=\"" << kPad << "\" y=\"" << kPad / 2 << "\" font-family=\"sans-serif\" font-size=\"14\">" << title
      << " (m = " << total << ")</text>\n";
  out << "<text x=\"" << sx(0) << "\" y=\"" << kH - kPad / 3 << "\" font-size=\"12\">0</text>\n";
  out << "<text x=\"" << sx(std::numbers::pi) - 8 << "\" y=\"" << kH - kPad / 3 << "\" font-size=\"12\">pi</text>\n";
  out << "</svg>\n";
  if (!out) throw DomainError("cannot write " + path.string());
}

}  // namespace stlab::report
