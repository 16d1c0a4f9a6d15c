#include "stlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "report.hpp"
#include "stlab/curve_family.hpp"
#include "stlab/errors.hpp"
#include "stlab/experiments.hpp"
#include "stlab/param_sets.hpp"
#include "stlab/parallel.hpp"
#include "stlab/point_count.hpp"
#include "stlab/store.hpp"

namespace stlab {

namespace {

using report::Json;

struct RunConfig {
  std::string f;
  std::string g;
  std::uint64_t p = 0;
  std::int64_t t = 0;
  double alpha = 0.0;
  double beta = std::numbers::pi;
  unsigned threads = 0;
  std::string cache_path;
  std::string csv_path;
  std::string svg_path;
  std::uint64_t seed = 0;
  unsigned bins = 20;
  std::uint64_t r = 0;
  std::uint64_t x = 0;
  std::uint64_t limit = 0;
  std::string u;
  std::string v;
  std::int64_t lambda = 2;
  std::uint64_t count = 0;
  unsigned n = 1;
  unsigned n_max = 5;
  std::string mode = "exhaustive";
  std::uint64_t samples = 64;
  std::optional<double> k_param;
  std::optional<double> m_param;
  bool surrogate = false;
  bool per_prime = false;
  double exponent = 0.5;
  std::uint64_t y = 0;
};

/// "a..b" or "a,b,c".
std::vector<std::int64_t> parse_set(const std::string& text, const char* name) {
  auto bad = [&] { return DomainError(std::string("malformed set for ") + name + ": '" + text + "'"); };
  auto num = [&](std::string_view s) {
    std::int64_t x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw bad();
    return x;
  };
  std::vector<std::int64_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const std::int64_t lo = num(std::string_view(text).substr(0, dots));
    const std::int64_t hi = num(std::string_view(text).substr(dots + 2));
    if (hi < lo) throw bad();
    for (std::int64_t i = lo; i <= hi; ++i) out.push_back(i);
  } else {
    std::string_view rest(text);
    while (true) {
      const auto comma = rest.find(',');
      out.push_back(num(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  if (out.empty()) throw bad();
  return out;
}

class Session {
 public:
  explicit Session(const RunConfig& cfg) : cfg_(cfg) {}

  const FamilyPoly& family() {
    if (!fam_) fam_.emplace(parse_coefficients(cfg_.f), parse_coefficients(cfg_.g));
    return *fam_;
  }

  std::string fingerprint() { return family().fingerprint_hex(); }

  ExperimentOptions options() {
    ExperimentOptions o;
    o.threads = resolve_threads(cfg_.threads);
    o.cache = cache();
    return o;
  }

  TraceCache* cache() {
    if (!cache_) {
      const char* env = std::getenv("STLAB_CACHE");
      const std::string path = env && *env ? std::string(env) : cfg_.cache_path;
      if (path.empty()) return nullptr;
      cache_.emplace(TraceCache::open(path, family()));
    }
    return &*cache_;
  }

  void flush() {
    if (cache_) cache_->flush();
  }

  Interval interval() const { return Interval(cfg_.alpha, cfg_.beta); }

  Json base_params() {
    return Json{{"f", cfg_.f}, {"g", cfg_.g}, {"canonical", family().canonical()}};
  }

 private:
  const RunConfig& cfg_;
  std::optional<FamilyPoly> fam_;
  std::optional<TraceCache> cache_;
};

struct Outcome {
  Json body;
  int code = kExitOk;
};

void write_histograms(const RunConfig& cfg, const AngleSample& sample) {
  if (cfg.csv_path.empty() && cfg.svg_path.empty()) return;
  const auto rows = emit_histogram(sample, cfg.bins);
  if (!cfg.csv_path.empty()) report::write_histogram_csv(cfg.csv_path, rows);
  if (!cfg.svg_path.empty()) report::write_histogram_svg(cfg.svg_path, rows, sample.descriptor);
}

void fill_vertical(Json& j, const VerticalReport& r) {
  j["mu"] = r.mu;
  j["count_or_average"] = r.count;
  j["bracket"] = r.theorem_bracket;
  j["ratio"] = r.ratio;
  j["report"] = report::to_json(r);
}

void fill_mixed(Json& j, const MixedReport& r, bool per_prime) {
  j["mu"] = r.mu;
  j["count_or_average"] = r.normalized_average;
  j["bracket"] = r.theorem_bracket;
  j["ratio"] = r.ratio;
  j["report"] = report::to_json(r, per_prime);
}

Outcome family_check(const RunConfig& cfg, Session& s) {
  const FamilyPoly& fam = s.family();
  Json params = s.base_params();
  if (cfg.p) params["p"] = cfg.p;
  Outcome o{report::envelope("family check", s.fingerprint(), params)};
  const NondegStatus global = check_nondeg_global(fam);
  o.body["nondeg_global"] = global.pass() ? "pass" : to_string(global.reason);
  o.body["deg_delta"] = fam.deg_delta();
  if (!global) o.code = kExitHypothesis;
  if (cfg.p) {
    const NondegStatus local = check_nondeg_mod_p(fam, cfg.p);
    o.body["nondeg_mod_p"] = local.pass() ? "pass" : to_string(local.reason);
    if (!local) o.code = kExitHypothesis;
  }
  return o;
}

Outcome trace_cmd(const RunConfig& cfg, Session& s) {
  Json params = s.base_params();
  params["p"] = cfg.p;
  params["t"] = cfg.t;
  Outcome o{report::envelope("trace", s.fingerprint(), params)};
  reduce_at(s.family(), cfg.t, cfg.p);
  const std::int64_t t[] = {cfg.t};
  BatchOptions bo;
  bo.cache = s.cache();
  const BatchResult batch = batch_traces(cfg.p, s.family(), t, bo);
  const std::int64_t a = batch.records.front().a;
  o.body["count_or_average"] = static_cast<std::int64_t>(cfg.p) + 1 - a;
  o.body["a"] = a;
  o.body["psi"] = angle(a, cfg.p);
  o.body["points"] = static_cast<std::int64_t>(cfg.p) + 1 - a;
  return o;
}

Outcome angles_cmd(const RunConfig& cfg, Session& s) {
  const std::uint64_t r = cfg.r ? cfg.r : cfg.p - 1;
  const ParamSet set = subgroup(cfg.p, r);
  const Interval iv = s.interval();
  Json params = s.base_params();
  params["p"] = cfg.p;
  params["r"] = r;
  params["interval"] = report::interval_json(iv);
  params["bins"] = cfg.bins;
  Outcome o{report::envelope("angles", s.fingerprint(), params)};
  const AngleSample sample = vertical_sample(s.family(), cfg.p, set.elements, set.descriptor, s.options());
  const auto inside = std::count_if(sample.psis.begin(), sample.psis.end(), [&](double a) { return iv.contains(a); });
  o.body["mu"] = mu_st(iv);
  o.body["count_or_average"] = inside;
  o.body["set"] = set.descriptor;
  o.body["sample_size"] = sample.size();
  if (sample.size() > 0) o.body["discrepancy"] = report::to_json(discrepancy_report(sample));
  Json hist = Json::array();
  for (const auto& row : emit_histogram(sample, cfg.bins)) {
    hist.push_back(Json{{"lo", row.lo}, {"hi", row.hi}, {"count", row.count}, {"st_mass", row.st_mass}});
  }
  o.body["histogram"] = std::move(hist);
  write_histograms(cfg, sample);
  return o;
}

Outcome charsum_cmd(const RunConfig& cfg, Session& s) {
  CharSumOptions cs;
  if (cfg.mode == "exhaustive") {
    cs.mode = CharSumMode::exhaustive;
  } else if (cfg.mode == "sampled") {
    cs.mode = CharSumMode::sampled;
  } else {
    throw DomainError("--mode must be exhaustive or sampled");
  }
  cs.samples = cfg.samples;
  cs.seed = cfg.seed;
  if (cfg.r) cs.subgroup_order = cfg.r;
  Json params = s.base_params();
  params["p"] = cfg.p;
  params["n_max"] = cfg.n_max;
  params["mode"] = cfg.mode;
  if (cs.mode == CharSumMode::sampled) {
    params["samples"] = cfg.samples;
    params["seed"] = cfg.seed;
  }
  if (cfg.r) params["r"] = cfg.r;
  Outcome o{report::envelope("verify charsum", s.fingerprint(), params)};
  const auto reps = charsum_verify(s.family(), cfg.p, cfg.n_max, cs, s.options());
  Json rows = Json::array();
  double worst = 0.0;
  for (const auto& r : reps) {
    rows.push_back(report::to_json(r));
    worst = std::max(worst, r.max_abs / r.bound);
  }
  o.body["count_or_average"] = reps.back().max_abs;
  o.body["bracket"] = reps.back().bound;
  o.body["ratio"] = worst;
  o.body["reports"] = std::move(rows);
  return o;
}

Outcome experiment_cmd(const std::string& which, const RunConfig& cfg, Session& s) {
  const Interval iv = s.interval();
  Json params = s.base_params();
  params["interval"] = report::interval_json(iv);
  const std::string command = "experiment " + which;
  if (which == "vertical-subgroup") {
    params["p"] = cfg.p;
    params["r"] = cfg.r;
    Outcome o{report::envelope(command, s.fingerprint(), params)};
    fill_vertical(o.body, vertical_subgroup(s.family(), cfg.p, cfg.r, iv, s.options()));
    if (!cfg.csv_path.empty() || !cfg.svg_path.empty()) {
      const ParamSet set = subgroup(cfg.p, cfg.r);
      write_histograms(cfg, vertical_sample(s.family(), cfg.p, set.elements, set.descriptor, s.options()));
    }
    return o;
  }
  if (which == "vertical-product") {
    const auto u = parse_set(cfg.u, "--U");
    const auto v = parse_set(cfg.v, "--V");
    params["p"] = cfg.p;
    params["U"] = cfg.u;
    params["V"] = cfg.v;
    Outcome o{report::envelope(command, s.fingerprint(), params)};
    fill_vertical(o.body, vertical_product(s.family(), cfg.p, u, v, iv, s.options()));
    if (!cfg.csv_path.empty() || !cfg.svg_path.empty()) {
      const ParamSet set = product_residues(u, v, cfg.p);
      write_histograms(cfg, vertical_sample(s.family(), cfg.p, set.elements, set.descriptor, s.options()));
    }
    return o;
  }
  if (which == "vertical-primes") {
    params["p"] = cfg.p;
    params["L"] = cfg.limit;
    Outcome o{report::envelope(command, s.fingerprint(), params)};
    fill_vertical(o.body, vertical_primes(s.family(), cfg.p, cfg.limit, iv, s.options()));
    if (!cfg.csv_path.empty() || !cfg.svg_path.empty()) {
      const ParamSet set = primes_upto(cfg.limit);
      write_histograms(cfg, vertical_sample(s.family(), cfg.p, set.elements, set.descriptor, s.options()));
    }
    return o;
  }
  if (which == "mixed-product") {
    const auto u = parse_set(cfg.u, "--U");
    const auto v = parse_set(cfg.v, "--V");
    params["x"] = cfg.x;
    params["U"] = cfg.u;
    params["V"] = cfg.v;
    Outcome o{report::envelope(command, s.fingerprint(), params)};
    fill_mixed(o.body, mixed_product(s.family(), cfg.x, u, v, iv, s.options()), cfg.per_prime);
    return o;
  }
  if (which == "mixed-geometric") {
    params["x"] = cfg.x;
    params["lambda"] = cfg.lambda;
    params["T"] = cfg.count;
    Outcome o{report::envelope(command, s.fingerprint(), params)};
    fill_mixed(o.body, mixed_geometric(s.family(), cfg.x, cfg.lambda, cfg.count, iv, s.options()), cfg.per_prime);
    return o;
  }
  params["x"] = cfg.x;
  params["L"] = cfg.limit;
  Outcome o{report::envelope(command, s.fingerprint(), params)};
  fill_mixed(o.body, mixed_primes(s.family(), cfg.x, cfg.limit, iv, s.options()), cfg.per_prime);
  return o;
}

Outcome sums_cmd(const std::string& which, const RunConfig& cfg, Session& s) {
  const std::string command = "sums " + which;
  if (which == "orders") {
    Json params{{"x", cfg.x}, {"lambda", cfg.lambda}, {"exponent", cfg.exponent}};
    if (cfg.y) params["y"] = cfg.y;
    Outcome o{report::envelope(command, std::nullopt, params)};
    const double sum = order_sum(cfg.x, cfg.lambda, cfg.exponent);
    o.body["count_or_average"] = sum;
    o.body["order_sum"] = sum;
    o.body["erdos_delta"] = erdos_delta();
    if (cfg.y) o.body["divisor_window_count"] = divisor_window_count(cfg.x, cfg.y);
    return o;
  }
  Json params = s.base_params();
  params["p"] = cfg.p;
  params["L"] = cfg.limit;
  params["n"] = cfg.n;
  if (which == "vaughan" || which == "mobius") {
    if (cfg.k_param) params["K"] = *cfg.k_param;
    if (cfg.m_param) params["M"] = *cfg.m_param;
  }
  if (which == "vaughan") {
    params["surrogate"] = cfg.surrogate;
    Outcome o{report::envelope(command, s.fingerprint(), params)};
    const VaughanReport r =
        vaughan_decompose(s.family(), cfg.p, cfg.limit, cfg.k_param, cfg.m_param, cfg.n, cfg.surrogate, s.options());
    o.body["count_or_average"] = r.direct_sum;
    o.body["bracket"] = r.lambda_bracket;
    o.body["ratio"] = std::abs(r.direct_sum) / r.lambda_bracket;
    o.body["report"] = report::to_json(r);
    return o;
  }
  if (which == "mobius") {
    Outcome o{report::envelope(command, s.fingerprint(), params)};
    const MobiusReport r = mobius_sums(s.family(), cfg.p, cfg.limit, cfg.n, cfg.k_param, cfg.m_param, s.options());
    o.body["count_or_average"] = r.mu_sum;
    o.body["report"] = report::to_json(r);
    return o;
  }
  Outcome o{report::envelope(command, s.fingerprint(), params)};
  const PrimeSymReport r = prime_sym_sum(s.family(), cfg.p, cfg.limit, cfg.n, s.options());
  o.body["count_or_average"] = r.value;
  o.body["bracket"] = r.prime2_bracket;
  o.body["ratio"] = std::abs(r.value) / r.prime2_bracket;
  o.body["report"] = report::to_json(r);
  return o;
}

Outcome cache_stats(Session& s) {
  Json params = s.base_params();
  Outcome o{report::envelope("cache stats", s.fingerprint(), params)};
  TraceCache* c = s.cache();
  if (!c) throw DomainError("cache stats needs --cache or STLAB_CACHE");
  o.body["count_or_average"] = c->size();
  o.body["path"] = c->path().string();
  o.body["rows"] = c->size();
  o.body["primes"] = c->prime_count();
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Sato-Tate statistics for one-parameter families of elliptic curves", "stlab"};
  app.require_subcommand(1);

  auto family_opts = [&](CLI::App* sub) {
    sub->add_option("--f", cfg.f, "coefficients of f(Z), constant term first")->required();
    sub->add_option("--g", cfg.g, "coefficients of g(Z), constant term first")->required();
  };
  auto run_opts = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all)");
    sub->add_option("--cache", cfg.cache_path, "trace cache file (STLAB_CACHE overrides)");
  };
  auto interval_opts = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "interval start in radians");
    sub->add_option("--beta", cfg.beta, "interval end in radians");
  };
  auto hist_opts = [&](CLI::App* sub) {
    sub->add_option("--csv", cfg.csv_path, "write histogram rows");
    sub->add_option("--svg", cfg.svg_path, "write histogram plot");
    sub->add_option("--bins", cfg.bins, "histogram bins")->check(CLI::PositiveNumber);
  };
  auto km_opts = [&](CLI::App* sub) {
    sub->add_option("--K", cfg.k_param, "Vaughan parameter K (default L^(1/3))");
    sub->add_option("--M", cfg.m_param, "Vaughan parameter M (default L^(1/3))");
  };

  auto* family = app.add_subcommand("family", "family validation");
  family->require_subcommand(1);
  auto* family_check_cmd = family->add_subcommand("check", "check nondegeneracy");
  family_opts(family_check_cmd);
  family_check_cmd->add_option("-p", cfg.p, "also check modulo this prime");

  auto* trace_sub = app.add_subcommand("trace", "Frobenius trace of one specialization");
  family_opts(trace_sub);
  trace_sub->add_option("-p", cfg.p)->required();
  trace_sub->add_option("-t", cfg.t)->required();
  trace_sub->add_option("--cache", cfg.cache_path);

  auto* angles_sub = app.add_subcommand("angles", "angle sample over a subgroup of F_p^*");
  family_opts(angles_sub);
  run_opts(angles_sub);
  interval_opts(angles_sub);
  hist_opts(angles_sub);
  angles_sub->add_option("-p", cfg.p)->required();
  angles_sub->add_option("--r", cfg.r, "subgroup order (default p - 1)");

  auto* verify = app.add_subcommand("verify", "exact bound checks");
  verify->require_subcommand(1);
  auto* charsum_sub = verify->add_subcommand("charsum", "multiplicative character sums of sym_n");
  family_opts(charsum_sub);
  run_opts(charsum_sub);
  charsum_sub->add_option("-p", cfg.p)->required();
  charsum_sub->add_option("--n-max", cfg.n_max)->check(CLI::PositiveNumber);
  charsum_sub->add_option("--mode", cfg.mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  charsum_sub->add_option("--samples", cfg.samples);
  charsum_sub->add_option("--seed", cfg.seed);
  charsum_sub->add_option("--r", cfg.r, "restrict to the subgroup of this order");

  auto* experiment = app.add_subcommand("experiment", "equidistribution experiments");
  experiment->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> experiments;
  for (const char* name : {"vertical-subgroup", "vertical-product", "vertical-primes", "mixed-product",
                           "mixed-geometric", "mixed-primes"}) {
    auto* sub = experiment->add_subcommand(name);
    family_opts(sub);
    run_opts(sub);
    interval_opts(sub);
    experiments.emplace_back(name, sub);
    const std::string n(name);
    if (n.starts_with("vertical")) {
      sub->add_option("-p", cfg.p)->required();
      hist_opts(sub);
    } else {
      sub->add_option("--x", cfg.x)->required();
      sub->add_flag("--per-prime", cfg.per_prime, "include per-prime counts");
    }
    if (n == "vertical-subgroup") sub->add_option("--r", cfg.r)->required();
    if (n.ends_with("product")) {
      sub->add_option("--U", cfg.u, "a..b or a,b,c")->required();
      sub->add_option("--V", cfg.v, "a..b or a,b,c")->required();
    }
    if (n.ends_with("primes")) sub->add_option("--L", cfg.limit)->required();
    if (n == "mixed-geometric") {
      sub->add_option("--lambda", cfg.lambda)->required();
      sub->add_option("--T", cfg.count)->required();
    }
  }

  auto* sums = app.add_subcommand("sums", "sums of sym_n over structured sets");
  sums->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> sum_cmds;
  for (const char* name : {"vaughan", "mobius", "prime-sym"}) {
    auto* sub = sums->add_subcommand(name);
    family_opts(sub);
    run_opts(sub);
    sub->add_option("-p", cfg.p)->required();
    sub->add_option("--L", cfg.limit)->required();
    sub->add_option("--n", cfg.n);
    if (std::string(name) != "prime-sym") km_opts(sub);
    if (std::string(name) == "vaughan") sub->add_flag("--surrogate", cfg.surrogate, "use psi = 1");
    sum_cmds.emplace_back(name, sub);
  }
  auto* orders = sums->add_subcommand("orders", "sums of ord_p(lambda)^(-a) over primes");
  orders->add_option("--x", cfg.x)->required();
  orders->add_option("--lambda", cfg.lambda)->required();
  orders->add_option("--exponent", cfg.exponent);
  orders->add_option("--y", cfg.y, "also count primes with a divisor of p - 1 in (y, 2y]");
  sum_cmds.emplace_back("orders", orders);

  auto* cache = app.add_subcommand("cache", "trace cache");
  cache->require_subcommand(1);
  auto* stats = cache->add_subcommand("stats");
  family_opts(stats);
  stats->add_option("--cache", cfg.cache_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Help and usage text for nested subcommands.
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Session session(cfg);
  try {
    Outcome o;
    if (family_check_cmd->parsed()) {
      o = family_check(cfg, session);
    } else if (trace_sub->parsed()) {
      o = trace_cmd(cfg, session);
    } else if (angles_sub->parsed()) {
      o = angles_cmd(cfg, session);
    } else if (charsum_sub->parsed()) {
      o = charsum_cmd(cfg, session);
    } else if (stats->parsed()) {
      o = cache_stats(session);
    } else {
      bool found = false;
      for (const auto& [name, sub] : experiments) {
        if (sub->parsed()) {
          o = experiment_cmd(name, cfg, session);
          found = true;
        }
      }
      for (const auto& [name, sub] : sum_cmds) {
        if (sub->parsed()) {
          o = sums_cmd(name, cfg, session);
          found = true;
        }
      }
      if (!found) throw DomainError("no command given");
    }
    session.flush();
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    report::finalize(o.body, elapsed.count());
    out << o.body.dump(2) << "\n";
    if (o.code != kExitOk) err << "error: hypothesis not satisfied\n";
    return o.code;
  } catch (const HypothesisError& e) {
    err << "hypothesis violated: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const RefusedError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << "\n";
    return kExitCache;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace stlab
