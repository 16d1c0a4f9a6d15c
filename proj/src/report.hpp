#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stlab/experiments.hpp"
#include "stlab/st_stats.hpp"

namespace stlab::report {

using Json = nlohmann::ordered_json;

/// Report object with every schema key present: command, family_fingerprint,
/// params, mu, count_or_average, bracket, ratio. runtime_ms is added by
/// finalize() so it always comes last.
Json envelope(const std::string& command, const std::optional<std::string>& fingerprint, Json params);

void finalize(Json& j, double runtime_ms);

Json interval_json(const Interval& iv);

Json to_json(const VerticalReport& r);
Json to_json(const MixedReport& r, bool per_prime);
Json to_json(const CharSumReport& r);
Json to_json(const VaughanReport& r);
Json to_json(const MobiusReport& r);
Json to_json(const PrimeSymReport& r);
Json to_json(const DiscrepancyReport& r);

/// `bin_lo,bin_hi,count,st_mass` with six decimals.
void write_histogram_csv(const std::filesystem::path& path, const std::vector<HistogramRow>& rows);

/// Density histogram with the Sato-Tate density (2/pi) sin^2 drawn on top.
void write_histogram_svg(const std::filesystem::path& path, const std::vector<HistogramRow>& rows,
                         const std::string& title);

}  // namespace stlab::report
