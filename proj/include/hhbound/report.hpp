#pragma once

// Report and configuration formats.
//
// CSV header:
//   theorem_id,family_f,family_g,a,b,x,q,alpha,m,lhs,rhs,slack,tightness,holds
// one row per evaluated case, reals with 17 significant digits. The sibling
// JSON file carries the config echo (including the seed), the summary
// counters, every report, every hypothesis rejection and every case error.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "hhbound/harness.hpp"

namespace hhbound {

inline constexpr const char* kCsvHeader =
    "theorem_id,family_f,family_g,a,b,x,q,alpha,m,lhs,rhs,slack,tightness,holds";

/// printf("%.17g").
std::string format_g17(double value);

void write_csv(std::ostream& out, const SuiteResult& result);

nlohmann::json config_to_json(const SuiteConfig& config);
/// Inverse of config_to_json; missing fields take the SuiteConfig /
/// CaseSpec defaults. Throws InvalidArgument on malformed input.
SuiteConfig config_from_json(const nlohmann::json& json);
SuiteConfig load_config(const std::filesystem::path& path);

nlohmann::json result_to_json(const SuiteConfig& config,
                              const SuiteResult& result);

/// Writes `<output_dir>/<name>.csv` and `<output_dir>/<name>.json`.
/// Both files are rendered in memory first; throws std::runtime_error on
/// I/O failure.
void write_reports(const SuiteConfig& config, const SuiteResult& result);

}  // namespace hhbound
