#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdep/gw.hpp"
#include "mdep/rng.hpp"
#include "mdep/variance.hpp"

namespace mdep {

enum class ReportFormat { json, csv };

/// One command-line invocation. Zero / empty fields take per-command defaults.
struct RunConfig {
    /// analyze, decompose, clt, bst, gw or witness
    std::string command;
    /// Factor file path, or a catalog name.
    std::optional<std::string> input;
    std::optional<std::string> factor;
    std::uint64_t seed = kDefaultSeed;
    std::size_t reps = 0;
    std::vector<std::size_t> n;
    double tolerance = kDefaultTolerance;
    ReportFormat format = ReportFormat::json;
    unsigned workers = 0;
    std::optional<std::size_t> truncate;
    std::vector<std::string> trees;
    std::vector<double> coefs;
    std::optional<std::string> offspring;
    bool certificate = false;
    /// Rejected sequences allowed per conditioned GW tree.
    std::size_t budget = kDefaultRejectionBudget;
};

/// The verdict code is 10 when the command established sigma^2 > 0
/// (decompose, witness) and 0 otherwise.
struct RunResult {
    std::string report;
    int verdict = 0;
};

inline constexpr int kVerdictNondegenerate = 10;

RunResult run_command(const RunConfig& config);

/// RunConfig as a JSON object with the field names above; parse errors
/// name the offending field.
RunConfig parse_run_config(std::string_view json_text);
std::string run_config_to_json(const RunConfig& config);

/// Converts a JSON report to CSV: its "rows" array as a table when present,
/// otherwise one "path,value" line per scalar.
std::string report_to_csv(std::string_view json_report);

const char* library_version() noexcept;

}  // namespace mdep
