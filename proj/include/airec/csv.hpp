#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "airec/evaluation.hpp"

namespace airec::csv {

/// Shortest round-trip decimal form (dot separator, no locale).
std::string format_double(double v);

inline constexpr std::string_view kPerUserHeader =
    "user_id,abs_error,n_recommendations,overlap_size,kendall_tau,"
    "reviewers_examined,neighborhood_size,fallback_used";

void write_per_user(std::ostream& out, std::span<const PerUserMetrics> rows);
std::vector<PerUserMetrics> read_per_user(std::istream& in);  // throws MalformedLine

void write_run_summary(std::ostream& out, std::span<const RunMetrics> runs,
                       const RunAggregate& aggregate);

inline constexpr std::string_view kSweepHeader = "k1,k2,metric,mean,std";

struct SweepRow {
    double k1 = 0.0;
    double k2 = 0.0;
    std::string metric;
    std::optional<double> mean;
    std::optional<double> stddev;
};

void write_sweep(std::ostream& out, std::span<const SweepRow> rows);

/// Value of a named per-user metric column; nullopt when absent for the user.
/// Throws UnknownMetric for names not in the per-user header.
std::optional<double> metric_value(const PerUserMetrics& row, std::string_view metric);

/// Writes via a temp file in the target directory plus rename, so concurrent
/// writers never interleave. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace airec::csv
