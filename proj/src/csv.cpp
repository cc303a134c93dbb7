#include "airec/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "airec/errors.hpp"

namespace airec::csv {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

std::string field_of(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_double_field(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw MalformedLine(line_no, "bad numeric field '" + std::string(field) + "'");
    }
    return value;
}

std::size_t parse_count_field(std::string_view field, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw MalformedLine(line_no, "bad count field '" + std::string(field) + "'");
    }
    return value;
}

void write_stat_fields(std::ostream& out, const std::optional<MetricStat>& stat) {
    if (stat) {
        out << ',' << format_double(stat->mean) << ',' << format_double(stat->stddev);
    } else {
        out << ",,";
    }
}

constexpr std::string_view kRunSummaryHeader =
    "row,fingerprint,seed,n_test_users,mae_mean,mae_std,recommendations_mean,"
    "recommendations_std,overlap_mean,overlap_std,kendall_tau_mean,kendall_tau_std,"
    "reviewers_examined_mean,reviewers_examined_std,neighborhood_size_mean,"
    "neighborhood_size_std,no_prediction_count,missing_tau_count";

}  // namespace

void write_per_user(std::ostream& out, std::span<const PerUserMetrics> rows) {
    out << kPerUserHeader << '\n';
    for (const PerUserMetrics& row : rows) {
        out << row.user_id << ',' << field_of(row.abs_error) << ',' << row.n_recommendations
            << ',' << row.overlap_size << ',' << field_of(row.kendall_tau) << ','
            << row.reviewers_examined << ',' << row.neighborhood_size << ','
            << (row.fallback_used ? 1 : 0) << '\n';
    }
}

std::vector<PerUserMetrics> read_per_user(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw MalformedLine(1, "missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kPerUserHeader) {
        throw MalformedLine(1, "expected header '" + std::string(kPerUserHeader) + "'");
    }

    std::vector<PerUserMetrics> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto fields = split_fields(line);
        if (fields.size() != 8) {
            throw MalformedLine(line_no, "expected 8 fields");
        }
        PerUserMetrics row;
        row.user_id = static_cast<UserId>(parse_count_field(fields[0], line_no));
        if (!fields[1].empty()) row.abs_error = parse_double_field(fields[1], line_no);
        row.n_recommendations = parse_count_field(fields[2], line_no);
        row.overlap_size = parse_count_field(fields[3], line_no);
        if (!fields[4].empty()) row.kendall_tau = parse_double_field(fields[4], line_no);
        row.reviewers_examined = parse_count_field(fields[5], line_no);
        row.neighborhood_size = parse_count_field(fields[6], line_no);
        row.fallback_used = fields[7] == "1";
        rows.push_back(row);
    }
    return rows;
}

void write_run_summary(std::ostream& out, std::span<const RunMetrics> runs,
                       const RunAggregate& aggregate) {
    out << kRunSummaryHeader << '\n';
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const RunMetrics& run = runs[i];
        out << "run" << i << ',' << run.fingerprint << ',' << run.seed << ','
            << run.n_test_users;
        write_stat_fields(out, run.abs_error);
        write_stat_fields(out, run.recommendations);
        write_stat_fields(out, run.overlap);
        write_stat_fields(out, run.tau);
        write_stat_fields(out, run.reviewers_examined);
        write_stat_fields(out, run.neighborhood_size);
        out << ',' << run.no_prediction_count << ',' << run.missing_tau_count << '\n';
    }
    double mean_users = 0.0;
    for (const RunMetrics& run : runs) mean_users += static_cast<double>(run.n_test_users);
    if (!runs.empty()) mean_users /= static_cast<double>(runs.size());
    out << "aggregate," << aggregate.fingerprint << ",," << format_double(mean_users);
    write_stat_fields(out, aggregate.abs_error);
    write_stat_fields(out, std::optional<MetricStat>(aggregate.recommendations));
    write_stat_fields(out, std::optional<MetricStat>(aggregate.overlap));
    write_stat_fields(out, aggregate.tau);
    write_stat_fields(out, std::optional<MetricStat>(aggregate.reviewers_examined));
    write_stat_fields(out, std::optional<MetricStat>(aggregate.neighborhood_size));
    out << ',' << aggregate.no_prediction_count << ',' << aggregate.missing_tau_count << '\n';
}

void write_sweep(std::ostream& out, std::span<const SweepRow> rows) {
    out << kSweepHeader << '\n';
    for (const SweepRow& row : rows) {
        out << format_double(row.k1) << ',' << format_double(row.k2) << ',' << row.metric << ','
            << field_of(row.mean) << ',' << field_of(row.stddev) << '\n';
    }
}

std::optional<double> metric_value(const PerUserMetrics& row, std::string_view metric) {
    if (metric == "abs_error") return row.abs_error;
    if (metric == "n_recommendations") return static_cast<double>(row.n_recommendations);
    if (metric == "overlap_size") return static_cast<double>(row.overlap_size);
    if (metric == "kendall_tau") return row.kendall_tau;
    if (metric == "reviewers_examined") return static_cast<double>(row.reviewers_examined);
    if (metric == "neighborhood_size") return static_cast<double>(row.neighborhood_size);
    throw UnknownMetric("unknown metric '" + std::string(metric) +
                        "'; expected one of abs_error, n_recommendations, overlap_size, "
                        "kendall_tau, reviewers_examined, neighborhood_size");
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                          ec.message());
}

}  // namespace airec::csv
