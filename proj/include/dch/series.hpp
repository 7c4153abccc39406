#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dch/graph.hpp"

namespace dch {

/// How the integer time key of a SeriesTable is rendered.
enum class TimeKind {
    Integer,  // plain integer index
    Month,    // YYYY-MM, key = year * 12 + (month - 1)
    Date,     // YYYY-MM-DD, key = days since 1970-01-01
};

struct Observation {
    std::int64_t t = 0;
    double value = 0.0;
    bool operator==(const Observation&) const = default;
};

struct Series {
    std::string name;
    std::vector<Observation> values;  // strictly increasing t
    bool operator==(const Series&) const = default;
};

/// Named scalar time series on a shared time axis; missing values are simply
/// absent from a series.
struct SeriesTable {
    TimeKind time_kind = TimeKind::Integer;
    std::vector<Series> series;
    /// Optional planar position per series (empty, or one per series).
    std::vector<Point2> coords;

    std::size_t size() const { return series.size(); }
    /// Adds a series; throws ValidationError unless times strictly increase.
    void add(std::string name, std::vector<Observation> values);
    /// Throws ValidationError if any invariant is violated.
    void validate() const;
    std::vector<std::string> names() const;

    bool operator==(const SeriesTable&) const = default;
};

std::string format_time(std::int64_t t, TimeKind kind);
/// Parses an integer, YYYY-MM or YYYY-MM-DD time field.
std::optional<std::pair<std::int64_t, TimeKind>> parse_time(std::string_view text);

/// SeriesTable CSV: first column `t`, one column per series, empty = missing.
SeriesTable read_series_csv(const std::filesystem::path& path);
SeriesTable parse_series_csv(std::string_view text);
std::string series_csv_text(const SeriesTable& table);
void write_series_csv(const std::filesystem::path& path, const SeriesTable& table);

struct FitConfig {
    /// Pairs sharing fewer time points get weight 1.
    std::size_t min_overlap = 3;
    /// R^2 reported when either sample has zero variance.
    double degenerate_r2 = 0.0;
};

/// Squared Pearson correlation of paired samples.
double r_squared(std::span<const double> x, std::span<const double> y, const FitConfig& cfg = {});

struct MultiFitResult {
    double r2 = 0.0;
    /// Design matrix was rank deficient; the minimum-norm solution was used.
    bool rank_deficient = false;
};

/// Coefficient of determination of an ordinary least-squares fit with
/// intercept, clamped to [0, 1]. Requires more samples than predictors + 1.
MultiFitResult multivariate_r2(std::span<const double> target,
                               const std::vector<std::vector<double>>& predictors,
                               const FitConfig& cfg = {});

/// Values of two series restricted to their common time points.
std::pair<std::vector<double>, std::vector<double>> overlap(const Series& a, const Series& b);

/// Complete graph on the series with weight 1 - R^2 over each pair's common
/// time points (weight 1 when the overlap is below cfg.min_overlap). Series
/// names become labels and table coordinates carry over.
WeightedGraph correlation_graph(const SeriesTable& table, const FitConfig& cfg = {}, std::size_t threads = 1);

/// Complete graph with Euclidean distances as weights; points become coords.
WeightedGraph metric_graph(std::span<const Point2> points);

}  // namespace dch
