#include "dch/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "dch/csv.hpp"
#include "dch/error.hpp"

namespace dch {

void StationFilter::validate() const {
    if (!(lat_range.first <= lat_range.second) || !(lon_range.first <= lon_range.second))
        throw ValidationError("station filter: ranges must satisfy low <= high");
    if (field_name.empty()) throw ValidationError("station filter: empty field name");
}

namespace {

std::size_t require_column(const CsvTable& csv, const std::string& name, const std::filesystem::path& file) {
    auto c = csv.column(name);
    if (!c) throw ValidationError(file.string() + ": missing column '" + name + "'");
    return *c;
}

std::string where(const std::filesystem::path& file, std::size_t line) {
    return file.filename().string() + ":" + std::to_string(line);
}

struct StationData {
    Point2 coord;
    std::map<std::int64_t, double> values;
};

}  // namespace

IngestReport load_station_series(std::vector<std::filesystem::path> files, const StationFilter& filter,
                                 const StationColumns& columns) {
    filter.validate();
    std::sort(files.begin(), files.end());
    IngestReport report;
    std::map<std::string, StationData> stations;
    for (const auto& file : files) {
        const CsvTable csv = read_csv(file);
        const std::size_t c_id = require_column(csv, columns.station, file);
        const std::size_t c_date = require_column(csv, columns.date, file);
        const std::size_t c_lat = require_column(csv, columns.latitude, file);
        const std::size_t c_lon = require_column(csv, columns.longitude, file);
        const std::size_t c_val = require_column(csv, filter.field_name, file);
        const std::size_t needed = std::max({c_id, c_date, c_lat, c_lon, c_val}) + 1;
        for (std::size_t r = 0; r < csv.rows.size(); ++r) {
            const auto& row = csv.rows[r];
            ++report.rows_read;
            auto malformed = [&](const std::string& why) {
                ++report.malformed;
                report.warnings.push_back(where(file, csv.line_numbers[r]) + ": " + why);
            };
            if (row.size() < needed) {
                malformed("too few fields");
                continue;
            }
            const std::string id = trim(row[c_id]);
            const auto time = parse_time(row[c_date]);
            const auto lat = parse_double(row[c_lat]);
            const auto lon = parse_double(row[c_lon]);
            if (id.empty() || !time || time->second != TimeKind::Month || !lat || !lon) {
                malformed("bad station, date or coordinates");
                continue;
            }
            if (*lat < filter.lat_range.first || *lat > filter.lat_range.second ||
                *lon < filter.lon_range.first || *lon > filter.lon_range.second)
                continue;
            const std::string cell = trim(row[c_val]);
            if (cell.empty()) continue;
            const auto value = parse_double(cell);
            if (!value || !std::isfinite(*value)) {
                malformed("bad value '" + cell + "'");
                continue;
            }
            auto [it, fresh] = stations.try_emplace(id);
            if (fresh) it->second.coord = {*lon, *lat};
            auto [slot, inserted] = it->second.values.insert_or_assign(time->first, *value);
            (void)slot;
            if (!inserted) {
                ++report.duplicates;
                report.warnings.push_back(where(file, csv.line_numbers[r]) + ": duplicate " + id + " " +
                                          format_time(time->first, TimeKind::Month) + ", later value kept");
            }
        }
    }
    if (stations.empty()) throw ValidationError("station ingest: no station inside the filter box");
    report.table.time_kind = TimeKind::Month;
    for (auto& [id, data] : stations) {
        std::vector<Observation> obs;
        for (const auto& [t, v] : data.values) obs.push_back({t, v});
        report.table.add(id, std::move(obs));
        report.table.coords.push_back(data.coord);
    }
    return report;
}

IngestReport load_quote_series(std::vector<std::filesystem::path> files, const QuoteSeriesOptions& quote_opts) {
    std::sort(files.begin(), files.end());
    const std::set<std::string> wanted(quote_opts.tickers.begin(), quote_opts.tickers.end());
    IngestReport report;
    report.table.time_kind = TimeKind::Date;
    std::map<std::string, std::map<std::int64_t, double>> closes;
    for (const auto& file : files) {
        const std::string ticker = file.stem().string();
        if (!wanted.empty() && !wanted.count(ticker)) continue;
        const CsvTable csv = read_csv(file);
        const std::size_t c_date = require_column(csv, quote_opts.date_column, file);
        const std::size_t c_price = require_column(csv, quote_opts.price_column, file);
        auto& series = closes[ticker];
        for (std::size_t r = 0; r < csv.rows.size(); ++r) {
            const auto& row = csv.rows[r];
            ++report.rows_read;
            auto malformed = [&](const std::string& why) {
                ++report.malformed;
                report.warnings.push_back(where(file, csv.line_numbers[r]) + ": " + why);
            };
            if (row.size() <= std::max(c_date, c_price)) {
                malformed("too few fields");
                continue;
            }
            const auto time = parse_time(row[c_date]);
            const auto price = parse_double(row[c_price]);
            if (!time || time->second != TimeKind::Date) {
                malformed("bad date '" + row[c_date] + "'");
                continue;
            }
            if (!price || !std::isfinite(*price) || *price <= 0.0) {
                malformed("nonpositive or unparsable close '" + row[c_price] + "'");
                continue;
            }
            if (!series.insert_or_assign(time->first, *price).second) {
                ++report.duplicates;
                report.warnings.push_back(where(file, csv.line_numbers[r]) + ": duplicate date, later value kept");
            }
        }
    }
    for (const auto& t : wanted)
        if (!closes.count(t)) report.warnings.push_back("ticker " + t + ": no file");
    for (const auto& [ticker, series] : closes) {
        if (series.size() < std::max<std::size_t>(quote_opts.min_rows, 2)) {
            ++report.dropped;
            report.warnings.push_back("ticker " + ticker + ": only " + std::to_string(series.size()) +
                                      " valid rows, dropped");
            continue;
        }
        std::vector<Observation> obs;
        double prev = 0.0;
        bool first = true;
        for (const auto& [t, close] : series) {
            if (!first) obs.push_back({t, (close - prev) / prev});
            prev = close;
            first = false;
        }
        report.table.add(ticker, std::move(obs));
    }
    if (report.table.series.empty()) throw ValidationError("quote ingest: no ticker with enough rows");
    return report;
}

}  // namespace dch
