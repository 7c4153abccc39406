#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "dch/series.hpp"

namespace dch {

/// Column names of a monthly station summary file.
struct StationColumns {
    std::string station = "STATION";
    std::string date = "DATE";  // YYYY-MM
    std::string latitude = "LATITUDE";
    std::string longitude = "LONGITUDE";
};

struct StationFilter {
    std::pair<double, double> lat_range{-90.0, 90.0};
    std::pair<double, double> lon_range{-180.0, 180.0};
    std::string field_name = "TAVG";

    void validate() const;
};

struct IngestReport {
    SeriesTable table;
    std::size_t rows_read = 0;
    std::size_t malformed = 0;   // skipped rows
    std::size_t duplicates = 0;  // later row replaced an earlier one
    std::size_t dropped = 0;     // whole series dropped
    std::vector<std::string> warnings;
};

/// One series per station inside the box, keyed by station id and indexed by
/// month (TimeKind::Month). Files are read in sorted path order; for a repeated
/// (station, month) the last row wins. Coordinates are (longitude, latitude)
/// from the station's first row. Empty value cells are missing months.
/// Throws ValidationError when no station survives.
IngestReport load_station_series(std::vector<std::filesystem::path> files, const StationFilter& filter,
                                 const StationColumns& columns = {});

struct QuoteSeriesOptions {
    /// Tickers to keep; empty keeps every file. A ticker is its file stem.
    std::vector<std::string> tickers;
    std::string date_column = "Date";
    std::string price_column = "Close";
    /// Tickers with fewer valid price rows are dropped.
    std::size_t min_rows = 2;
};

/// Daily relative changes (c_t - c_{t-1}) / c_{t-1} between consecutive
/// trading dates, one series per ticker in sorted ticker order, indexed by
/// date. Nonpositive or unparsable closes are skipped as malformed.
IngestReport load_quote_series(std::vector<std::filesystem::path> files, const QuoteSeriesOptions& options);

}  // namespace dch
