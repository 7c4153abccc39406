#include "dch/series.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "dch/csv.hpp"
#include "dch/error.hpp"
#include "dch/thread_pool.hpp"

namespace dch {

void SeriesTable::add(std::string name, std::vector<Observation> values) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i].t <= values[i - 1].t)
            throw ValidationError("series '" + name + "': time indices must strictly increase");
    series.push_back({std::move(name), std::move(values)});
}

void SeriesTable::validate() const {
    if (!coords.empty() && coords.size() != series.size())
        throw ValidationError("series table: coordinate count does not match series count");
    for (const auto& s : series)
        for (std::size_t i = 1; i < s.values.size(); ++i)
            if (s.values[i].t <= s.values[i - 1].t)
                throw ValidationError("series '" + s.name + "': time indices must strictly increase");
}

std::vector<std::string> SeriesTable::names() const {
    std::vector<std::string> out;
    for (const auto& s : series) out.push_back(s.name);
    return out;
}

std::string format_time(std::int64_t t, TimeKind kind) {
    using namespace std::chrono;
    char buf[64];
    switch (kind) {
        case TimeKind::Integer:
            return std::to_string(t);
        case TimeKind::Month: {
            const std::int64_t year = t >= 0 ? t / 12 : -((-t + 11) / 12);
            const std::int64_t month = t - year * 12 + 1;
            std::snprintf(buf, sizeof buf, "%04lld-%02lld", static_cast<long long>(year), static_cast<long long>(month));
            return buf;
        }
        case TimeKind::Date: {
            const year_month_day ymd{sys_days{days{t}}};
            std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                          unsigned(ymd.day()));
            return buf;
        }
    }
    return {};
}

std::optional<std::pair<std::int64_t, TimeKind>> parse_time(std::string_view text) {
    using namespace std::chrono;
    const std::string s = trim(text);
    if (auto i = parse_integer(s)) return std::pair{static_cast<std::int64_t>(*i), TimeKind::Integer};
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (s.size() == 10 && std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) == 3) {
        const year_month_day ymd{year{y}, month{m}, day{d}};
        if (!ymd.ok()) return std::nullopt;
        return std::pair{static_cast<std::int64_t>(sys_days{ymd}.time_since_epoch().count()), TimeKind::Date};
    }
    if (s.size() == 7 && std::sscanf(s.c_str(), "%4d-%2u%c", &y, &m, &tail) == 2) {
        if (m < 1 || m > 12) return std::nullopt;
        return std::pair{static_cast<std::int64_t>(y) * 12 + (m - 1), TimeKind::Month};
    }
    return std::nullopt;
}

SeriesTable parse_series_csv(std::string_view text) {
    const CsvTable csv = parse_csv(text);
    if (csv.header.empty() || csv.header[0] != "t")
        throw ValidationError("series CSV must start with a 't' column");
    SeriesTable table;
    const std::size_t n = csv.header.size() - 1;
    std::vector<std::vector<Observation>> values(n);
    std::optional<TimeKind> kind;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        const std::string where = "line " + std::to_string(csv.line_numbers[r]);
        auto t = parse_time(row[0]);
        if (!t) throw ValidationError(where + ": bad time value '" + row[0] + "'");
        if (kind && *kind != t->second) throw ValidationError(where + ": mixed time formats");
        kind = t->second;
        for (std::size_t c = 1; c < row.size() && c <= n; ++c) {
            if (trim(row[c]).empty()) continue;
            auto v = parse_double(row[c]);
            if (!v) throw ValidationError(where + ": bad value '" + row[c] + "'");
            values[c - 1].push_back({t->first, *v});
        }
    }
    table.time_kind = kind.value_or(TimeKind::Integer);
    for (std::size_t c = 0; c < n; ++c) {
        auto& obs = values[c];
        std::stable_sort(obs.begin(), obs.end(), [](const Observation& a, const Observation& b) { return a.t < b.t; });
        table.add(csv.header[c + 1], std::move(obs));
    }
    return table;
}

SeriesTable read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return parse_series_csv(text);
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string series_csv_text(const SeriesTable& table) {
    table.validate();
    std::set<std::int64_t> times;
    for (const auto& s : table.series)
        for (const auto& o : s.values) times.insert(o.t);
    std::string out = "t";
    for (const auto& s : table.series) out += "," + csv_escape(s.name);
    out += "\n";
    std::vector<std::size_t> cursor(table.size(), 0);
    for (std::int64_t t : times) {
        out += format_time(t, table.time_kind);
        for (std::size_t i = 0; i < table.size(); ++i) {
            out += ",";
            const auto& vals = table.series[i].values;
            if (cursor[i] < vals.size() && vals[cursor[i]].t == t) out += format_double(vals[cursor[i]++].value);
        }
        out += "\n";
    }
    return out;
}

void write_series_csv(const std::filesystem::path& path, const SeriesTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << series_csv_text(table);
}

namespace {

bool zero_variance(double centered_ss, std::span<const double> x) {
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    const double tol = 1e-14 * scale;
    return centered_ss <= tol * tol * static_cast<double>(x.size());
}

}  // namespace

double r_squared(std::span<const double> x, std::span<const double> y, const FitConfig& cfg) {
    if (x.size() != y.size()) throw ValidationError("r_squared: length mismatch");
    if (x.size() < 2) throw ValidationError("r_squared: need at least two samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (zero_variance(sxx, x) || zero_variance(syy, y)) return cfg.degenerate_r2;
    return std::clamp((sxy * sxy) / (sxx * syy), 0.0, 1.0);
}

MultiFitResult multivariate_r2(std::span<const double> target, const std::vector<std::vector<double>>& predictors,
                               const FitConfig& cfg) {
    const std::size_t n = target.size();
    const std::size_t p = predictors.size();
    for (const auto& col : predictors)
        if (col.size() != n) throw ValidationError("multivariate_r2: length mismatch");
    if (n <= p + 1) throw ValidationError("multivariate_r2: need more samples than predictors + 1");

    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p + 1));
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        y(r) = target[i];
        x(r, 0) = 1.0;
        for (std::size_t j = 0; j < p; ++j) x(r, static_cast<Eigen::Index>(j + 1)) = predictors[j][i];
    }
    const double mean = y.mean();
    const double total = (y.array() - mean).square().sum();
    if (zero_variance(total, target)) return {cfg.degenerate_r2, false};

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
    const Eigen::VectorXd beta = cod.solve(y);
    const double residual = (y - x * beta).squaredNorm();
    MultiFitResult out;
    out.rank_deficient = cod.rank() < x.cols();
    out.r2 = std::clamp(1.0 - residual / total, 0.0, 1.0);
    return out;
}

std::pair<std::vector<double>, std::vector<double>> overlap(const Series& a, const Series& b) {
    std::vector<double> xa, xb;
    std::size_t i = 0, j = 0;
    while (i < a.values.size() && j < b.values.size()) {
        if (a.values[i].t < b.values[j].t) ++i;
        else if (b.values[j].t < a.values[i].t) ++j;
        else {
            xa.push_back(a.values[i++].value);
            xb.push_back(b.values[j++].value);
        }
    }
    return {std::move(xa), std::move(xb)};
}

WeightedGraph correlation_graph(const SeriesTable& table, const FitConfig& cfg, std::size_t threads) {
    if (cfg.min_overlap < 2) throw ValidationError("min_overlap must be at least 2");
    table.validate();
    const std::size_t n = table.size();
    std::vector<double> weights(n * n, 1.0);
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto [x, y] = overlap(table.series[i], table.series[j]);
            double w = 1.0;
            if (x.size() >= cfg.min_overlap) w = std::clamp(1.0 - r_squared(x, y, cfg), 0.0, 1.0);
            weights[i * n + j] = w;
        }
    });
    WeightedGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(Vertex(i), Vertex(j), weights[i * n + j]);
    g.set_labels(table.names());
    g.set_coords(table.coords);
    return g;
}

WeightedGraph metric_graph(std::span<const Point2> points) {
    const std::size_t n = points.size();
    WeightedGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.add_edge(Vertex(i), Vertex(j), std::hypot(points[i].x - points[j].x, points[i].y - points[j].y));
    g.set_coords({points.begin(), points.end()});
    return g;
}

}  // namespace dch
