#include "dch/experiments.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "dch/bottleneck.hpp"
#include "dch/csv.hpp"
#include "dch/error.hpp"
#include "dch/flag.hpp"
#include "dch/io.hpp"
#include "dch/thread_pool.hpp"

namespace dch {

// ---------------------------------------------------------------------------
// Configuration parsing

KeyValues parse_key_values(std::string_view text) {
    KeyValues kv;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ValidationError("config line " + std::to_string(line_no) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
    try {
        return parse_key_values(read_text_file(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

namespace {

std::size_t as_size(const std::string& key, const std::string& value) {
    auto v = parse_integer(value);
    if (!v || *v < 0) throw ValidationError("config '" + key + "': expected a nonnegative integer");
    return static_cast<std::size_t>(*v);
}

std::uint64_t as_seed(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(value, &used, 0);
        if (used == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError("config '" + key + "': expected an unsigned integer");
}

double as_real(const std::string& key, const std::string& value) {
    auto v = parse_double(value);
    if (!v || !std::isfinite(*v)) throw ValidationError("config '" + key + "': expected a finite number");
    return *v;
}

[[noreturn]] void unknown_key(const std::string& key) {
    throw ValidationError("unknown config key '" + key + "'");
}

}  // namespace

void CircleConfig::validate() const {
    if (point_count < 5) throw ValidationError("circle: point_count must be at least 5");
    if (!(noise_sigma >= 0.0)) throw ValidationError("circle: noise_sigma must be nonnegative");
    if (!(radius > 0.0)) throw ValidationError("circle: radius must be positive");
}

void CircleConfig::apply(const KeyValues& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "point_count") point_count = as_size(k, v);
        else if (k == "radius") radius = as_real(k, v);
        else if (k == "noise_sigma") noise_sigma = as_real(k, v);
        else if (k == "iterations") iterations = as_size(k, v);
        else if (k == "seed") seed = as_seed(k, v);
        else unknown_key(k);
    }
    validate();
}

void MultiFitConfig::validate() const {
    if (list_count < 2) throw ValidationError("multifit: list_count must be at least 2");
    if (list_length < 3) throw ValidationError("multifit: list_length must be at least 3");
    if (list_length <= list_count)
        throw ValidationError("multifit: list_length must exceed list_count for the multivariate fit");
}

void MultiFitConfig::apply(const KeyValues& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "list_count") list_count = as_size(k, v);
        else if (k == "list_length") list_length = as_size(k, v);
        else if (k == "iterations") iterations = as_size(k, v);
        else if (k == "seed") seed = as_seed(k, v);
        else unknown_key(k);
    }
    validate();
}

void WeatherConfig::validate() const {
    if (rows < 3 || cols < 3) throw ValidationError("weather: grid must be at least 3x3");
    if (!(p > 0.0)) throw ValidationError("weather: p must be positive");
    if (readings < 2) throw ValidationError("weather: readings must be at least 2");
    if (!(disturbance_weight >= 1.0)) throw ValidationError("weather: w must be at least 1");
    for (double w : sweep_weights)
        if (!(w >= 1.0) || !std::isfinite(w)) throw ValidationError("weather: swept w values must be >= 1");
    if (!(noise_scale >= 0.0)) throw ValidationError("weather: noise_scale must be nonnegative");
}

void WeatherConfig::apply(const KeyValues& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "rows") rows = as_size(k, v);
        else if (k == "cols") cols = as_size(k, v);
        else if (k == "p") p = as_real(k, v);
        else if (k == "readings") readings = as_size(k, v);
        else if (k == "w") disturbance_weight = as_real(k, v);
        else if (k == "weights") {
            sweep_weights.clear();
            for (const auto& item : split_csv_line(v)) sweep_weights.push_back(as_real(k, trim(item)));
            if (sweep_weights.empty()) throw ValidationError("config 'weights': empty list");
        } else if (k == "iterations") iterations = as_size(k, v);
        else if (k == "seed") seed = as_seed(k, v);
        else if (k == "noise_scale") noise_scale = as_real(k, v);
        else unknown_key(k);
    }
    validate();
}

// ---------------------------------------------------------------------------
// Noisy circle

std::vector<Point2> circle_points(std::size_t n, double radius) {
    std::vector<Point2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = {radius * std::cos(a), radius * std::sin(a)};
    }
    return pts;
}

std::vector<Point2> perturb(std::span<const Point2> points, double sigma, Rng& rng) {
    std::vector<Point2> out(points.begin(), points.end());
    for (auto& p : out) {
        p.x += sigma * rng.normal();
        p.y += sigma * rng.normal();
    }
    return out;
}

std::vector<PersistenceDiagram> clean_circle_diagrams(const CircleConfig& cfg) {
    cfg.validate();
    const auto pts = circle_points(cfg.point_count, cfg.radius);
    const WeightedGraph g = metric_graph(pts);
    return {GraphPersistence(g, Method::Cubical, 1).diagram(1), GraphPersistence(g, Method::Flag, 1).diagram(1)};
}

CircleTrial noisy_circle_trial(const CircleConfig& cfg, const std::vector<PersistenceDiagram>& clean, Rng& rng) {
    const auto pts = perturb(circle_points(cfg.point_count, cfg.radius), cfg.noise_sigma, rng);
    const WeightedGraph g = metric_graph(pts);
    const auto cub = GraphPersistence(g, Method::Cubical, 1).diagram(1);
    const auto flag = GraphPersistence(g, Method::Flag, 1).diagram(1);
    CircleTrial t;
    t.cubical = bottleneck(clean.at(0), cub);
    t.flag = bottleneck(clean.at(1), flag);
    t.cubical_bars = cub.size();
    t.flag_bars = flag.size();
    return t;
}

CircleTrial noisy_circle_trial(const CircleConfig& cfg, Rng& rng) {
    return noisy_circle_trial(cfg, clean_circle_diagrams(cfg), rng);
}

CircleRun run_circle(const CircleConfig& cfg, std::size_t threads) {
    const auto clean = clean_circle_diagrams(cfg);
    CircleRun run;
    run.trials.resize(cfg.iterations);
    parallel_for(cfg.iterations, threads, [&](std::size_t i) {
        Rng rng = trial_rng(cfg.seed, i);
        run.trials[i] = noisy_circle_trial(cfg, clean, rng);
    });
    auto& s = run.summary;
    s.iterations = cfg.iterations;
    for (const auto& t : run.trials) {
        s.mean_cubical += t.cubical;
        s.mean_flag += t.flag;
        if (t.cubical < t.flag) ++s.cubical_wins;
        else if (t.cubical == t.flag) ++s.ties;
    }
    if (s.iterations) {
        const double n = static_cast<double>(s.iterations);
        s.mean_cubical /= n;
        s.mean_flag /= n;
        s.win_fraction = static_cast<double>(s.cubical_wins) / n;
    }
    return run;
}

// ---------------------------------------------------------------------------
// Multivariate fit

MultiFitTrial multifit_from_lists(const std::vector<std::vector<double>>& lists) {
    const std::size_t k = lists.size();
    if (k < 2) throw ValidationError("multifit: need at least two lists");
    SeriesTable table;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Observation> obs;
        for (std::size_t t = 0; t < lists[i].size(); ++t) obs.push_back({std::int64_t(t), lists[i][t]});
        table.add(std::to_string(i), std::move(obs));
    }
    MultiFitTrial out;
    const WeightedGraph g = correlation_graph(table);
    out.h1_length_pct = nontrivial_length(GraphPersistence(g, Method::Cubical, 1).diagram(1), 0.0, 1.0);

    double pair_sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            pair_sum += r_squared(lists[i], lists[j]);
            ++pairs;
        }
    out.r2_avg = pair_sum / static_cast<double>(pairs);

    double mult_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::vector<double>> others;
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) others.push_back(lists[j]);
        const auto fit = multivariate_r2(lists[i], others);
        mult_sum += fit.r2;
        out.rank_deficient = out.rank_deficient || fit.rank_deficient;
    }
    out.r2_mult = mult_sum / static_cast<double>(k);

    if (out.r2_avg == 0.0) out.excluded = true;
    else out.relative_increase = (out.r2_mult - out.r2_avg) / out.r2_avg;
    return out;
}

MultiFitTrial multifit_trial(const MultiFitConfig& cfg, Rng& rng) {
    std::vector<std::vector<double>> lists(cfg.list_count, std::vector<double>(cfg.list_length));
    for (auto& list : lists)
        for (auto& v : list) v = rng.uniform();
    return multifit_from_lists(lists);
}

Pearson pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("pearson: length mismatch");
    Pearson out;
    out.n = x.size();
    if (out.n < 3) return out;
    const double n = static_cast<double>(out.n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return out;
    out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    if (std::abs(out.r) == 1.0) {
        out.p_value = 0.0;
        return out;
    }
    const double df = n - 2.0;
    const double t = out.r * std::sqrt(df / (1.0 - out.r * out.r));
    boost::math::students_t dist(df);
    out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    return out;
}

MultiFitSummary summarize(std::span<const MultiFitTrial> trials) {
    MultiFitSummary s;
    s.trials = trials.size();
    std::vector<double> lengths, increases;
    std::map<long, std::pair<std::size_t, double>> buckets;
    for (const auto& t : trials) {
        if (t.rank_deficient) ++s.rank_deficient;
        if (t.excluded) {
            ++s.excluded;
            continue;
        }
        lengths.push_back(t.h1_length_pct);
        increases.push_back(t.relative_increase);
        if (t.h1_length_pct > 0.0) {
            ++s.count_positive;
            s.mean_increase_positive += t.relative_increase;
        } else {
            ++s.count_zero;
            s.mean_increase_zero += t.relative_increase;
        }
        auto& b = buckets[static_cast<long>(std::floor(t.h1_length_pct / 0.5))];
        ++b.first;
        b.second += t.relative_increase;
    }
    if (s.count_positive) s.mean_increase_positive /= static_cast<double>(s.count_positive);
    if (s.count_zero) s.mean_increase_zero /= static_cast<double>(s.count_zero);
    s.correlation = pearson(lengths, increases);
    for (const auto& [key, b] : buckets)
        s.buckets.push_back({0.5 * static_cast<double>(key), b.first, b.second / static_cast<double>(b.first)});
    return s;
}

MultiFitRun run_multifit(const MultiFitConfig& cfg, std::size_t threads) {
    cfg.validate();
    MultiFitRun run;
    run.trials.resize(cfg.iterations);
    parallel_for(cfg.iterations, threads, [&](std::size_t i) {
        Rng rng = trial_rng(cfg.seed, i);
        run.trials[i] = multifit_trial(cfg, rng);
    });
    run.summary = summarize(run.trials);
    return run;
}

// ---------------------------------------------------------------------------
// Weather simulation

SmoothingKernel::SmoothingKernel(const DistanceMatrix& dist, double p) : n_(dist.size()), k_(n_ * n_) {
    for (std::size_t x = 0; x < n_; ++x) {
        double m = 0.0;
        for (std::size_t w = 0; w < n_; ++w) {
            if (!std::isfinite(dist(x, w))) throw ValidationError("smoothing kernel: distances must be finite");
            m = std::max(m, dist(x, w));
        }
        double total = 0.0;
        for (std::size_t w = 0; w < n_; ++w) total += k_[x * n_ + w] = std::pow(m - dist(w, x) + 1.0, p);
        for (std::size_t w = 0; w < n_; ++w) k_[x * n_ + w] /= total;
    }
}

void SmoothingKernel::apply(std::span<const double> in, std::span<double> out) const {
    if (in.size() != n_ || out.size() != n_) throw ValidationError("smoothing kernel: size mismatch");
    for (std::size_t x = 0; x < n_; ++x) {
        double acc = 0.0;
        const double* row = k_.data() + x * n_;
        for (std::size_t w = 0; w < n_; ++w) acc += row[w] * in[w];
        out[x] = acc;
    }
}

WeightedGraph disturbed_grid(std::size_t rows, std::size_t cols, Vertex v, double w) {
    const WeightedGraph base = grid_graph(rows, cols);
    if (v >= base.vertex_count()) throw ValidationError("disturbed vertex out of range");
    WeightedGraph g(base.vertex_count());
    for (const Edge& e : base.edges()) g.add_edge(e.u, e.v, (e.u == v || e.v == v) ? w : 1.0);
    g.set_coords(base.coords());
    return g;
}

std::vector<Vertex> interior_vertices(std::size_t rows, std::size_t cols) {
    std::vector<Vertex> out;
    for (std::size_t r = 1; r + 1 < rows; ++r)
        for (std::size_t c = 1; c + 1 < cols; ++c) out.push_back(Vertex(r * cols + c));
    return out;
}

std::vector<double> weather_step(std::span<const double> readings, const SmoothingKernel& kernel, Rng& rng,
                                 double noise_scale) {
    std::vector<double> smooth(readings.size()), out(readings.size());
    kernel.apply(readings, smooth);
    for (auto& v : smooth) v += noise_scale * rng.normal();
    kernel.apply(smooth, out);
    return out;
}

std::vector<double> weather_step(std::span<const double> readings, const DistanceMatrix& dist, double p, Rng& rng,
                                 double noise_scale) {
    return weather_step(readings, SmoothingKernel(dist, p), rng, noise_scale);
}

SeriesTable run_disturbed_series(const WeatherConfig& cfg, Vertex v, Rng& rng) {
    cfg.validate();
    const auto interior = interior_vertices(cfg.rows, cfg.cols);
    if (!std::binary_search(interior.begin(), interior.end(), v))
        throw ValidationError("disturbed vertex " + std::to_string(v) + " is not interior");
    const WeightedGraph g = disturbed_grid(cfg.rows, cfg.cols, v, cfg.disturbance_weight);
    const SmoothingKernel kernel(all_pairs_distances(g), cfg.p);
    const std::size_t n = g.vertex_count();

    std::vector<std::vector<Observation>> obs(n);
    std::vector<double> y(n);
    for (auto& value : y) value = rng.normal();
    for (std::size_t t = 0; t < cfg.readings; ++t) {
        if (t > 0) y = weather_step(y, kernel, rng, cfg.noise_scale);
        for (std::size_t x = 0; x < n; ++x) obs[x].push_back({std::int64_t(t), y[x]});
    }
    SeriesTable table;
    for (std::size_t x = 0; x < n; ++x) table.add(std::to_string(x), std::move(obs[x]));
    table.coords = g.coords();
    return table;
}

namespace {

/// readings[t][x] from a table holding one complete series per grid vertex.
std::vector<std::vector<double>> reading_matrix(const SeriesTable& series, const WeatherConfig& cfg) {
    const std::size_t n = cfg.rows * cfg.cols;
    if (series.size() != n) throw ValidationError("weather detection: expected one series per grid vertex");
    const std::size_t t_count = series.series[0].values.size();
    std::vector<std::vector<double>> y(t_count, std::vector<double>(n));
    for (std::size_t x = 0; x < n; ++x) {
        const auto& vals = series.series[x].values;
        if (vals.size() != t_count) throw ValidationError("weather detection: series lengths differ");
        for (std::size_t t = 0; t < t_count; ++t) {
            if (vals[t].t != series.series[0].values[t].t)
                throw ValidationError("weather detection: series are not aligned");
            y[t][x] = vals[t].value;
        }
    }
    return y;
}

std::vector<Point2> grid_coords(const SeriesTable& series, const WeatherConfig& cfg) {
    if (series.coords.size() == series.size()) return series.coords;
    std::vector<Point2> out;
    for (std::size_t r = 0; r < cfg.rows; ++r)
        for (std::size_t c = 0; c < cfg.cols; ++c) out.push_back({double(c), double(r)});
    return out;
}

}  // namespace

DetectionScores expected_actual_scores(const SeriesTable& series, const WeatherConfig& cfg,
                                       std::span<const Vertex> candidates) {
    const auto y = reading_matrix(series, cfg);
    const SmoothingKernel k0(all_pairs_distances(grid_graph(cfg.rows, cfg.cols)), cfg.p);
    const std::size_t n = cfg.rows * cfg.cols;
    DetectionScores out;
    out.candidates.assign(candidates.begin(), candidates.end());
    out.scores.assign(candidates.size(), 0.0);
    std::vector<double> once(n), twice(n);
    for (std::size_t t = 0; t + 1 < y.size(); ++t) {
        k0.apply(y[t], once);
        k0.apply(once, twice);
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const Vertex c = candidates[i];
            if (c >= n) throw ValidationError("weather detection: candidate out of range");
            out.scores[i] += std::abs(twice[c] - y[t + 1][c]);
        }
    }
    return out;
}

Vertex detect_expected_actual(const SeriesTable& series, const WeatherConfig& cfg,
                              std::span<const Vertex> candidates) {
    if (candidates.empty()) throw ValidationError("weather detection: no candidates");
    std::vector<Vertex> sorted(candidates.begin(), candidates.end());
    std::sort(sorted.begin(), sorted.end());
    const auto s = expected_actual_scores(series, cfg, sorted);
    std::size_t best = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (s.scores[i] > s.scores[best]) best = i;
    return sorted[best];
}

Vertex detect_expected_actual(const SeriesTable& series, const WeatherConfig& cfg) {
    return detect_expected_actual(series, cfg, interior_vertices(cfg.rows, cfg.cols));
}

bool point_in_polygon(Point2 pt, std::span<const Point2> polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return false;
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 a = polygon[j], b = polygon[i];
        const double cross = (b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x);
        const double scale = std::max({std::abs(b.x - a.x), std::abs(b.y - a.y), 1.0});
        if (std::abs(cross) <= 1e-12 * scale * scale && pt.x >= std::min(a.x, b.x) - 1e-12 &&
            pt.x <= std::max(a.x, b.x) + 1e-12 && pt.y >= std::min(a.y, b.y) - 1e-12 &&
            pt.y <= std::max(a.y, b.y) + 1e-12)
            return false;
        if ((a.y > pt.y) != (b.y > pt.y)) {
            const double x_cross = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (pt.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

HomologyDetection detect_homology_detail(const SeriesTable& series, const WeatherConfig& cfg, Method method) {
    const auto interior = interior_vertices(cfg.rows, cfg.cols);
    HomologyDetection out;
    const WeightedGraph g = correlation_graph(series);
    const PersistenceDiagram h1 = GraphPersistence(g, method, 1).diagram(1);
    if (!h1.empty()) {
        out.has_bar = true;
        out.bar = longest_bar(h1, 1.0);
        const auto coords = grid_coords(series, cfg);
        std::set<Vertex> enclosed;
        for (const auto& cycle : cycle_vertices(out.bar.cycle)) {
            std::vector<Point2> polygon;
            for (Vertex v : cycle) polygon.push_back(coords.at(v));
            for (Vertex c : interior)
                if (point_in_polygon(coords[c], polygon)) enclosed.insert(c);
        }
        out.enclosed.assign(enclosed.begin(), enclosed.end());
    }
    if (out.enclosed.size() == 1) {
        out.vertex = out.enclosed.front();
    } else if (out.enclosed.size() > 1) {
        out.vertex = detect_expected_actual(series, cfg, out.enclosed);
    } else {
        out.used_fallback = true;
        out.vertex = detect_expected_actual(series, cfg, interior);
    }
    return out;
}

Vertex detect_homology(const SeriesTable& series, const WeatherConfig& cfg, Method method) {
    return detect_homology_detail(series, cfg, method).vertex;
}

std::string_view to_string(Model m) {
    switch (m) {
        case Model::ExpectedActual: return "expected_actual";
        case Model::Cubical: return "cubical";
        case Model::Flag: return "flag";
    }
    return "?";
}

WeatherTrial weather_trial(const WeatherConfig& cfg, Rng& rng) {
    const auto interior = interior_vertices(cfg.rows, cfg.cols);
    WeatherTrial t;
    t.w = cfg.disturbance_weight;
    t.planted = interior[rng.below(interior.size())];
    const SeriesTable series = run_disturbed_series(cfg, t.planted, rng);
    t.detected[0] = detect_expected_actual(series, cfg, interior);
    t.detected[1] = detect_homology(series, cfg, Method::Cubical);
    t.detected[2] = detect_homology(series, cfg, Method::Flag);
    return t;
}

WeatherRun accuracy_sweep(const WeatherConfig& cfg, std::size_t threads) {
    cfg.validate();
    const std::size_t nw = cfg.sweep_weights.size();
    const std::size_t iters = cfg.iterations;
    WeatherRun run;
    run.trials.resize(nw * iters);
    parallel_for(nw * iters, threads, [&](std::size_t k) {
        WeatherConfig c = cfg;
        c.disturbance_weight = cfg.sweep_weights[k / iters];
        Rng rng = trial_rng(cfg.seed, k % iters);
        run.trials[k] = weather_trial(c, rng);
    });
    for (std::size_t wi = 0; wi < nw; ++wi)
        for (Model m : kModels) {
            AccuracyRow row;
            row.w = cfg.sweep_weights[wi];
            row.model = m;
            row.iterations = iters;
            for (std::size_t i = 0; i < iters; ++i) {
                const auto& t = run.trials[wi * iters + i];
                if (t.detected[static_cast<int>(m)] == t.planted) ++row.correct;
            }
            run.accuracy.push_back(row);
        }
    return run;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

void csv_row(std::string& out, std::size_t trial, std::string_view quantity, double value) {
    out += std::to_string(trial);
    out += ',';
    out += quantity;
    out += ',';
    out += format_double(value);
    out += '\n';
}

void write_rng(JsonWriter& w) {
    w.key("rng").begin_object();
    w.key("engine").value(kRngEngineName);
    w.key("normal").value(kNormalMethodName);
    w.end_object();
}

}  // namespace

std::string trials_csv(const CircleRun& run) {
    std::string out = "trial,quantity,value\n";
    for (std::size_t i = 0; i < run.trials.size(); ++i) {
        const auto& t = run.trials[i];
        csv_row(out, i, "d_cubical", t.cubical);
        csv_row(out, i, "d_flag", t.flag);
        csv_row(out, i, "cubical_bars", double(t.cubical_bars));
        csv_row(out, i, "flag_bars", double(t.flag_bars));
    }
    return out;
}

std::string trials_csv(const MultiFitRun& run) {
    std::string out = "trial,quantity,value\n";
    for (std::size_t i = 0; i < run.trials.size(); ++i) {
        const auto& t = run.trials[i];
        csv_row(out, i, "h1_length_pct", t.h1_length_pct);
        csv_row(out, i, "r2_avg", t.r2_avg);
        csv_row(out, i, "r2_mult", t.r2_mult);
        csv_row(out, i, "relative_increase", t.excluded ? std::nan("") : t.relative_increase);
        csv_row(out, i, "excluded", t.excluded ? 1.0 : 0.0);
    }
    return out;
}

std::string trials_csv(const WeatherRun& run) {
    std::string out = "trial,quantity,value\n";
    for (std::size_t i = 0; i < run.trials.size(); ++i) {
        const auto& t = run.trials[i];
        csv_row(out, i, "w", t.w);
        csv_row(out, i, "planted", double(t.planted));
        for (Model m : kModels)
            csv_row(out, i, std::string("detected_") + std::string(to_string(m)),
                    double(t.detected[static_cast<int>(m)]));
    }
    return out;
}

std::string accuracy_csv(const WeatherRun& run) {
    std::string out = "w,model,correct,iterations,accuracy\n";
    for (const auto& row : run.accuracy) {
        out += format_double(row.w) + ',' + std::string(to_string(row.model)) + ',' + std::to_string(row.correct) +
               ',' + std::to_string(row.iterations) + ',' + format_double(row.accuracy()) + '\n';
    }
    return out;
}

std::string summary_json(const CircleConfig& cfg, const CircleRun& run) {
    const auto& s = run.summary;
    JsonWriter w;
    w.begin_object();
    w.key("experiment").value("circle");
    w.key("config").begin_object();
    w.key("point_count").value(std::uint64_t(cfg.point_count));
    w.key("radius").value(cfg.radius);
    w.key("noise_sigma").value(cfg.noise_sigma);
    w.key("iterations").value(std::uint64_t(cfg.iterations));
    w.key("seed").value(cfg.seed);
    w.end_object();
    write_rng(w);
    w.key("mean_cubical").value(s.mean_cubical);
    w.key("mean_flag").value(s.mean_flag);
    w.key("cubical_wins").value(std::uint64_t(s.cubical_wins));
    w.key("ties").value(std::uint64_t(s.ties));
    w.key("win_fraction").value(s.win_fraction);
    w.end_object();
    return w.str();
}

std::string summary_json(const MultiFitConfig& cfg, const MultiFitRun& run) {
    const auto& s = run.summary;
    JsonWriter w;
    w.begin_object();
    w.key("experiment").value("multifit");
    w.key("config").begin_object();
    w.key("list_count").value(std::uint64_t(cfg.list_count));
    w.key("list_length").value(std::uint64_t(cfg.list_length));
    w.key("iterations").value(std::uint64_t(cfg.iterations));
    w.key("seed").value(cfg.seed);
    w.key("forces_pentagon").value(cfg.forces_pentagon());
    w.end_object();
    write_rng(w);
    w.key("trials").value(std::uint64_t(s.trials));
    w.key("excluded").value(std::uint64_t(s.excluded));
    w.key("rank_deficient").value(std::uint64_t(s.rank_deficient));
    w.key("pearson_r").value(s.correlation.r);
    w.key("p_value").value(s.correlation.p_value);
    w.key("count_positive").value(std::uint64_t(s.count_positive));
    w.key("count_zero").value(std::uint64_t(s.count_zero));
    w.key("mean_increase_positive").value(s.mean_increase_positive);
    w.key("mean_increase_zero").value(s.mean_increase_zero);
    w.key("buckets").begin_array();
    for (const auto& b : s.buckets) {
        w.begin_object();
        w.key("low").value(b.low);
        w.key("count").value(std::uint64_t(b.count));
        w.key("mean_increase").value(b.mean_increase);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string summary_json(const WeatherConfig& cfg, const WeatherRun& run) {
    JsonWriter w;
    w.begin_object();
    w.key("experiment").value("weather");
    w.key("config").begin_object();
    w.key("rows").value(std::uint64_t(cfg.rows));
    w.key("cols").value(std::uint64_t(cfg.cols));
    w.key("p").value(cfg.p);
    w.key("readings").value(std::uint64_t(cfg.readings));
    w.key("weights").begin_array(true);
    for (double x : cfg.sweep_weights) w.value(x);
    w.end_array();
    w.key("iterations").value(std::uint64_t(cfg.iterations));
    w.key("seed").value(cfg.seed);
    w.key("noise_scale").value(cfg.noise_scale);
    w.end_object();
    write_rng(w);
    w.key("interior_vertices").value(std::uint64_t(interior_vertices(cfg.rows, cfg.cols).size()));
    w.key("accuracy").begin_array();
    for (const auto& row : run.accuracy) {
        w.begin_object();
        w.key("w").value(row.w);
        w.key("model").value(to_string(row.model));
        w.key("correct").value(std::uint64_t(row.correct));
        w.key("iterations").value(std::uint64_t(row.iterations));
        w.key("accuracy").value(row.accuracy());
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

}  // namespace dch
