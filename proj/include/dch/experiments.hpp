#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dch/graph.hpp"
#include "dch/persistence.hpp"
#include "dch/random.hpp"
#include "dch/series.hpp"
#include "dch/streaming.hpp"

namespace dch {

// ---------------------------------------------------------------------------
// Key-value configuration files: `key = value` per line, `#` comments.

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Noisy circle: cubical vs flag bottleneck distance to the clean circle.

struct CircleConfig {
    std::size_t point_count = 30;
    double radius = 2.0;
    double noise_sigma = 0.5;
    std::size_t iterations = 200;
    std::uint64_t seed = 1;

    void validate() const;
    void apply(const KeyValues& kv);
};

struct CircleTrial {
    double cubical = 0.0;
    double flag = 0.0;
    std::size_t cubical_bars = 0;
    std::size_t flag_bars = 0;
};

/// `n` evenly spaced points on a circle, the first at angle 0.
std::vector<Point2> circle_points(std::size_t n, double radius);
/// Independent N(0, sigma) offsets on both coordinates, drawn x then y per point.
std::vector<Point2> perturb(std::span<const Point2> points, double sigma, Rng& rng);

/// H1 diagrams of the clean circle, [0] cubical and [1] flag.
std::vector<PersistenceDiagram> clean_circle_diagrams(const CircleConfig& cfg);

CircleTrial noisy_circle_trial(const CircleConfig& cfg, Rng& rng);
CircleTrial noisy_circle_trial(const CircleConfig& cfg, const std::vector<PersistenceDiagram>& clean, Rng& rng);

struct CircleSummary {
    std::size_t iterations = 0;
    double mean_cubical = 0.0;
    double mean_flag = 0.0;
    std::size_t cubical_wins = 0;  // strictly smaller distance
    std::size_t ties = 0;
    double win_fraction = 0.0;
};

struct CircleRun {
    std::vector<CircleTrial> trials;
    CircleSummary summary;
};

/// Trial i uses trial_rng(cfg.seed, i).
CircleRun run_circle(const CircleConfig& cfg, std::size_t threads = 1);

// ---------------------------------------------------------------------------
// Multivariate fit test.

struct MultiFitConfig {
    std::size_t list_count = 5;
    std::size_t list_length = 10;
    std::size_t iterations = 20000;
    std::uint64_t seed = 1;

    void validate() const;
    void apply(const KeyValues& kv);
    /// list_count == 5, where a nontrivial H1 forces a 5-cycle.
    bool forces_pentagon() const { return list_count == 5; }
};

struct MultiFitTrial {
    double h1_length_pct = 0.0;
    double r2_avg = 0.0;
    double r2_mult = 0.0;
    double relative_increase = 0.0;
    /// r2_avg == 0: relative increase undefined, trial left out of statistics.
    bool excluded = false;
    bool rank_deficient = false;
};

/// Statistics for already generated lists (cubical H1 over [0, 1]).
MultiFitTrial multifit_from_lists(const std::vector<std::vector<double>>& lists);
/// Draws list_count lists of list_length uniforms, list by list.
MultiFitTrial multifit_trial(const MultiFitConfig& cfg, Rng& rng);

struct Pearson {
    double r = 0.0;
    /// Two-sided p-value of the t test with n - 2 degrees of freedom.
    double p_value = 1.0;
    std::size_t n = 0;
};

Pearson pearson(std::span<const double> x, std::span<const double> y);

struct LengthBucket {
    double low = 0.0;  // bucket covers [low, low + 0.5)
    std::size_t count = 0;
    double mean_increase = 0.0;
};

struct MultiFitSummary {
    std::size_t trials = 0;
    std::size_t excluded = 0;
    std::size_t rank_deficient = 0;
    Pearson correlation;
    std::size_t count_positive = 0;  // H1 length > 0
    std::size_t count_zero = 0;
    double mean_increase_positive = 0.0;
    double mean_increase_zero = 0.0;
    std::vector<LengthBucket> buckets;  // nonempty buckets only
};

struct MultiFitRun {
    std::vector<MultiFitTrial> trials;
    MultiFitSummary summary;
};

MultiFitSummary summarize(std::span<const MultiFitTrial> trials);
MultiFitRun run_multifit(const MultiFitConfig& cfg, std::size_t threads = 1);

// ---------------------------------------------------------------------------
// Weather grid simulation and disturbance detection.

struct WeatherConfig {
    std::size_t rows = 8;
    std::size_t cols = 8;
    double p = 2.0;
    std::size_t readings = 50;
    double disturbance_weight = 1.0;
    /// Values of w swept by accuracy_sweep.
    std::vector<double> sweep_weights{1.0, 4.0, 8.0, 12.0};
    std::size_t iterations = 200;
    std::uint64_t seed = 1;
    /// Multiplier on the step-2 noise; 1 reproduces the N(0,1) model.
    double noise_scale = 1.0;

    void validate() const;
    void apply(const KeyValues& kv);
};

/// Row-normalised smoothing weights (m_x - d(w,x) + 1)^p.
class SmoothingKernel {
public:
    SmoothingKernel() = default;
    SmoothingKernel(const DistanceMatrix& dist, double p);

    std::size_t size() const { return n_; }
    double operator()(std::size_t x, std::size_t w) const { return k_[x * n_ + w]; }
    /// out = K * in.
    void apply(std::span<const double> in, std::span<double> out) const;

private:
    std::size_t n_ = 0;
    std::vector<double> k_;
};

/// Grid with weight w on the edges incident to v and 1 elsewhere.
WeightedGraph disturbed_grid(std::size_t rows, std::size_t cols, Vertex v, double w);
/// Vertices not on the grid border, ascending.
std::vector<Vertex> interior_vertices(std::size_t rows, std::size_t cols);

/// Smooth, add noise_scale * N(0,1) per vertex (ascending order), smooth again.
std::vector<double> weather_step(std::span<const double> readings, const SmoothingKernel& kernel, Rng& rng,
                                 double noise_scale = 1.0);
std::vector<double> weather_step(std::span<const double> readings, const DistanceMatrix& dist, double p, Rng& rng,
                                 double noise_scale = 1.0);

/// T = cfg.readings readings per vertex: y^0 ~ N(0,1), then T - 1 steps on the
/// grid disturbed at v with cfg.disturbance_weight. Series are named by vertex
/// index, carry grid coordinates and use integer times 0..T-1.
SeriesTable run_disturbed_series(const WeatherConfig& cfg, Vertex v, Rng& rng);

struct DetectionScores {
    std::vector<Vertex> candidates;
    std::vector<double> scores;
};

/// Sum over t of |K0 K0 y^t - y^{t+1}| per candidate, K0 the undisturbed kernel.
DetectionScores expected_actual_scores(const SeriesTable& series, const WeatherConfig& cfg,
                                       std::span<const Vertex> candidates);
/// Highest score among the interior vertices (or the given candidates); ties
/// go to the lowest index.
Vertex detect_expected_actual(const SeriesTable& series, const WeatherConfig& cfg);
Vertex detect_expected_actual(const SeriesTable& series, const WeatherConfig& cfg,
                              std::span<const Vertex> candidates);

/// Strict even-odd containment; points on the polygon boundary are outside.
bool point_in_polygon(Point2 pt, std::span<const Point2> polygon);

struct HomologyDetection {
    Vertex vertex = 0;
    /// Interior vertices of the longest bar's cycles.
    std::vector<Vertex> enclosed;
    bool used_fallback = false;
    bool has_bar = false;
    PersistencePair bar;
};

HomologyDetection detect_homology_detail(const SeriesTable& series, const WeatherConfig& cfg, Method method);
Vertex detect_homology(const SeriesTable& series, const WeatherConfig& cfg, Method method);

enum class Model { ExpectedActual, Cubical, Flag };
std::string_view to_string(Model m);
inline constexpr Model kModels[] = {Model::ExpectedActual, Model::Cubical, Model::Flag};

struct WeatherTrial {
    double w = 1.0;
    Vertex planted = 0;
    Vertex detected[3] = {0, 0, 0};  // indexed by Model
};

/// Planted vertex uniform over the interior, then the series, from one stream.
WeatherTrial weather_trial(const WeatherConfig& cfg, Rng& rng);

struct AccuracyRow {
    double w = 1.0;
    Model model = Model::ExpectedActual;
    std::size_t correct = 0;
    std::size_t iterations = 0;
    double accuracy() const { return iterations ? double(correct) / double(iterations) : 0.0; }
};

struct WeatherRun {
    std::vector<WeatherTrial> trials;  // w-major, then iteration
    std::vector<AccuracyRow> accuracy;
};

/// For each w, trial i uses trial_rng(cfg.seed, i), so every w sees the same
/// planted vertices and noise.
WeatherRun accuracy_sweep(const WeatherConfig& cfg, std::size_t threads = 1);

// ---------------------------------------------------------------------------
// Reports: per-trial CSV with header `trial,quantity,value` and JSON summaries
// that echo the configuration and the random stream in use.

std::string trials_csv(const CircleRun& run);
std::string trials_csv(const MultiFitRun& run);
std::string trials_csv(const WeatherRun& run);
/// Header `w,model,correct,iterations,accuracy`.
std::string accuracy_csv(const WeatherRun& run);

std::string summary_json(const CircleConfig& cfg, const CircleRun& run);
std::string summary_json(const MultiFitConfig& cfg, const MultiFitRun& run);
std::string summary_json(const WeatherConfig& cfg, const WeatherRun& run);

}  // namespace dch
