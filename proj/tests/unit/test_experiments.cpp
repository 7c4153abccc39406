#include <doctest.h>

#include <cmath>
#include <functional>

#include "dch/error.hpp"
#include "dch/experiments.hpp"
#include "dch/persistence.hpp"

using namespace dch;

namespace {

SeriesTable table_from(const std::vector<std::vector<double>>& rows, std::size_t grid_rows, std::size_t grid_cols) {
    SeriesTable t;
    for (std::size_t x = 0; x < rows.size(); ++x) {
        std::vector<Observation> obs;
        for (std::size_t k = 0; k < rows[x].size(); ++k) obs.push_back({std::int64_t(k), rows[x][k]});
        t.add(std::to_string(x), std::move(obs));
    }
    t.coords = grid_graph(grid_rows, grid_cols).coords();
    return t;
}

/// Series on a rows x cols grid where consecutive ring vertices share a latent
/// factor and everything else is independent noise.
SeriesTable planted_ring(std::size_t rows, std::size_t cols, const std::vector<Vertex>& ring, std::size_t length,
                         std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> data(rows * cols, std::vector<double>(length));
    for (auto& s : data)
        for (auto& x : s) x = rng.normal();
    std::vector<std::vector<double>> factor(ring.size(), std::vector<double>(length));
    for (auto& f : factor)
        for (auto& x : f) x = rng.normal();
    for (std::size_t k = 0; k < ring.size(); ++k)
        for (std::size_t t = 0; t < length; ++t)
            data[ring[k]][t] = factor[k][t] + factor[(k + 1) % ring.size()][t] + 0.1 * data[ring[k]][t];
    return table_from(data, rows, cols);
}

double brute_force_distance(const WeightedGraph& g, Vertex from, Vertex to) {
    std::vector<bool> used(g.vertex_count(), false);
    double best = kInfinity;
    std::function<void(Vertex, double)> walk = [&](Vertex x, double d) {
        if (x == to) {
            best = std::min(best, d);
            return;
        }
        used[x] = true;
        for (Vertex y : g.neighbors(x))
            if (!used[y]) walk(y, d + *g.weight(x, y));
        used[x] = false;
    };
    walk(from, 0.0);
    return best;
}

bool is_exact_five_cycle(const WeightedGraph& t) {
    if (t.vertex_count() != 5 || t.edge_count() != 5 || component_count(t) != 1) return false;
    for (Vertex v = 0; v < 5; ++v)
        if (t.degree(v) != 2) return false;
    return true;
}

}  // namespace

TEST_CASE("key-value configs") {
    const auto kv = parse_key_values("# comment\niterations = 12\nseed=7 # trailing\n\nnoise_sigma = 0.25\n");
    CircleConfig c;
    c.apply(kv);
    CHECK(c.iterations == 12);
    CHECK(c.seed == 7);
    CHECK(c.noise_sigma == 0.25);
    CHECK_THROWS_AS(c.apply({{"bogus", "1"}}), ValidationError);
    CHECK_THROWS_AS(parse_key_values("no equals sign"), ValidationError);
    WeatherConfig w;
    w.apply({{"weights", "1, 2.5,6"}});
    CHECK(w.sweep_weights == std::vector<double>{1.0, 2.5, 6.0});
    CHECK_THROWS_AS(w.apply({{"rows", "2"}}), ValidationError);
}

TEST_CASE("circle points") {
    const auto pts = circle_points(30, 2.0);
    const auto g = metric_graph(pts);
    double best = 0.0;
    for (double w : g.weights()) best = std::max(best, w);
    CHECK(best == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(pts[0] == Point2{2.0, 0.0});
}

TEST_CASE("noise-free circle trials give zero distances") {
    CircleConfig cfg;
    cfg.noise_sigma = 0.0;
    cfg.iterations = 3;
    const auto run = run_circle(cfg);
    for (const auto& t : run.trials) {
        CHECK(t.cubical == 0.0);
        CHECK(t.flag == 0.0);
    }
}

TEST_CASE("circle trials are reproducible and flag sees more bars") {
    CircleConfig cfg;
    cfg.iterations = 4;
    const auto a = run_circle(cfg, 1);
    const auto b = run_circle(cfg, 3);
    std::size_t flag_bars = 0, cubical_bars = 0;
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].cubical == b.trials[i].cubical);
        CHECK(a.trials[i].flag == b.trials[i].flag);
        CHECK(std::isfinite(a.trials[i].cubical));
        CHECK(a.trials[i].cubical >= 0.0);
        flag_bars += a.trials[i].flag_bars;
        cubical_bars += a.trials[i].cubical_bars;
    }
    CHECK(flag_bars >= cubical_bars);
    CHECK(trials_csv(a) == trials_csv(b));
}

TEST_CASE("multifit on identical lists") {
    const std::vector<double> base{0.3, 0.1, 0.8, 0.5, 0.9, 0.2, 0.4, 0.7, 0.6, 0.05};
    const auto t = multifit_from_lists(std::vector<std::vector<double>>(5, base));
    CHECK(t.r2_avg == doctest::Approx(1.0));
    CHECK(t.r2_mult == doctest::Approx(1.0));
    CHECK(t.relative_increase == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(t.h1_length_pct == 0.0);
}

TEST_CASE("nontrivial H1 on five series requires an exact pentagon") {
    MultiFitConfig cfg;
    int positive = 0;
    for (std::uint64_t i = 0; i < 400; ++i) {
        Rng rng = trial_rng(99, i);
        std::vector<std::vector<double>> lists(5, std::vector<double>(10));
        for (auto& l : lists)
            for (auto& v : l) v = rng.uniform();
        Rng replay = trial_rng(99, i);
        const auto trial = multifit_trial(cfg, replay);
        CHECK(trial.h1_length_pct == multifit_from_lists(lists).h1_length_pct);
        if (trial.h1_length_pct <= 0.0) continue;
        ++positive;
        SeriesTable table;
        for (std::size_t k = 0; k < 5; ++k) {
            std::vector<Observation> obs;
            for (std::size_t t = 0; t < 10; ++t) obs.push_back({std::int64_t(t), lists[k][t]});
            table.add(std::to_string(k), obs);
        }
        const auto g = correlation_graph(table);
        bool found = false;
        for (double r : g.weights()) found = found || is_exact_five_cycle(threshold_graph(g, r));
        CHECK(found);
    }
    CHECK(positive > 0);
}

TEST_CASE("pearson statistics") {
    const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<double> y{2, 1, 4, 3, 6, 5, 8, 7};
    const auto p = pearson(x, y);
    CHECK(p.r == doctest::Approx(0.9047619047619048));
    // t = r sqrt(6 / (1 - r^2)) = 5.2068; two-sided p from Student t with 6 dof.
    CHECK(p.p_value == doctest::Approx(0.0020).epsilon(0.05));
    CHECK(pearson(x, x).p_value == 0.0);
}

TEST_CASE("multifit summary") {
    std::vector<MultiFitTrial> trials(4);
    trials[0] = {0.0, 0.1, 0.12, 0.2, false, false};
    trials[1] = {10.0, 0.1, 0.15, 0.5, false, false};
    trials[2] = {20.0, 0.1, 0.18, 0.8, false, false};
    trials[3].excluded = true;
    const auto s = summarize(trials);
    CHECK(s.excluded == 1);
    CHECK(s.count_positive == 2);
    CHECK(s.count_zero == 1);
    CHECK(s.mean_increase_positive == doctest::Approx(0.65));
    CHECK(s.mean_increase_zero == doctest::Approx(0.2));
    CHECK(s.correlation.r > 0.99);
    CHECK(s.buckets.size() == 3);
}

TEST_CASE("smoothing kernel arithmetic") {
    SUBCASE("constant field without noise stays constant") {
        const SmoothingKernel k(all_pairs_distances(grid_graph(4, 5)), 2.0);
        Rng rng(1);
        const auto out = weather_step(std::vector<double>(20, 3.5), k, rng, 0.0);
        for (double v : out) CHECK(v == doctest::Approx(3.5).epsilon(1e-14));
    }
    SUBCASE("single vertex adds the noise draw") {
        const SmoothingKernel k(all_pairs_distances(grid_graph(1, 1)), 2.0);
        Rng a(4), b(4);
        const auto out = weather_step(std::vector<double>{1.25}, k, a);
        CHECK(out[0] == doctest::Approx(1.25 + b.normal()).epsilon(1e-15));
    }
    SUBCASE("2x2 grid with p = 1 by hand") {
        Rng rng(1);
        const auto out = weather_step(std::vector<double>{1, 2, 3, 4}, all_pairs_distances(grid_graph(2, 2)), 1.0, rng, 0.0);
        CHECK(out[0] == doctest::Approx(154.0 / 64.0));
        CHECK(out[1] == doctest::Approx(158.0 / 64.0));
        CHECK(out[2] == doctest::Approx(162.0 / 64.0));
        CHECK(out[3] == doctest::Approx(166.0 / 64.0));
    }
}

TEST_CASE("weather noise has zero mean") {
    const SmoothingKernel k(all_pairs_distances(grid_graph(5, 5)), 2.0);
    Rng rng(77);
    std::vector<double> y0(25);
    for (auto& v : y0) v = rng.normal();
    std::vector<double> once(25), twice(25);
    k.apply(y0, once);
    k.apply(once, twice);
    const std::size_t n = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto y = weather_step(y0, k, rng);
        double drift = 0.0;
        for (std::size_t x = 0; x < 25; ++x) drift += (y[x] - twice[x]) / 25.0;
        sum += drift;
        sum2 += drift * drift;
    }
    const double mean = sum / double(n);
    const double se = std::sqrt((sum2 / double(n) - mean * mean) / double(n));
    CHECK(std::abs(mean) <= 3.0 * se);
}

TEST_CASE("disturbed distances") {
    const auto g = disturbed_grid(3, 3, 4, 2.0);
    const auto d = all_pairs_distances(g);
    for (Vertex a = 0; a < 9; ++a)
        for (Vertex b = 0; b < 9; ++b) CHECK(d(a, b) == brute_force_distance(g, a, b));
    CHECK(d(4, 0) == 3.0);
    CHECK(d(3, 5) == 4.0);
    CHECK(interior_vertices(8, 8).size() == 36);
    CHECK(interior_vertices(3, 3) == std::vector<Vertex>{4});
}

TEST_CASE("disturbance monotonicity and the undisturbed case") {
    WeatherConfig cfg;
    cfg.rows = cfg.cols = 5;
    cfg.readings = 6;
    Rng a(3), b(3);
    const auto s1 = run_disturbed_series(cfg, 12, a);
    // w = 1 is the plain unit grid: replay the same stream by hand.
    const SmoothingKernel k(all_pairs_distances(grid_graph(5, 5)), cfg.p);
    std::vector<double> y(25);
    for (auto& v : y) v = b.normal();
    for (std::size_t t = 1; t < cfg.readings; ++t) y = weather_step(y, k, b);
    for (std::size_t x = 0; x < 25; ++x) CHECK(s1.series[x].values.back().value == y[x]);
    CHECK_THROWS_AS(run_disturbed_series(cfg, 0, a), ValidationError);

    const auto near = all_pairs_distances(disturbed_grid(5, 5, 12, 3.0));
    const auto far = all_pairs_distances(disturbed_grid(5, 5, 12, 9.0));
    for (std::size_t x = 0; x < 25; ++x) CHECK(far(12, x) >= near(12, x));
}

TEST_CASE("expected vs actual detection") {
    WeatherConfig cfg;
    cfg.rows = cfg.cols = 4;
    cfg.readings = 8;
    cfg.noise_scale = 0.0;
    const SmoothingKernel k(all_pairs_distances(grid_graph(4, 4)), cfg.p);
    Rng rng(5);
    std::vector<std::vector<double>> rows(16);
    std::vector<double> y(16);
    for (auto& v : y) v = rng.normal();
    for (std::size_t t = 0; t < cfg.readings; ++t) {
        if (t > 0) y = weather_step(y, k, rng, 0.0);
        for (std::size_t x = 0; x < 16; ++x) rows[x].push_back(y[x]);
    }
    const auto clean = table_from(rows, 4, 4);
    const auto scores = expected_actual_scores(clean, cfg, interior_vertices(4, 4));
    for (double s : scores.scores) CHECK(s == doctest::Approx(0.0).epsilon(1e-12));
    // All-zero residuals tie, so the lowest interior index wins. Rounding noise
    // must not matter: compare against an explicit zero-noise replay.
    CHECK(detect_expected_actual(clean, cfg) ==
          scores.candidates[std::max_element(scores.scores.begin(), scores.scores.end()) - scores.scores.begin()]);

    auto shifted = rows;
    for (auto& v : shifted[10]) v += 10.0;
    CHECK(detect_expected_actual(table_from(shifted, 4, 4), cfg) == 10);

    // Mirror symmetry of the grid maps scores onto mirrored vertices.
    auto mirrored = shifted;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) mirrored[r * 4 + c] = shifted[r * 4 + (3 - c)];
    const auto s_a = expected_actual_scores(table_from(shifted, 4, 4), cfg, std::vector<Vertex>{5, 6, 9, 10});
    const auto s_b = expected_actual_scores(table_from(mirrored, 4, 4), cfg, std::vector<Vertex>{6, 5, 10, 9});
    for (std::size_t i = 0; i < 4; ++i) CHECK(s_a.scores[i] == doctest::Approx(s_b.scores[i]).epsilon(1e-12));
}

TEST_CASE("exact-tie detection picks the lowest interior vertex") {
    WeatherConfig cfg;
    cfg.rows = cfg.cols = 4;
    std::vector<std::vector<double>> rows(16, std::vector<double>(5, 2.0));
    CHECK(detect_expected_actual(table_from(rows, 4, 4), cfg) == 5);
}

TEST_CASE("point in polygon") {
    const std::vector<Point2> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    CHECK(point_in_polygon({1, 1}, square));
    CHECK_FALSE(point_in_polygon({2, 1}, square));
    CHECK_FALSE(point_in_polygon({0, 0}, square));
    CHECK_FALSE(point_in_polygon({3, 1}, square));
    const std::vector<Point2> bow{{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK_FALSE(point_in_polygon({1, 1}, bow));
    CHECK(point_in_polygon({1.8, 1.0}, bow));
}

TEST_CASE("homology detection on planted rings") {
    WeatherConfig cfg;
    cfg.rows = cfg.cols = 5;
    SUBCASE("ring of eight around the centre") {
        const std::vector<Vertex> ring{6, 7, 8, 13, 18, 17, 16, 11};
        const auto series = planted_ring(5, 5, ring, 400, 8);
        for (Method m : {Method::Cubical, Method::Flag}) {
            const auto det = detect_homology_detail(series, cfg, m);
            CHECK(det.has_bar);
            CHECK(det.enclosed == std::vector<Vertex>{12});
            CHECK(det.vertex == 12);
            CHECK_FALSE(det.used_fallback);
            CHECK(cycle_vertices(det.bar.cycle) == std::vector<std::vector<Vertex>>{{6, 7, 8, 13, 18, 17, 16, 11}});
        }
    }
    SUBCASE("four-cycle face encloses nothing") {
        const std::vector<Vertex> face{6, 7, 12, 11};
        const auto series = planted_ring(5, 5, face, 400, 9);
        const auto det = detect_homology_detail(series, cfg, Method::Flag);
        CHECK(det.has_bar);
        CHECK(det.enclosed.empty());
        CHECK(det.used_fallback);
        CHECK(det.vertex == detect_expected_actual(series, cfg));
    }
}

TEST_CASE("weather trials are deterministic and models agree on shared cycles") {
    WeatherConfig cfg;
    cfg.rows = cfg.cols = 6;
    cfg.readings = 30;
    cfg.sweep_weights = {1.0, 6.0};
    cfg.iterations = 4;
    const auto a = accuracy_sweep(cfg, 1);
    const auto b = accuracy_sweep(cfg, 4);
    CHECK(trials_csv(a) == trials_csv(b));
    CHECK(accuracy_csv(a) == accuracy_csv(b));
    CHECK(summary_json(cfg, a) == summary_json(cfg, b));
    CHECK(a.accuracy.size() == 6);
    for (std::size_t i = 0; i < cfg.iterations; ++i) CHECK(a.trials[i].planted == a.trials[cfg.iterations + i].planted);

    for (std::uint64_t i = 0; i < 6; ++i) {
        Rng rng = trial_rng(cfg.seed, i);
        cfg.disturbance_weight = 6.0;
        const auto interior = interior_vertices(cfg.rows, cfg.cols);
        const Vertex v = interior[rng.below(interior.size())];
        const auto series = run_disturbed_series(cfg, v, rng);
        const auto c = detect_homology_detail(series, cfg, Method::Cubical);
        const auto f = detect_homology_detail(series, cfg, Method::Flag);
        if (c.has_bar && f.has_bar && cycle_vertices(c.bar.cycle) == cycle_vertices(f.bar.cycle))
            CHECK(c.vertex == f.vertex);
    }
}
