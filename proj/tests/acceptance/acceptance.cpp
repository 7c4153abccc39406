// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <boost/math/distributions/binomial.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "../unit/helpers.hpp"
#include "dch/bottleneck.hpp"
#include "dch/chain_complex.hpp"
#include "dch/experiments.hpp"
#include "dch/flag.hpp"
#include "dch/io.hpp"
#include "dch/persistence.hpp"
#include "dch/streaming.hpp"

using namespace dch;
using dch::testing::random_graph;
using dch::testing::random_weighted_graph;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = DCH_FIXTURES;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
    char buf[1024];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

PersistenceDiagram diagram(std::initializer_list<std::pair<double, double>> pairs, int dim) {
    PersistenceDiagram d;
    d.dimension = dim;
    for (auto [b, e] : pairs) d.pairs.push_back({b, e, {}});
    return d;
}

PersistenceDiagram random_diagram(Rng& rng, std::size_t max_points) {
    PersistenceDiagram d;
    d.dimension = 1;
    const std::size_t n = rng.below(max_points + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double b = rng.uniform() * 2.0;
        double e = b + rng.uniform() * 2.0;
        if (rng.uniform() < 0.1) e = kInfinity;
        d.pairs.push_back({b, e, {}});
    }
    return d;
}

WeightedGraph uniform_cycle(std::size_t n, double w) {
    WeightedGraph g(n);
    for (Vertex i = 0; i < n; ++i) g.add_edge(std::min<Vertex>(i, (i + 1) % n), std::max<Vertex>(i, (i + 1) % n), w);
    return g;
}

// --- criteria --------------------------------------------------------------

Outcome known_homology() {
    const std::vector<std::vector<std::size_t>> expected{{1, 0}, {1, 0}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}};
    std::string got;
    bool ok = true;
    for (std::size_t n = 3; n <= 9; ++n) {
        const auto b = betti_numbers(cycle_graph(n), 1);
        ok = ok && b == expected[n - 3];
        got += fmt("C%zu=(%zu,%zu) ", n, b[0], b[1]);
    }
    const auto s = betti_numbers(greene_sphere(), 2);
    ok = ok && s == std::vector<std::size_t>{1, 0, 1};
    got += fmt("sphere=(%zu,%zu,%zu)", s[0], s[1], s[2]);
    return {ok, got};
}

Outcome boundary_squared() {
    Rng rng(1002);
    std::size_t products = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        const auto g = random_graph(rng, n, 0.3 + 0.4 * rng.uniform());
        const auto cx = build_chain_complex(g, 2);
        for (int d = 1; d + 1 < static_cast<int>(cx.boundary.size()); ++d) {
            ++products;
            if (!is_zero(multiply(cx.boundary[d], cx.boundary[d + 1])))
                return {false, fmt("nonzero composite in dimension %d on trial %d", d, trial)};
        }
    }
    return {true, fmt("200 graphs, %zu composites checked", products)};
}

Outcome persistence_oracle() {
    Rng rng(1003);
    std::size_t checks = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(7);
        const auto g = random_weighted_graph(rng, n, 0.3 + 0.5 * rng.uniform(), 1 + rng.below(10));
        const auto fc = assign_filtration(g, 1);
        const PersistenceDiagram diags[2] = {reduce(fc, 0), reduce(fc, 1)};
        for (double r : critical_values(fc))
            for (int d = 0; d <= 1; ++d) {
                ++checks;
                if (diags[d].alive_at(r) != betti_at(fc, r, d))
                    return {false, fmt("trial %d, r=%g, dim %d", trial, r, d)};
            }
    }
    return {true, fmt("100 graphs, %zu (value, dim) checks", checks)};
}

Outcome worked_filtration() {
    const auto g = read_edge_csv(kFixtures / "worked_filtration.csv");
    const auto fc = assign_filtration(g, 1);
    const auto want0 = diagram({{0, 0.2}, {0, 0.2}, {0, kInfinity}}, 0);
    const auto want1 = diagram({{0.5, 0.8}}, 1);
    const GraphPersistence gp(g, Method::Cubical, 1);
    const bool ok = reduce(fc, 0) == want0 && reduce(fc, 1) == want1 && gp.diagram(0) == want0 &&
                    gp.diagram(1) == want1;
    return {ok, fmt("H0 bars %zu, H1 bars %zu", gp.diagram(0).size(), gp.diagram(1).size())};
}

Outcome four_cycle() {
    const auto c4 = uniform_cycle(4, 0.5);
    const auto c5 = uniform_cycle(5, 0.5);
    const std::size_t f4 = GraphPersistence(c4, Method::Flag).diagram(1).size();
    const std::size_t k4 = GraphPersistence(c4, Method::Cubical).diagram(1).size();
    const std::size_t f5 = GraphPersistence(c5, Method::Flag).diagram(1).size();
    const std::size_t k5 = GraphPersistence(c5, Method::Cubical).diagram(1).size();
    return {f4 == 1 && k4 == 0 && f5 == 1 && k5 == 1,
            fmt("C4 flag=%zu cubical=%zu, C5 flag=%zu cubical=%zu", f4, k4, f5, k5)};
}

Outcome bottleneck_exact() {
    Rng rng(1006);
    double worst = 0.0, worst_sym = 0.0, worst_tri = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_diagram(rng, 4);
        const auto q = random_diagram(rng, 4);
        const auto r = random_diagram(rng, 4);
        const double fast = bottleneck(p, q);
        const double slow = bottleneck_bruteforce(p, q);
        if (std::isinf(fast) || std::isinf(slow)) {
            ok = ok && std::isinf(fast) && std::isinf(slow);
        } else {
            worst = std::max(worst, std::abs(fast - slow));
        }
        const double back = bottleneck(q, p);
        if (std::isfinite(fast) || std::isfinite(back)) worst_sym = std::max(worst_sym, std::abs(fast - back));
        const double pr = bottleneck(p, r), rq = bottleneck(r, q);
        if (std::isfinite(pr + rq)) worst_tri = std::max(worst_tri, fast - (pr + rq));
    }
    ok = ok && worst <= 1e-12 && worst_sym <= 1e-9 && worst_tri <= 1e-9;
    return {ok, fmt("max |fast-brute| %.3g, asymmetry %.3g, triangle excess %.3g", worst, worst_sym, worst_tri)};
}

Outcome circle_comparison() {
    CircleConfig cfg;
    cfg.iterations = 200;
    const auto s = run_circle(cfg, 0).summary;
    const bool ok = s.win_fraction >= 0.80 && s.mean_cubical < s.mean_flag;
    return {ok, fmt("mean cubical %.4f, mean flag %.4f, strict wins %zu/200 (%.3f, need >= 0.80), ties %zu",
                    s.mean_cubical, s.mean_flag, s.cubical_wins, s.win_fraction, s.ties)};
}

Outcome multifit() {
    MultiFitConfig cfg;
    cfg.iterations = 20000;
    const auto s = run_multifit(cfg, 0).summary;
    const bool ok = s.correlation.r > 0.0 && s.correlation.p_value < 0.01 &&
                    s.mean_increase_positive > s.mean_increase_zero;
    return {ok, fmt("pearson r %.4f (p %.3g, n %zu), mean increase %.4f (H1>0, %zu trials) vs %.4f (H1=0)",
                    s.correlation.r, s.correlation.p_value, s.correlation.n, s.mean_increase_positive,
                    s.count_positive, s.mean_increase_zero)};
}

Outcome weather() {
    WeatherConfig cfg;
    cfg.iterations = 200;
    const auto run = accuracy_sweep(cfg, 0);
    std::map<std::pair<double, Model>, double> acc;
    for (const auto& row : run.accuracy) acc[{row.w, row.model}] = row.accuracy();

    const auto interior = interior_vertices(cfg.rows, cfg.cols).size();
    const boost::math::binomial chance(double(cfg.iterations), 1.0 / double(interior));
    const double lo = boost::math::quantile(chance, 0.005) / double(cfg.iterations);
    const double hi = boost::math::quantile(boost::math::complement(chance, 0.005)) / double(cfg.iterations);

    bool a = true, b = true, c = true;
    for (Model m : kModels) {
        const double r1 = acc.at({1.0, m});
        a = a && r1 >= lo && r1 <= hi;
        b = b && acc.at({12.0, m}) >= 0.85;
    }
    for (double w : {4.0, 8.0}) c = c && acc.at({w, Model::Cubical}) >= acc.at({w, Model::ExpectedActual});

    std::string table;
    for (double w : cfg.sweep_weights) {
        table += fmt("w=%g:", w);
        for (Model m : kModels) table += fmt(" %s %.3f", std::string(to_string(m)).c_str(), acc.at({w, m}));
        table += "; ";
    }
    table += fmt("(a) chance band [%.3f, %.3f] %s, (b) w=12 >= 0.85 %s, (c) cubical >= expected_actual at w=4,8 %s",
                 lo, hi, a ? "ok" : "FAIL", b ? "ok" : "FAIL", c ? "ok" : "FAIL");
    return {a && b && c, table};
}

Outcome h0_agreement() {
    Rng rng(1010);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = random_weighted_graph(rng, 2 + rng.below(7), 0.3 + 0.5 * rng.uniform(), 1 + rng.below(10));
        if (flag_persistence(g, 0)[0] != cubical_persistence(g, 0)[0])
            return {false, fmt("trial %d differs", trial)};
    }
    return {true, "100 graphs identical"};
}

// --- CLI-driven criteria ----------------------------------------------------

#ifdef DCH_CLI
struct Shell {
    fs::path root = fs::temp_directory_path() / ("dch_acceptance_" + std::to_string(::getpid()));
    Shell() { fs::create_directories(root); }
    ~Shell() {
        std::error_code ec;
        fs::remove_all(root, ec);
    }

    /// Runs the CLI; returns its exit code and fills `out` with stdout.
    int run(const std::string& args, std::string* out = nullptr) const {
        const fs::path capture = root / "stdout.txt";
        const std::string cmd =
            std::string("\"") + DCH_CLI + "\" " + args + " > \"" + capture.string() + "\" 2>/dev/null";
        const int status = std::system(cmd.c_str());
        if (out) *out = read_text_file(capture);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string dir(const std::string& name) const { return "--out-dir \"" + (root / name).string() + "\""; }

    fs::path only_run(const std::string& name) const {
        for (const auto& e : fs::directory_iterator(root / name))
            if (e.is_directory()) return e.path();
        return {};
    }
};

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

std::map<std::string, std::string> reports(const fs::path& dir) {
    std::map<std::string, std::string> out;
    if (dir.empty()) return out;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto ext = e.path().extension();
        if (ext == ".json" || ext == ".csv") out[e.path().filename().string()] = read_text_file(e.path());
    }
    return out;
}

Outcome determinism() {
    const Shell sh;
    const std::string box = "--lat-min 42.7 --lat-max 45 --lon-min -80 --lon-max -74 ";
    if (sh.run("ingest stations " + box + quoted(kFixtures / "stations_ring") + " " + sh.dir("seed_ring")) != 0)
        return {false, "ingest failed"};
    const auto series = sh.only_run("seed_ring") / "series.csv";
    if (sh.run("persist " + quoted(kFixtures / "worked_filtration.csv") + " " + sh.dir("seed_diag")) != 0)
        return {false, "persist failed"};
    const auto diag = sh.only_run("seed_diag") / "diagram_h1.json";

    const std::vector<std::string> commands{
        "homology " + quoted(kFixtures / "greene_sphere.csv") + " --max-dim 2",
        "--format csv homology " + quoted(kFixtures / "c5.csv"),
        "persist " + quoted(kFixtures / "noisy_circle.csv"),
        "persist --method flag --dim 0 " + quoted(kFixtures / "noisy_circle.csv"),
        "--format csv persist " + quoted(series),
        "bottleneck " + quoted(diag) + " " + quoted(diag),
        "--seed 9 experiment circle --iterations 6",
        "experiment multifit --iterations 500",
        "experiment weather --set rows=5 --set cols=5 --set readings=20 --iterations 4",
        "ingest stations " + box + quoted(kFixtures / "stations_box"),
        "ingest quotes " + quoted(kFixtures / "stocks"),
        "report-cycle " + quoted(series),
        "--format csv report-cycle --method flag " + quoted(series),
    };
    std::size_t files = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i);
        std::string out_a, out_b;
        const int ca = sh.run(commands[i] + " --threads 4 " + sh.dir(a), &out_a);
        const int cb = sh.run(commands[i] + " --threads 1 " + sh.dir(b), &out_b);
        if (ca != 0 || cb != 0) return {false, "exit code " + std::to_string(ca) + " for: " + commands[i]};
        const auto fa = reports(sh.only_run(a));
        const auto fb = reports(sh.only_run(b));
        if (out_a != out_b || fa != fb || fa.empty()) return {false, "outputs differ for: " + commands[i]};
        files += fa.size();
    }
    return {true, fmt("%zu commands, %zu CSV/JSON files byte-identical across reruns", commands.size(), files)};
}

Outcome real_data_smoke() {
    const Shell sh;
    const std::string box = "--lat-min 42.7 --lat-max 45 --lon-min -80 --lon-max -74 ";
    if (sh.run("ingest stations " + box + quoted(kFixtures / "stations_ring") + " " + sh.dir("ring")) != 0)
        return {false, "station ingest failed"};
    std::string text;
    if (sh.run("report-cycle " + quoted(sh.only_run("ring") / "series.csv") + " " + sh.dir("ring_report"), &text) != 0)
        return {false, "station report-cycle failed"};
    const std::vector<std::string> ring{"USC00000101", "USC00000102", "USC00000103",
                                        "USC00000104", "USC00000105", "USC00000106"};
    const auto report = nlohmann::json::parse(read_text_file(sh.only_run("ring_report") / "cycle.json"));
    const bool ring_ok = report["longest"]["cycles"] == nlohmann::json::array({ring});

    if (sh.run("ingest quotes " + quoted(kFixtures / "stocks") + " " + sh.dir("stocks")) != 0)
        return {false, "quote ingest failed"};
    std::string stocks;
    if (sh.run("report-cycle " + quoted(sh.only_run("stocks") / "series.csv") + " " + sh.dir("stocks_report"),
               &stocks) != 0)
        return {false, "quote report-cycle failed"};
    const bool pair_ok = stocks.find("AAA + BBB at 0\n") != std::string::npos;
    return {ring_ok && pair_ok,
            fmt("planted ring %s, stock pair merged at 0 %s", ring_ok ? "named exactly" : "MISMATCH",
                pair_ok ? "yes" : "no")};
}
#else
Outcome determinism() { return {false, "dch CLI not built"}; }
Outcome real_data_smoke() { return {false, "dch CLI not built"}; }
#endif

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "known homology table", known_homology},
        {2, "boundary of boundary is zero", boundary_squared},
        {3, "reduction matches stage-wise Betti numbers", persistence_oracle},
        {4, "worked filtration diagrams", worked_filtration},
        {5, "four-cycle contrast", four_cycle},
        {6, "bottleneck exactness and metric laws", bottleneck_exact},
        {7, "noisy circle: cubical closer than flag", circle_comparison},
        {8, "multivariate fit vs H1 length", multifit},
        {9, "weather sweep trend", weather},
        {10, "flag and cubical H0 agree", h0_agreement},
        {11, "CLI determinism", determinism},
        {12, "ingest and report-cycle on fixtures", real_data_smoke},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("%s %2d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
