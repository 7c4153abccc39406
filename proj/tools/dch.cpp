// dch: command-line front end for the discrete cubical homology library.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dch/bottleneck.hpp"
#include "dch/chain_complex.hpp"
#include "dch/csv.hpp"
#include "dch/error.hpp"
#include "dch/experiments.hpp"
#include "dch/ingest.hpp"
#include "dch/io.hpp"
#include "dch/persistence.hpp"
#include "dch/series.hpp"
#include "dch/streaming.hpp"
#include "dch/thread_pool.hpp"

namespace fs = std::filesystem;
using namespace dch;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;

struct Globals {
    std::optional<std::uint64_t> seed;
    std::size_t threads = 0;
    std::string out_dir;
    std::string format = "json";

    std::size_t worker_count() const { return threads ? threads : default_thread_count(); }
    bool csv() const { return format == "csv"; }
};

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Per-run output directory. Everything that determines the outputs goes into
/// manifest.json; its digest names the directory. Wall-clock times go to
/// run.log so the JSON stays byte-stable across reruns.
class Run {
public:
    Run(std::string command, const Globals& globals, std::map<std::string, std::string> params,
        const std::vector<fs::path>& inputs)
        : started_(utc_now()) {
        auto body = [&](const std::string* digest) {
            JsonWriter w;
            w.begin_object();
            w.key("tool").value("dch");
            w.key("version").value(DCH_VERSION);
            w.key("command").value(command);
            if (globals.seed) w.key("seed").value(*globals.seed);
            w.key("format").value(globals.format);
            w.key("parameters").begin_object();
            for (const auto& [k, v] : params) w.key(k).value(v);
            w.end_object();
            w.key("inputs").begin_array();
            for (const auto& p : inputs) {
                w.begin_object();
                w.key("path").value(p.generic_string());
                w.key("digest").value(fnv1a_hex(read_text_file(p)));
                w.end_object();
            }
            w.end_array();
            if (digest) w.key("digest").value(*digest);
            w.end_object();
            return w.str();
        };
        digest_ = fnv1a_hex(body(nullptr));
        manifest_ = body(&digest_);
        if (!globals.out_dir.empty()) dir_ = fs::path(globals.out_dir) / (command + "-" + digest_);
    }

    const std::string& digest() const { return digest_; }
    bool writes_files() const { return !dir_.empty(); }
    const fs::path& dir() const { return dir_; }

    void write(const std::string& name, std::string_view content) {
        if (!writes_files()) return;
        write_text_file(dir_ / name, content);
        files_.push_back(name);
    }

    void finish() {
        if (!writes_files()) return;
        write_text_file(dir_ / "manifest.json", manifest_);
        std::string log = "started " + started_ + "\nfinished " + utc_now() + "\n";
        for (const auto& f : files_) log += "wrote " + f + "\n";
        write_text_file(dir_ / "run.log", log);
        std::cerr << "outputs in " << dir_.generic_string() << "\n";
    }

private:
    std::string started_;
    std::string digest_;
    std::string manifest_;
    fs::path dir_;
    std::vector<std::string> files_;
};

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

/// Files named directly plus the *.csv files of named directories, sorted.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& args) {
    std::vector<fs::path> out;
    for (const auto& a : args) {
        const fs::path p(a);
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (const auto& e : fs::directory_iterator(p))
                if (e.is_regular_file() && e.path().extension() == ".csv") found.push_back(e.path());
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(p)) {
            out.push_back(p);
        } else {
            throw ValidationError("no such input: " + a);
        }
    }
    if (out.empty()) throw ValidationError("no input files");
    return out;
}

enum class InputKind { Graph, Series };

InputKind detect_kind(const fs::path& path, const std::string& requested) {
    if (requested == "graph") return InputKind::Graph;
    if (requested == "series") return InputKind::Series;
    const CsvTable table = read_csv(path);
    if (table.column("u") && table.column("v")) return InputKind::Graph;
    if (!table.header.empty() && trim(table.header[0]) == "t") return InputKind::Series;
    throw ValidationError(path.string() + ": cannot tell graph CSV (u,v[,weight]) from series CSV (t,...)");
}

std::string diagram_csv(const PersistenceDiagram& d) {
    std::string out = "dimension,birth,death\n";
    for (const auto& p : d.pairs)
        out += std::to_string(d.dimension) + ',' + format_double(p.birth) + ',' + format_double(p.death) + '\n';
    return out;
}

std::string json_number(double v) {
    JsonWriter w;
    w.value(v);
    std::string s = w.str();
    s.pop_back();
    return s;
}

// ---------------------------------------------------------------------------

struct HomologyArgs {
    std::string input;
    std::size_t vertices = 0;
    int max_dim = 1;
};

int cmd_homology(const Globals& g, const HomologyArgs& a) {
    const auto graph = read_edge_csv(a.input, a.vertices);
    if (a.max_dim < 0) throw ValidationError("--max-dim must be nonnegative");
    Run run("homology", g, {{"max_dim", std::to_string(a.max_dim)}, {"vertices", std::to_string(a.vertices)}},
            {a.input});
    const auto betti = betti_numbers(graph, a.max_dim);
    std::string text;
    if (g.csv()) {
        text = "dimension,betti\n";
        for (std::size_t d = 0; d < betti.size(); ++d) text += std::to_string(d) + ',' + std::to_string(betti[d]) + '\n';
    } else {
        text = "[";
        for (std::size_t d = 0; d < betti.size(); ++d) text += (d ? "," : "") + std::to_string(betti[d]);
        text += "]\n";
    }
    std::cout << text;
    run.write(g.csv() ? "betti.csv" : "betti.json", text);
    run.finish();
    return 0;
}

struct PersistArgs {
    std::string input;
    std::string kind = "auto";
    std::string method = "cubical";
    int dim = 1;
    std::size_t vertices = 0;
};

int cmd_persist(const Globals& g, const PersistArgs& a) {
    const Method method = parse_method(a.method);
    if (a.dim < 0 || a.dim > 1) throw ValidationError("--dim must be 0 or 1");
    const InputKind kind = detect_kind(a.input, a.kind);
    WeightedGraph graph = kind == InputKind::Graph ? read_edge_csv(a.input, a.vertices)
                                                   : correlation_graph(read_series_csv(a.input), {}, g.worker_count());
    if (!graph.has_weights()) throw ValidationError(a.input + ": persistence needs a weight column");
    Run run("persist", g,
            {{"method", std::string(to_string(method))},
             {"dim", std::to_string(a.dim)},
             {"input_kind", kind == InputKind::Graph ? "graph" : "series"},
             {"vertices", std::to_string(a.vertices)}},
            {a.input});
    const GraphPersistence gp(graph, method, 1);
    const auto& diagram = gp.diagram(a.dim);
    const std::string stem = "diagram_h" + std::to_string(a.dim);
    const std::string body = g.csv() ? diagram_csv(diagram) : diagram_json(diagram, to_string(method), run.digest());
    run.write(stem + (g.csv() ? ".csv" : ".json"), body);
    run.write("barcode_h" + std::to_string(a.dim) + ".svg", barcode_svg(diagram, to_string(method)));
    if (!run.writes_files()) std::cout << body;
    else std::cout << "H" << a.dim << " (" << to_string(method) << "): " << diagram.size() << " bars\n";
    run.finish();
    return 0;
}

struct BottleneckArgs {
    std::string first, second;
};

int cmd_bottleneck(const Globals& g, const BottleneckArgs& a) {
    const auto p = read_diagram_json(a.first);
    const auto q = read_diagram_json(a.second);
    Run run("bottleneck", g, {}, {a.first, a.second});
    const double d = bottleneck(p.diagram, q.diagram);
    const std::string text = g.csv() ? "distance\n" + format_double(d) + "\n" : json_number(d) + "\n";
    std::cout << text;
    run.write(g.csv() ? "distance.csv" : "distance.json", text);
    run.finish();
    return 0;
}

struct ExperimentArgs {
    std::string name;
    std::string config;
    std::optional<std::size_t> iterations;
    std::vector<std::string> overrides;
};

int cmd_experiment(const Globals& g, const ExperimentArgs& a) {
    KeyValues kv;
    std::vector<fs::path> inputs;
    if (!a.config.empty()) {
        kv = read_key_values(a.config);
        inputs.push_back(a.config);
    }
    for (const auto& o : a.overrides) {
        const auto parsed = parse_key_values(o);
        if (parsed.empty()) throw ValidationError("--set expects key=value, got '" + o + "'");
        for (const auto& [k, v] : parsed) kv[k] = v;
    }
    if (a.iterations) kv["iterations"] = std::to_string(*a.iterations);
    if (g.seed) kv["seed"] = std::to_string(*g.seed);
    std::map<std::string, std::string> params(kv.begin(), kv.end());
    params["experiment"] = a.name;

    std::string trials, summary, extra;
    if (a.name == "circle") {
        CircleConfig cfg;
        cfg.apply(kv);
        Run run("experiment", g, params, inputs);
        const auto r = run_circle(cfg, g.worker_count());
        trials = trials_csv(r);
        summary = summary_json(cfg, r);
        std::printf("circle: mean cubical %.4f, mean flag %.4f, cubical strictly smaller in %zu/%zu\n",
                    r.summary.mean_cubical, r.summary.mean_flag, r.summary.cubical_wins, r.summary.iterations);
        run.write("trials.csv", trials);
        run.write("summary.json", summary);
        run.finish();
    } else if (a.name == "multifit") {
        MultiFitConfig cfg;
        cfg.apply(kv);
        Run run("experiment", g, params, inputs);
        const auto r = run_multifit(cfg, g.worker_count());
        trials = trials_csv(r);
        summary = summary_json(cfg, r);
        std::printf("multifit: pearson r %.4f (p %.3g) over %zu trials\n", r.summary.correlation.r,
                    r.summary.correlation.p_value, r.summary.correlation.n);
        run.write("trials.csv", trials);
        run.write("summary.json", summary);
        run.finish();
    } else if (a.name == "weather") {
        WeatherConfig cfg;
        cfg.apply(kv);
        Run run("experiment", g, params, inputs);
        const auto r = accuracy_sweep(cfg, g.worker_count());
        trials = trials_csv(r);
        summary = summary_json(cfg, r);
        extra = accuracy_csv(r);
        std::cout << extra;
        run.write("trials.csv", trials);
        run.write("accuracy.csv", extra);
        run.write("summary.json", summary);
        run.finish();
    } else {
        throw ValidationError("unknown experiment '" + a.name + "' (circle, multifit, weather)");
    }
    return 0;
}

struct IngestArgs {
    std::string source;
    std::vector<std::string> inputs;
    double lat_min = -90, lat_max = 90, lon_min = -180, lon_max = 180;
    std::string field = "TAVG";
    StationColumns columns;
    std::vector<std::string> tickers;
    std::string date_column = "Date";
    std::string price_column = "Close";
    std::size_t min_rows = 2;
};

int cmd_ingest(const Globals& g, const IngestArgs& a) {
    const auto files = expand_inputs(a.inputs);
    std::map<std::string, std::string> params{{"source", a.source}};
    IngestReport report;
    if (a.source == "stations") {
        StationFilter f;
        f.lat_range = {a.lat_min, a.lat_max};
        f.lon_range = {a.lon_min, a.lon_max};
        f.field_name = a.field;
        params.insert({{"lat_min", format_double(a.lat_min)},
                       {"lat_max", format_double(a.lat_max)},
                       {"lon_min", format_double(a.lon_min)},
                       {"lon_max", format_double(a.lon_max)},
                       {"field", a.field},
                       {"station_column", a.columns.station},
                       {"date_column", a.columns.date},
                       {"latitude_column", a.columns.latitude},
                       {"longitude_column", a.columns.longitude}});
        report = load_station_series(files, f, a.columns);
    } else if (a.source == "quotes") {
        QuoteSeriesOptions quote_opts;
        quote_opts.tickers = a.tickers;
        quote_opts.date_column = a.date_column;
        quote_opts.price_column = a.price_column;
        quote_opts.min_rows = a.min_rows;
        params.insert({{"tickers", join(a.tickers, ",")},
                       {"date_column", a.date_column},
                       {"price_column", a.price_column},
                       {"min_rows", std::to_string(a.min_rows)}});
        report = load_quote_series(files, quote_opts);
    } else {
        throw ValidationError("unknown source '" + a.source + "' (stations, quotes)");
    }
    Run run("ingest", g, params, files);
    run.write("series.csv", series_csv_text(report.table));
    if (!report.table.coords.empty()) {
        std::string coords = "name,x,y\n";
        for (std::size_t i = 0; i < report.table.size(); ++i)
            coords += csv_escape(report.table.series[i].name) + ',' + format_double(report.table.coords[i].x) + ',' +
                      format_double(report.table.coords[i].y) + '\n';
        run.write("coords.csv", coords);
    }
    JsonWriter w;
    w.begin_object();
    w.key("manifest").value(run.digest());
    w.key("series").value(std::uint64_t(report.table.size()));
    w.key("rows_read").value(std::uint64_t(report.rows_read));
    w.key("malformed").value(std::uint64_t(report.malformed));
    w.key("duplicates").value(std::uint64_t(report.duplicates));
    w.key("dropped").value(std::uint64_t(report.dropped));
    w.key("names").begin_array(true);
    for (const auto& s : report.table.series) w.value(s.name);
    w.end_array();
    w.key("warnings").begin_array();
    for (const auto& m : report.warnings) w.value(m);
    w.end_array();
    w.end_object();
    run.write("ingest.json", w.str());
    if (!run.writes_files()) std::cout << series_csv_text(report.table);
    else std::cout << "ingested " << report.table.size() << " series, " << report.warnings.size() << " warnings\n";
    for (const auto& m : report.warnings) std::cerr << "warning: " << m << "\n";
    run.finish();
    return 0;
}

struct ReportArgs {
    std::string input;
    std::string method = "cubical";
};

int cmd_report_cycle(const Globals& g, const ReportArgs& a) {
    const Method method = parse_method(a.method);
    const auto table = read_series_csv(a.input);
    Run run("report-cycle", g, {{"method", std::string(to_string(method))}}, {a.input});
    const auto names = table.names();
    const auto graph = correlation_graph(table, {}, g.worker_count());
    const GraphPersistence gp(graph, method, 1);
    const auto& h1 = gp.diagram(1);

    std::ostringstream text;
    JsonWriter w;
    w.begin_object();
    w.key("manifest").value(run.digest());
    w.key("method").value(to_string(method));
    w.key("series_count").value(std::uint64_t(table.size()));
    w.key("h1_bars").value(std::uint64_t(h1.size()));
    std::vector<std::vector<std::string>> csv_rows;
    if (h1.empty()) {
        const std::string notice = table.size() < 5 ? "no H1 bars: fewer than 5 series cannot form a 5-cycle"
                                                    : "no H1 bars";
        w.key("longest").null();
        w.key("notice").value(notice);
        text << notice << "\n";
    } else {
        const auto& bar = longest_bar(h1, 1.0);
        const auto cycles = cycle_vertices(bar.cycle);
        w.key("longest").begin_object();
        w.key("birth").value(bar.birth);
        w.key("death").value(bar.death);
        w.key("cycles").begin_array();
        text << "longest H1 bar [" << format_double(bar.birth) << ", " << format_double(bar.death) << ")\n";
        for (std::size_t c = 0; c < cycles.size(); ++c) {
            std::vector<std::string> named;
            for (Vertex v : cycles[c]) named.push_back(names.at(v));
            w.begin_array(true);
            for (const auto& n : named) w.value(n);
            w.end_array();
            text << "  " << join(named, " -- ") << " -- " << named.front() << "\n";
            for (std::size_t k = 0; k < named.size(); ++k)
                csv_rows.push_back({"h1", std::to_string(c), std::to_string(k), named[k], format_double(bar.birth),
                                    format_double(bar.death)});
        }
        w.end_array();
        w.end_object();
    }
    w.key("h0_merges").begin_array();
    text << "H0 merges:\n";
    for (const auto& m : gp.merges()) {
        w.begin_object();
        w.key("a").value(names.at(m.a));
        w.key("b").value(names.at(m.b));
        w.key("value").value(m.value);
        w.end_object();
        text << "  " << names.at(m.a) << " + " << names.at(m.b) << " at " << format_double(m.value) << "\n";
        csv_rows.push_back({"h0", "", "", names.at(m.a) + " + " + names.at(m.b), format_double(m.value), ""});
    }
    w.end_array();
    w.end_object();

    if (g.csv()) {
        std::string csv = "kind,cycle,position,name,birth,death\n";
        for (const auto& r : csv_rows) {
            std::vector<std::string> cells;
            for (const auto& c : r) cells.push_back(csv_escape(c));
            csv += join(cells, ",") + "\n";
        }
        run.write("cycle.csv", csv);
    } else {
        run.write("cycle.json", w.str());
    }
    run.write("cycle.txt", text.str());
    std::cout << text.str();
    run.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete cubical homology of weighted graphs and time series"};
    app.set_version_flag("--version", std::string(DCH_VERSION));
    app.require_subcommand(1);

    Globals g;
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Random seed (overrides configuration files)");
    app.add_option("--threads", g.threads, "Worker threads; 0 = available parallelism");
    auto* out_opt = app.add_option("--out-dir", g.out_dir, "Root directory for per-run output folders");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    for (auto* opt : app.get_options()) opt->configurable(false);
    app.fallthrough();

    HomologyArgs ha;
    auto* homology = app.add_subcommand("homology", "Betti numbers of an unweighted edge list");
    homology->add_option("graph", ha.input, "Edge CSV (u,v)")->required()->check(CLI::ExistingFile);
    homology->add_option("--max-dim", ha.max_dim, "Highest dimension");
    homology->add_option("--vertices", ha.vertices, "Minimum vertex count (for isolated vertices)");

    PersistArgs pa;
    auto* persist = app.add_subcommand("persist", "Persistence diagram of a weighted graph or series table");
    persist->add_option("input", pa.input, "Weighted edge CSV or series CSV")->required()->check(CLI::ExistingFile);
    persist->add_option("--method", pa.method, "cubical or flag")->check(CLI::IsMember({"cubical", "flag"}));
    persist->add_option("--dim", pa.dim, "Homology dimension (0 or 1)");
    persist->add_option("--input-kind", pa.kind, "auto, graph or series")
        ->check(CLI::IsMember({"auto", "graph", "series"}));
    persist->add_option("--vertices", pa.vertices, "Minimum vertex count for graph input");

    BottleneckArgs ba;
    auto* bn = app.add_subcommand("bottleneck", "Bottleneck distance between two diagram JSON files");
    bn->add_option("first", ba.first)->required()->check(CLI::ExistingFile);
    bn->add_option("second", ba.second)->required()->check(CLI::ExistingFile);

    ExperimentArgs ea;
    std::size_t iterations = 0;
    auto* exp = app.add_subcommand("experiment", "Run a seeded experiment harness");
    exp->add_option("name", ea.name, "circle, multifit or weather")
        ->required()
        ->check(CLI::IsMember({"circle", "multifit", "weather"}));
    exp->add_option("--config", ea.config, "key = value configuration file")->check(CLI::ExistingFile);
    auto* iter_opt = exp->add_option("--iterations", iterations, "Iteration count override");
    exp->add_option("--set", ea.overrides, "Configuration override key=value (repeatable)");

    IngestArgs ia;
    auto* ingest = app.add_subcommand("ingest", "Convert station or quote CSVs into a series table");
    ingest->add_option("source", ia.source, "stations or quotes")
        ->required()
        ->check(CLI::IsMember({"stations", "quotes"}));
    ingest->add_option("inputs", ia.inputs, "CSV files or directories")->required();
    ingest->add_option("--lat-min", ia.lat_min, "Station box: minimum latitude");
    ingest->add_option("--lat-max", ia.lat_max, "Station box: maximum latitude");
    ingest->add_option("--lon-min", ia.lon_min, "Station box: minimum longitude");
    ingest->add_option("--lon-max", ia.lon_max, "Station box: maximum longitude");
    ingest->add_option("--field", ia.field, "Station value column");
    ingest->add_option("--station-column", ia.columns.station, "Station id column");
    ingest->add_option("--month-column", ia.columns.date, "Month column (YYYY-MM)");
    ingest->add_option("--latitude-column", ia.columns.latitude, "Latitude column");
    ingest->add_option("--longitude-column", ia.columns.longitude, "Longitude column");
    ingest->add_option_function<std::string>(
        "--tickers",
        [&ia](const std::string& list) {
            for (const auto& t : dch::split_csv_line(list))
                if (!dch::trim(t).empty()) ia.tickers.push_back(std::string(dch::trim(t)));
        },
        "Comma-separated tickers to keep (default: all files)");
    ingest->add_option("--date-column", ia.date_column, "Quote date column");
    ingest->add_option("--price-column", ia.price_column, "Quote close column");
    ingest->add_option("--min-rows", ia.min_rows, "Drop tickers with fewer valid rows");

    ReportArgs ra;
    auto* report = app.add_subcommand("report-cycle", "Longest H1 bar of a series table with named cycle");
    report->add_option("series", ra.input, "Series CSV")->required()->check(CLI::ExistingFile);
    report->add_option("--method", ra.method, "cubical or flag")->check(CLI::IsMember({"cubical", "flag"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }
    if (seed_opt->count()) g.seed = seed;
    if (iter_opt->count()) ea.iterations = iterations;
    const bool default_out = !out_opt->count();

    try {
        if (*homology) return cmd_homology(g, ha);
        if (*bn) return cmd_bottleneck(g, ba);
        if (default_out) g.out_dir = "dch-runs";
        if (*persist) return cmd_persist(g, pa);
        if (*exp) return cmd_experiment(g, ea);
        if (*ingest) return cmd_ingest(g, ia);
        if (*report) return cmd_report_cycle(g, ra);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitInvariant;
}
