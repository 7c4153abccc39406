#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dch/bottleneck.hpp"
#include "dch/chain_complex.hpp"
#include "dch/csv.hpp"
#include "dch/error.hpp"
#include "dch/experiments.hpp"
#include "dch/flag.hpp"
#include "dch/io.hpp"
#include "dch/persistence.hpp"
#include "dch/series.hpp"
#include "dch/streaming.hpp"

namespace py = pybind11;
using namespace dch;

namespace {

using Edge2 = std::tuple<Vertex, Vertex>;
using Edge3 = std::tuple<Vertex, Vertex, double>;

std::size_t vertex_bound(std::size_t n, Vertex u, Vertex v) { return std::max<std::size_t>(n, std::max(u, v) + 1); }

WeightedGraph unweighted(const std::vector<Edge2>& edges, std::size_t n) {
    for (auto [u, v] : edges) n = vertex_bound(n, u, v);
    WeightedGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

WeightedGraph weighted(const std::vector<Edge3>& edges, std::size_t n) {
    for (auto [u, v, w] : edges) n = vertex_bound(n, u, v);
    WeightedGraph g(n);
    for (auto [u, v, w] : edges) g.add_edge(u, v, w);
    return g;
}

PersistenceDiagram from_pairs(const std::vector<std::pair<double, double>>& pairs, int dim = 1) {
    PersistenceDiagram d;
    d.dimension = dim;
    for (auto [b, e] : pairs) d.pairs.push_back({b, e, {}});
    return d;
}

/// Series given as name -> list of values (times 0..n-1, None = missing).
SeriesTable table_from(const std::vector<std::pair<std::string, std::vector<std::optional<double>>>>& series) {
    SeriesTable t;
    for (const auto& [name, values] : series) {
        std::vector<Observation> obs;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i]) obs.push_back({std::int64_t(i), *values[i]});
        t.add(name, std::move(obs));
    }
    return t;
}

std::vector<Edge3> edge_list(const WeightedGraph& g) {
    std::vector<Edge3> out;
    for (std::size_t i = 0; i < g.edge_count(); ++i) out.emplace_back(g.edge(i).u, g.edge(i).v, g.edge_weight(i));
    return out;
}

}  // namespace

PYBIND11_MODULE(pydch, m) {
    m.doc() = "Discrete cubical homology and persistence of weighted graphs";
    m.attr("__version__") = DCH_VERSION;

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_MemoryError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<PersistencePair>(m, "PersistencePair")
        .def_readonly("birth", &PersistencePair::birth)
        .def_readonly("death", &PersistencePair::death)
        .def_property_readonly("cycle",
                               [](const PersistencePair& p) {
                                   std::vector<std::pair<Vertex, Vertex>> out;
                                   for (const auto& e : p.cycle) out.emplace_back(e.from, e.to);
                                   return out;
                               })
        .def("is_infinite", &PersistencePair::is_infinite)
        .def("__repr__", [](const PersistencePair& p) {
            return "PersistencePair(" + format_double(p.birth) + ", " + format_double(p.death) + ")";
        });

    py::class_<PersistenceDiagram>(m, "PersistenceDiagram")
        .def_readonly("dimension", &PersistenceDiagram::dimension)
        .def_readonly("pairs", &PersistenceDiagram::pairs)
        .def("__len__", &PersistenceDiagram::size)
        .def("values", &PersistenceDiagram::sorted_values, "Sorted (birth, death) tuples")
        .def("infinite_count", &PersistenceDiagram::infinite_count)
        .def("to_json", [](const PersistenceDiagram& d) { return diagram_json(d); });

    m.def(
        "betti_numbers",
        [](const std::vector<Edge2>& edges, std::size_t vertices, int max_dim) {
            return betti_numbers(unweighted(edges, vertices), max_dim);
        },
        py::arg("edges"), py::arg("vertices") = 0, py::arg("max_dim") = 1,
        "Betti numbers beta_0..beta_max_dim over Z/2 of an undirected graph.");

    m.def(
        "persistence",
        [](const std::vector<Edge3>& edges, std::size_t vertices, const std::string& method) {
            const auto g = weighted(edges, vertices);
            py::gil_scoped_release release;
            return GraphPersistence(g, parse_method(method), 1).diagrams();
        },
        py::arg("edges"), py::arg("vertices") = 0, py::arg("method") = "cubical",
        "H0 and H1 persistence diagrams of an edge-weighted graph ('cubical' or 'flag').");

    m.def(
        "merges",
        [](const std::vector<Edge3>& edges, std::size_t vertices) {
            std::vector<std::tuple<Vertex, Vertex, double>> out;
            const GraphPersistence gp(weighted(edges, vertices), Method::Cubical, 0);
            for (const auto& e : gp.merges())
                out.emplace_back(e.a, e.b, e.value);
            return out;
        },
        py::arg("edges"), py::arg("vertices") = 0, "Kruskal merge events (a, b, value).");

    m.def(
        "bottleneck",
        [](const std::vector<std::pair<double, double>>& p, const std::vector<std::pair<double, double>>& q) {
            return bottleneck(from_pairs(p), from_pairs(q));
        },
        py::arg("p"), py::arg("q"), "Bottleneck distance between two lists of (birth, death).");

    m.def("r_squared", [](const std::vector<double>& x, const std::vector<double>& y) { return r_squared(x, y); });
    m.def(
        "multivariate_r2",
        [](const std::vector<double>& target, const std::vector<std::vector<double>>& predictors) {
            return multivariate_r2(target, predictors).r2;
        },
        py::arg("target"), py::arg("predictors"));

    m.def(
        "correlation_graph",
        [](const std::vector<std::pair<std::string, std::vector<std::optional<double>>>>& series) {
            return edge_list(correlation_graph(table_from(series)));
        },
        py::arg("series"),
        "Edges (u, v, 1 - R^2) between (name, values) series; None marks a missing reading.");

    m.def(
        "cycle_vertices",
        [](const std::vector<std::pair<Vertex, Vertex>>& edges) {
            std::vector<OrientedEdge> rep;
            for (auto [a, b] : edges) rep.push_back({a, b});
            return cycle_vertices(rep);
        },
        py::arg("cycle"));

    m.def(
        "circle_experiment",
        [](std::size_t iterations, std::uint64_t seed, double noise_sigma, std::size_t threads) {
            CircleConfig cfg;
            cfg.iterations = iterations;
            cfg.seed = seed;
            cfg.noise_sigma = noise_sigma;
            cfg.validate();
            CircleSummary s;
            {
                py::gil_scoped_release release;
                s = run_circle(cfg, threads).summary;
            }
            py::dict d;
            d["iterations"] = s.iterations;
            d["mean_cubical"] = s.mean_cubical;
            d["mean_flag"] = s.mean_flag;
            d["cubical_wins"] = s.cubical_wins;
            d["ties"] = s.ties;
            d["win_fraction"] = s.win_fraction;
            return d;
        },
        py::arg("iterations") = 200, py::arg("seed") = 1, py::arg("noise_sigma") = 0.5, py::arg("threads") = 0);

    m.def(
        "multifit_experiment",
        [](std::size_t iterations, std::uint64_t seed, std::size_t threads) {
            MultiFitConfig cfg;
            cfg.iterations = iterations;
            cfg.seed = seed;
            cfg.validate();
            MultiFitSummary s;
            {
                py::gil_scoped_release release;
                s = run_multifit(cfg, threads).summary;
            }
            py::dict d;
            d["pearson_r"] = s.correlation.r;
            d["p_value"] = s.correlation.p_value;
            d["count_positive"] = s.count_positive;
            d["count_zero"] = s.count_zero;
            d["mean_increase_positive"] = s.mean_increase_positive;
            d["mean_increase_zero"] = s.mean_increase_zero;
            return d;
        },
        py::arg("iterations") = 20000, py::arg("seed") = 1, py::arg("threads") = 0);

    m.def(
        "weather_sweep",
        [](std::vector<double> weights, std::size_t iterations, std::size_t rows, std::size_t cols,
           std::size_t readings, std::uint64_t seed, std::size_t threads) {
            WeatherConfig cfg;
            cfg.sweep_weights = std::move(weights);
            cfg.iterations = iterations;
            cfg.rows = rows;
            cfg.cols = cols;
            cfg.readings = readings;
            cfg.seed = seed;
            cfg.validate();
            WeatherRun run;
            {
                py::gil_scoped_release release;
                run = accuracy_sweep(cfg, threads);
            }
            py::list out;
            for (const auto& row : run.accuracy)
                out.append(py::make_tuple(row.w, std::string(to_string(row.model)), row.accuracy()));
            return out;
        },
        py::arg("weights") = std::vector<double>{1, 4, 8, 12}, py::arg("iterations") = 200, py::arg("rows") = 8,
        py::arg("cols") = 8, py::arg("readings") = 50, py::arg("seed") = 1, py::arg("threads") = 0,
        "Detection accuracy rows (w, model, accuracy).");
}
