#include "dch/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dch/csv.hpp"
#include "dch/error.hpp"

namespace dch {

std::string json_quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
    return out;
}

void JsonWriter::newline() {
    out_.push_back('\n');
    out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (stack_.empty()) return;
    Frame& f = stack_.back();
    if (!f.empty) out_.push_back(',');
    if (f.inline_items) {
        if (!f.empty) out_.push_back(' ');
    } else {
        newline();
    }
    f.empty = false;
}

JsonWriter& JsonWriter::begin_object() {
    before_value();
    out_.push_back('{');
    stack_.push_back({false, false});
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    const bool empty = stack_.back().empty;
    stack_.pop_back();
    if (!empty) newline();
    out_.push_back('}');
    return *this;
}

JsonWriter& JsonWriter::begin_array(bool inline_items) {
    before_value();
    out_.push_back('[');
    stack_.push_back({true, inline_items});
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    const Frame f = stack_.back();
    stack_.pop_back();
    if (!f.empty && !f.inline_items) newline();
    out_.push_back(']');
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
    before_value();
    out_ += json_quote(name);
    out_ += ": ";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    before_value();
    if (!std::isfinite(v)) {
        out_ += json_quote(format_double(v));
    } else if (v == 0.0) {
        out_ += "0";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out_ += buf;
    }
    return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
    before_value();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
    before_value();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    before_value();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
    before_value();
    out_ += json_quote(v);
    return *this;
}

JsonWriter& JsonWriter::null() {
    before_value();
    out_ += "null";
    return *this;
}

std::string diagram_json(const PersistenceDiagram& diagram, std::optional<std::string_view> method,
                         std::optional<std::string_view> manifest) {
    JsonWriter w;
    w.begin_object();
    w.key("dimension").value(diagram.dimension);
    if (method) w.key("method").value(*method);
    if (manifest) w.key("manifest").value(*manifest);
    w.key("pairs").begin_array();
    for (const auto& p : diagram.pairs) {
        w.begin_object();
        w.key("birth").value(p.birth);
        w.key("death").value(p.death);
        if (!p.cycle.empty()) {
            w.key("cycle").begin_array(true);
            for (const auto& e : p.cycle) {
                w.begin_array(true);
                w.value(e.from).value(e.to);
                w.end_array();
            }
            w.end_array();
        }
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

namespace {

double json_number(const nlohmann::json& v, const char* what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return kInfinity;
        if (s == "-inf") return -kInfinity;
    }
    throw ValidationError(std::string("diagram JSON: bad ") + what);
}

}  // namespace

DiagramFile parse_diagram_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("diagram JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array())
        throw ValidationError("diagram JSON: expected an object with a 'pairs' array");
    DiagramFile out;
    out.diagram.dimension = doc.value("dimension", 0);
    if (doc.contains("method") && doc["method"].is_string()) out.method = doc["method"].get<std::string>();
    for (const auto& item : doc["pairs"]) {
        if (!item.is_object() || !item.contains("birth") || !item.contains("death"))
            throw ValidationError("diagram JSON: every pair needs birth and death");
        PersistencePair p;
        p.birth = json_number(item["birth"], "birth");
        p.death = json_number(item["death"], "death");
        if (p.birth > p.death) throw ValidationError("diagram JSON: birth after death");
        if (item.contains("cycle")) {
            for (const auto& e : item["cycle"]) {
                if (!e.is_array() || e.size() != 2) throw ValidationError("diagram JSON: bad cycle edge");
                p.cycle.push_back({e[0].get<Vertex>(), e[1].get<Vertex>()});
            }
        }
        out.diagram.pairs.push_back(std::move(p));
    }
    return out;
}

DiagramFile read_diagram_json(const std::filesystem::path& path) {
    try {
        return parse_diagram_json(read_text_file(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string barcode_svg(const PersistenceDiagram& diagram, std::string_view title) {
    auto pairs = diagram.pairs;
    std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    double xmax = 0.0;
    for (const auto& p : pairs) {
        xmax = std::max(xmax, p.birth);
        if (!p.is_infinite()) xmax = std::max(xmax, p.death);
    }
    if (xmax <= 0.0) xmax = 1.0;
    const double left = 40.0, right = 20.0, top = 30.0, row = 14.0, plot_width = 600.0;
    const double height = top + row * static_cast<double>(std::max<std::size_t>(pairs.size(), 1)) + 40.0;
    const double width = left + plot_width + right;
    auto x_of = [&](double v) { return left + plot_width * v / (xmax * 1.05); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };

    std::ostringstream svg;
    svg << "<!-- dch " << DCH_VERSION << " barcode -->\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::string heading = "H" + std::to_string(diagram.dimension) + " barcode";
    if (!title.empty()) heading += " (" + std::string(title) + ")";
    svg << "  <text x=\"" << num(left) << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">" << heading
        << "</text>\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        const double y = top + row * static_cast<double>(i);
        const double x0 = x_of(p.birth);
        const double x1 = p.is_infinite() ? left + plot_width : x_of(p.death);
        svg << "  <rect x=\"" << num(x0) << "\" y=\"" << num(y) << "\" width=\"" << num(std::max(x1 - x0, 0.5))
            << "\" height=\"" << num(row - 4.0) << "\" fill=\"" << (p.is_infinite() ? "#b03030" : "#3060b0")
            << "\"/>\n";
        if (p.is_infinite())
            svg << "  <polygon points=\"" << num(x1) << ',' << num(y - 2.0) << ' ' << num(x1 + 8.0) << ','
                << num(y + (row - 4.0) / 2.0) << ' ' << num(x1) << ',' << num(y + row - 2.0)
                << "\" fill=\"#b03030\"/>\n";
    }
    const double axis_y = top + row * static_cast<double>(std::max<std::size_t>(pairs.size(), 1)) + 6.0;
    svg << "  <line x1=\"" << num(left) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(left + plot_width)
        << "\" y2=\"" << num(axis_y) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = xmax * t / 4.0;
        svg << "  <text x=\"" << num(x_of(v)) << "\" y=\"" << num(axis_y + 16.0)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << num(v) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace dch
