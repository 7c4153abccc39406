#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dch/persistence.hpp"

namespace dch {

/// Streaming JSON emitter. Finite numbers use 17 significant digits; non-finite
/// values become the strings "inf" / "-inf" / "nan".
/// Output is indented two spaces per level; arrays of scalars stay on one line.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(bool inline_items = false);
    JsonWriter& end_array();
    JsonWriter& key(std::string_view name);
    JsonWriter& value(double v);
    JsonWriter& value(std::int64_t v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
    JsonWriter& value(unsigned v) { return value(static_cast<std::uint64_t>(v)); }
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view v);
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }
    JsonWriter& null();

    /// Finished document with a trailing newline.
    std::string str() const { return out_ + "\n"; }

private:
    struct Frame {
        bool array;
        bool inline_items;
        bool empty = true;
    };
    void before_value();
    void newline();

    std::string out_;
    std::vector<Frame> stack_;
    bool after_key_ = false;
};

std::string json_quote(std::string_view text);

struct DiagramFile {
    PersistenceDiagram diagram;
    std::optional<std::string> method;
};

/// `{"dimension": d, "method": m?, "pairs": [{"birth": b, "death": d|"inf", "cycle": [[u,v],...]?}]}`
std::string diagram_json(const PersistenceDiagram& diagram, std::optional<std::string_view> method = std::nullopt,
                         std::optional<std::string_view> manifest = std::nullopt);
DiagramFile parse_diagram_json(std::string_view text);
DiagramFile read_diagram_json(const std::filesystem::path& path);

/// One horizontal bar per pair sorted by (birth, death); infinite bars run to
/// the right edge and end in an arrow. The first line is a version comment.
std::string barcode_svg(const PersistenceDiagram& diagram, std::string_view title = {});

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

/// 64-bit FNV-1a digest rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace dch
