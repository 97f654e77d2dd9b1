#include "chartscribe/ingestion.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "chartscribe/color.hpp"
#include "chartscribe/error.hpp"
#include "json.hpp"
#include "text_util.hpp"

namespace chartscribe::ingest {

using nlohmann::json;

namespace {

// ---- metadata --------------------------------------------------------------

const json* find_path(const json& doc, std::initializer_list<std::string_view> path) {
    const json* node = &doc;
    for (auto key : path) {
        if (!node->is_object()) return nullptr;
        const auto it = node->find(key);
        if (it == node->end()) return nullptr;
        node = &*it;
    }
    return node;
}

std::optional<std::string> text_field(const json& doc, std::initializer_list<std::initializer_list<std::string_view>> paths,
                                      std::string_view name) {
    for (const auto& path : paths) {
        const json* node = find_path(doc, path);
        if (!node || node->is_null()) continue;
        if (!node->is_string()) throw Error(ErrorCode::MalformedDocument, std::string{name} + " must be a string");
        return node->get<std::string>();
    }
    return std::nullopt;
}

std::optional<std::string> non_empty(std::optional<std::string> s) {
    if (s && detail::trim(*s).empty()) return std::nullopt;
    return s;
}

// ---- csv -------------------------------------------------------------------

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    bool record_has_content = false;

    const auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    const auto end_record = [&] {
        end_field();
        // Blank lines carry no record.
        if (record_has_content || record.size() > 1 || !record.front().empty()) records.push_back(std::move(record));
        record.clear();
        record_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started && field.empty()) {
                    in_quotes = true;
                    field_started = true;
                    record_has_content = true;
                } else {
                    field.push_back(c);
                }
                break;
            case ',':
                end_field();
                record_has_content = true;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                end_record();
                break;
            case '\n': end_record(); break;
            default:
                field.push_back(c);
                field_started = true;
                record_has_content = true;
        }
    }
    if (in_quotes) throw Error(ErrorCode::MalformedDocument, "unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

std::optional<double> parse_number(std::string_view text) {
    text = detail::trim(text);
    if (text.empty()) return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
    // from_chars accepts "inf"/"nan" spellings; isfinite rejects those. Hex is not enabled.
    return v;
}

bool needs_quotes(std::string_view s) {
    if (s.empty()) return false;
    if (s.find_first_of(",\"\r\n") != std::string_view::npos) return true;
    return detail::trim(s).size() != s.size();
}

std::string quote(std::string_view s) {
    if (!needs_quotes(s)) return std::string{s};
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// ---- svg -------------------------------------------------------------------

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string to_hex(int r, int g, int b) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X", r, g, b);
    return buf;
}

std::optional<std::string> parse_hash_color(std::string_view v) {
    const auto digits = v.substr(1);
    for (char c : digits) {
        if (hex_value(c) < 0) return std::nullopt;
    }
    const auto at = [&](std::size_t i) { return hex_value(digits[i]); };
    switch (digits.size()) {
        case 3: return to_hex(at(0) * 17, at(1) * 17, at(2) * 17);
        case 4:
            if (at(3) == 0) return std::nullopt;
            return to_hex(at(0) * 17, at(1) * 17, at(2) * 17);
        case 6: return to_hex(at(0) * 16 + at(1), at(2) * 16 + at(3), at(4) * 16 + at(5));
        case 8:
            if (at(6) == 0 && at(7) == 0) return std::nullopt;
            return to_hex(at(0) * 16 + at(1), at(2) * 16 + at(3), at(4) * 16 + at(5));
        default: return std::nullopt;
    }
}

std::optional<std::string> parse_functional_color(std::string_view v) {
    static const std::regex re(R"(^rgba?\(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*,\s*([^,\s\)]+)\s*(?:,\s*([^\s\)]+)\s*)?\)$)",
                               std::regex::icase);
    std::cmatch m;
    if (!std::regex_match(v.data(), v.data() + v.size(), m, re)) return std::nullopt;
    int channels[3];
    for (int i = 0; i < 3; ++i) {
        std::string part = m[i + 1].str();
        const bool percent = !part.empty() && part.back() == '%';
        if (percent) part.pop_back();
        const auto num = parse_number(part);
        if (!num) return std::nullopt;
        const double scaled = percent ? *num * 255.0 / 100.0 : *num;
        channels[i] = static_cast<int>(std::lround(std::clamp(scaled, 0.0, 255.0)));
    }
    if (m[4].matched) {
        std::string alpha = m[4].str();
        const bool percent = !alpha.empty() && alpha.back() == '%';
        if (percent) alpha.pop_back();
        const auto a = parse_number(alpha);
        if (!a) return std::nullopt;
        if (*a <= 0.0) return std::nullopt;
    }
    return to_hex(channels[0], channels[1], channels[2]);
}

bool is_zero_opacity(const std::optional<std::string>& value) {
    if (!value) return false;
    const auto n = parse_number(*value);
    return n && *n <= 0.0;
}

struct PaintDecl {
    std::string property;
    std::string value;
};

std::vector<PaintDecl> style_declarations(std::string_view style) {
    std::vector<PaintDecl> decls;
    std::size_t pos = 0;
    while (pos <= style.size()) {
        auto end = style.find(';', pos);
        if (end == std::string_view::npos) end = style.size();
        const auto decl = style.substr(pos, end - pos);
        pos = end + 1;
        const auto colon = decl.find(':');
        if (colon == std::string_view::npos) continue;
        auto value = detail::trim(decl.substr(colon + 1));
        if (const auto bang = value.find("!important"); bang != std::string_view::npos) value = detail::trim(value.substr(0, bang));
        decls.push_back({detail::to_lower(detail::trim(decl.substr(0, colon))), std::string{value}});
    }
    return decls;
}

void collect_colors(const boost::property_tree::ptree& node, std::vector<std::string>& out, std::set<std::string>& seen) {
    for (const auto& [name, child] : node) {
        if (name == "<xmlattr>" || name == "<xmlcomment>") continue;

        std::vector<PaintDecl> paints;
        std::optional<std::string> fill_opacity;
        std::optional<std::string> stroke_opacity;
        std::optional<std::string> opacity;
        if (const auto attrs = child.get_child_optional("<xmlattr>")) {
            for (const auto& [attr, value] : *attrs) {
                const auto key = detail::to_lower(attr);
                const auto text = value.data();
                if (key == "fill" || key == "stroke") {
                    paints.push_back({key, text});
                } else if (key == "fill-opacity") {
                    fill_opacity = text;
                } else if (key == "stroke-opacity") {
                    stroke_opacity = text;
                } else if (key == "opacity") {
                    opacity = text;
                } else if (key == "style") {
                    for (auto& decl : style_declarations(text)) {
                        if (decl.property == "fill" || decl.property == "stroke") {
                            paints.push_back(std::move(decl));
                        } else if (decl.property == "fill-opacity") {
                            fill_opacity = decl.value;
                        } else if (decl.property == "stroke-opacity") {
                            stroke_opacity = decl.value;
                        } else if (decl.property == "opacity") {
                            opacity = decl.value;
                        }
                    }
                }
            }
        }
        if (!is_zero_opacity(opacity)) {
            for (const auto& paint : paints) {
                if (paint.property == "fill" && is_zero_opacity(fill_opacity)) continue;
                if (paint.property == "stroke" && is_zero_opacity(stroke_opacity)) continue;
                if (auto hex = normalize_color(paint.value); hex && seen.insert(*hex).second) out.push_back(*hex);
            }
        }
        collect_colors(child, out, seen);
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, path.filename().string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::UpstreamError, "cannot write " + path.string());
    out << content;
}

}  // namespace

ChartMetadata parse_metadata(std::string_view doc) {
    json j;
    try {
        j = json::parse(doc);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::MalformedDocument, "metadata must be an object");

    ChartMetadata m;
    const auto id = text_field(j, {{"id"}, {"publicId"}}, "id");
    if (!id || detail::trim(*id).empty()) throw Error(ErrorCode::MissingField, "id");
    m.id = *id;

    const auto type = text_field(j, {{"type"}}, "type");
    if (!type) throw Error(ErrorCode::MissingField, "type");
    const auto parsed_type = parse_chart_type(*type);
    if (!parsed_type) throw Error(ErrorCode::UnknownChartType, *type);
    m.chart_type = *parsed_type;

    const auto created = text_field(j, {{"created_at"}, {"createdAt"}}, "created_at");
    if (!created) throw Error(ErrorCode::MissingField, "created_at");
    const auto ts = parse_timestamp(*created);
    if (!ts) throw Error(ErrorCode::MalformedDocument, "created_at is not an ISO-8601 instant: " + *created);
    m.created_at = *ts;

    m.title = text_field(j, {{"title"}}, "title").value_or("");
    m.subtitle = non_empty(text_field(j, {{"subtitle"}, {"metadata", "describe", "intro"}}, "subtitle"));
    m.footnote = non_empty(text_field(j, {{"footnote"}, {"notes"}, {"metadata", "annotate", "notes"}}, "footnote"));
    m.independent_axis_label = non_empty(text_field(j, {{"axes", "independent"}}, "axes.independent"));
    m.dependent_axis_label = non_empty(text_field(j, {{"axes", "dependent"}}, "axes.dependent"));
    m.source_note = non_empty(text_field(j, {{"source"}, {"metadata", "describe", "source-name"}}, "source"));

    if (const auto sorted = text_field(j, {{"sorted"}}, "sorted")) {
        const auto key = detail::to_lower(detail::trim(*sorted));
        if (key == "asc" || key == "ascending") {
            m.declared_sorted = SortOrder::Ascending;
        } else if (key == "desc" || key == "descending") {
            m.declared_sorted = SortOrder::Descending;
        } else if (!key.empty() && key != "none") {
            throw Error(ErrorCode::MalformedDocument, "unknown sort order: " + *sorted);
        }
    }
    return m;
}

nlohmann::json metadata_to_json(const ChartMetadata& m) {
    json j;
    j["id"] = m.id;
    j["title"] = m.title;
    j["type"] = to_string(m.chart_type);
    j["created_at"] = format_timestamp(m.created_at);
    if (m.subtitle) j["subtitle"] = *m.subtitle;
    if (m.footnote) j["footnote"] = *m.footnote;
    if (m.independent_axis_label || m.dependent_axis_label) {
        json axes = json::object();
        if (m.independent_axis_label) axes["independent"] = *m.independent_axis_label;
        if (m.dependent_axis_label) axes["dependent"] = *m.dependent_axis_label;
        j["axes"] = axes;
    }
    if (m.declared_sorted) j["sorted"] = *m.declared_sorted == SortOrder::Ascending ? "asc" : "desc";
    if (m.source_note) j["source"] = *m.source_note;
    return j;
}

std::string serialize_metadata(const ChartMetadata& m) {
    return metadata_to_json(m).dump(2) + "\n";
}

DataTable parse_data_table(std::string_view csv_text) {
    if (csv_text.substr(0, 3) == "\xEF\xBB\xBF") csv_text.remove_prefix(3);
    if (detail::trim(csv_text).empty()) throw Error(ErrorCode::EmptyInput, "data.csv");

    auto records = split_csv(csv_text);
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "data.csv");

    DataTable table;
    std::set<std::string> names;
    for (auto& raw : records.front()) {
        std::string name{detail::trim(raw)};
        if (!names.insert(name).second) throw Error(ErrorCode::DuplicateColumn, name);
        table.columns.push_back({std::move(name), ColumnKind::Categorical});
    }
    const std::size_t width = table.columns.size();
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != width) throw Error(ErrorCode::RaggedRow, {}, r - 1);
    }

    table.rows.assign(records.size() - 1, std::vector<Cell>(width));
    for (std::size_t c = 0; c < width; ++c) {
        bool numeric = true;
        bool temporal = true;
        bool any_present = false;
        for (std::size_t r = 1; r < records.size(); ++r) {
            const auto cell = detail::trim(records[r][c]);
            if (cell.empty()) continue;
            any_present = true;
            if (numeric && !parse_number(cell)) numeric = false;
            if (temporal && !parse_temporal_days(cell)) temporal = false;
        }
        ColumnKind kind = ColumnKind::Categorical;
        if (any_present && numeric) {
            kind = ColumnKind::Numeric;
        } else if (any_present && temporal) {
            kind = ColumnKind::Temporal;
        }
        table.columns[c].kind = kind;

        for (std::size_t r = 1; r < records.size(); ++r) {
            auto& raw = records[r][c];
            const auto trimmed = detail::trim(raw);
            Cell& cell = table.rows[r - 1][c];
            switch (kind) {
                case ColumnKind::Numeric:
                    if (!trimmed.empty()) cell = *parse_number(trimmed);
                    break;
                case ColumnKind::Temporal:
                    if (!trimmed.empty()) cell = std::string{trimmed};
                    break;
                case ColumnKind::Categorical: cell = std::move(raw); break;
            }
        }
    }
    return table;
}

std::string serialize_data_table(const DataTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out.push_back(',');
        out += quote(table.columns[c].name);
    }
    out.push_back('\n');
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out.push_back(',');
            out += quote(cell_text(row[c]));
        }
        // A single empty categorical cell would otherwise read back as a blank line.
        if (row.size() == 1 && cell_text(row[0]).empty()) out += "\"\"";
        out.push_back('\n');
    }
    return out;
}

std::optional<std::string> normalize_color(std::string_view value) {
    const auto v = detail::trim(value);
    if (v.empty()) return std::nullopt;
    if (v.front() == '#') return parse_hash_color(v);
    const auto lower = detail::to_lower(v);
    if (lower.rfind("rgb", 0) == 0) return parse_functional_color(lower);
    // none, transparent, currentcolor, inherit and url(#...) fall through here.
    return color::hex_for_name(lower);
}

std::vector<std::string> extract_svg_colors(std::string_view svg_text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string{svg_text}};
        pt::read_xml(in, tree, pt::xml_parser::no_concat_text);
    } catch (const pt::xml_parser_error& e) {
        throw Error(ErrorCode::MalformedMarkup, e.what());
    }
    if (tree.empty()) throw Error(ErrorCode::MalformedMarkup, "no root element");
    std::vector<std::string> colors;
    std::set<std::string> seen;
    collect_colors(tree, colors, seen);
    return colors;
}

ChartBundle assemble_bundle(std::string_view metadata_doc, std::string_view csv_text,
                            std::optional<std::string> svg_text) {
    ChartBundle bundle;
    bundle.metadata = parse_metadata(metadata_doc);
    bundle.table = parse_data_table(csv_text);
    if (svg_text) bundle.extracted_colors = extract_svg_colors(*svg_text);
    bundle.svg_text = std::move(svg_text);
    return validate_bundle(std::move(bundle));
}

ChartBundle load_bundle(const std::filesystem::path& dir) {
    const auto metadata_path = dir / kMetadataFile;
    const auto data_path = dir / kDataFile;
    if (!std::filesystem::is_regular_file(metadata_path)) throw Error(ErrorCode::FileNotFound, std::string{kMetadataFile});
    if (!std::filesystem::is_regular_file(data_path)) throw Error(ErrorCode::FileNotFound, std::string{kDataFile});
    std::optional<std::string> svg;
    if (const auto svg_path = dir / kSvgFile; std::filesystem::is_regular_file(svg_path)) svg = read_file(svg_path);
    return assemble_bundle(read_file(metadata_path), read_file(data_path), std::move(svg));
}

void write_bundle(const ChartBundle& bundle, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir / kMetadataFile, serialize_metadata(bundle.metadata));
    write_file(dir / kDataFile, serialize_data_table(bundle.table));
    const auto svg_path = dir / kSvgFile;
    if (bundle.svg_text) {
        write_file(svg_path, *bundle.svg_text);
    } else {
        std::filesystem::remove(svg_path);
    }
}

RemoteConfig RemoteConfig::from_environment() {
    RemoteConfig config;
    if (const char* base = std::getenv("CHARTSCRIBE_REMOTE_BASE")) config.base_url = base;
    if (const char* token = std::getenv("CHARTSCRIBE_API_TOKEN")) config.token = token;
    return config;
}

ChartBundle fetch_chart(std::string_view chart_id, const RemoteConfig& config, HttpTransport& transport) {
    if (config.token.empty()) throw Error(ErrorCode::AuthFailed, "no API token configured");
    if (config.base_url.empty()) throw Error(ErrorCode::UpstreamError, "no remote base URL configured");
    std::string base = config.base_url;
    while (!base.empty() && base.back() == '/') base.pop_back();
    const std::string chart_url = base + "/charts/" + std::string{chart_id};

    const auto get = [&](const std::string& url, bool optional) -> std::optional<std::string> {
        const auto res = transport.get(url, config.token, config.timeout);
        if (res.status >= 200 && res.status < 300) return res.body;
        if (res.status == 401 || res.status == 403) throw Error(ErrorCode::AuthFailed, url);
        if (res.status == 404) {
            if (optional) return std::nullopt;
            throw Error(ErrorCode::NotFound, std::string{chart_id});
        }
        throw Error(ErrorCode::UpstreamError, "HTTP " + std::to_string(res.status) + " from " + url);
    };

    const auto metadata = get(chart_url, false);
    const auto data = get(chart_url + "/data", false);
    auto svg = get(chart_url + "/export/svg", true);
    return assemble_bundle(*metadata, *data, std::move(svg));
}

ChartBundle fetch_chart(std::string_view chart_id, const RemoteConfig& config) {
    auto transport = make_http_transport();
    return fetch_chart(chart_id, config, *transport);
}

}  // namespace chartscribe::ingest
