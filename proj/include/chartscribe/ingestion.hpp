#pragma once

// Chart bundle ingestion: metadata documents, CSV tables, SVG color scraping,
// bundle directories on disk and the remote chart API client.

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chartscribe/model.hpp"

namespace chartscribe::ingest {

/// Maps a JSON metadata document onto ChartMetadata.
///
/// Recognized fields (first match wins):
///   id            "id" | "publicId"                         required
///   chart_type    "type"                                    required
///   created_at    "created_at" | "createdAt"                required, ISO-8601
///   title         "title"
///   subtitle      "subtitle" | metadata.describe.intro
///   footnote      "footnote" | "notes" | metadata.annotate.notes
///   axis labels   "axes": {"independent": .., "dependent": ..}
///   sorted        "sorted": "asc" | "ascending" | "desc" | "descending" | "none"
///   source_note   "source" | metadata.describe["source-name"]
/// Unrecognized fields are ignored.
ChartMetadata parse_metadata(std::string_view doc);

/// Canonical metadata object, as written by serialize_metadata.
nlohmann::json metadata_to_json(const ChartMetadata& metadata);

/// Canonical metadata document; parse_metadata(serialize_metadata(m)) == m.
std::string serialize_metadata(const ChartMetadata& metadata);

/// RFC-4180 CSV with a header record. Column kinds are inferred in order
/// Numeric, Temporal, Categorical from the non-missing cells.
DataTable parse_data_table(std::string_view csv_text);

/// Writes the table back as CSV, quoting only where required.
std::string serialize_data_table(const DataTable& table);

/// Fill and stroke colors from presentation attributes and inline styles,
/// normalized to "#RRGGBB", de-duplicated, in document order.
std::vector<std::string> extract_svg_colors(std::string_view svg_text);

/// Normalizes one paint value. Returns nothing for "none", "transparent",
/// fully transparent colors, paint-server references and unknown values.
std::optional<std::string> normalize_color(std::string_view value);

inline constexpr std::string_view kMetadataFile = "metadata.json";
inline constexpr std::string_view kDataFile = "data.csv";
inline constexpr std::string_view kSvgFile = "chart.svg";

/// Reads metadata.json, data.csv and (optionally) chart.svg from `dir`.
ChartBundle load_bundle(const std::filesystem::path& dir);

/// Writes the bundle in canonical form; load_bundle(dir) round-trips it.
void write_bundle(const ChartBundle& bundle, const std::filesystem::path& dir);

/// Assembles and validates a bundle from the three raw documents.
ChartBundle assemble_bundle(std::string_view metadata_doc, std::string_view csv_text,
                            std::optional<std::string> svg_text);

struct RemoteConfig {
    std::string base_url;
    std::string token;
    std::chrono::milliseconds timeout{10'000};

    /// Reads CHARTSCRIBE_REMOTE_BASE and CHARTSCRIBE_API_TOKEN.
    static RemoteConfig from_environment();
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Network seam for fetch_chart. Implementations throw TimeoutExceeded or
/// UpstreamError for transport-level failures and return any HTTP status.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& url, const std::string& bearer_token,
                             std::chrono::milliseconds timeout) = 0;
};

/// cpp-httplib backed transport, one connection per request.
std::unique_ptr<HttpTransport> make_http_transport();

/// GET {base}/charts/{id}, {base}/charts/{id}/data and
/// {base}/charts/{id}/export/svg. A 404 on the SVG export means no SVG.
ChartBundle fetch_chart(std::string_view chart_id, const RemoteConfig& config, HttpTransport& transport);
ChartBundle fetch_chart(std::string_view chart_id, const RemoteConfig& config);

}  // namespace chartscribe::ingest
