#include "chartscribe/color.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "chartscribe/error.hpp"
#include "chartscribe/kernels.hpp"
#include "text_util.hpp"

namespace chartscribe::embedded {
extern const std::string_view kCss3PaletteCsv;
}

namespace chartscribe::color {

namespace {

// sRGB primaries to XYZ, D65 (Lindbloom).
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// Reference white is the image of RGB (1,1,1) so white lands exactly on L=100, a=b=0.
constexpr double kWhite[3] = {
    kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2],
    kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2],
    kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2],
};

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double lab_f(double t) {
    return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Rgb8 parse_hex(std::string_view hex) {
    if (hex.size() != 7 || hex[0] != '#') throw Error(ErrorCode::InvalidHex, std::string{hex});
    int v[6];
    for (int i = 0; i < 6; ++i) {
        v[i] = hex_digit(hex[static_cast<std::size_t>(i) + 1]);
        if (v[i] < 0) throw Error(ErrorCode::InvalidHex, std::string{hex});
    }
    return Rgb8{static_cast<std::uint8_t>(v[0] * 16 + v[1]), static_cast<std::uint8_t>(v[2] * 16 + v[3]),
                static_cast<std::uint8_t>(v[4] * 16 + v[5])};
}

double srgb_channel_to_linear(double encoded) {
    return encoded <= 0.04045 ? encoded / 12.92 : std::pow((encoded + 0.055) / 1.055, 2.4);
}

std::array<double, 3> linear_rgb_to_xyz(const std::array<double, 3>& linear) {
    std::array<double, 3> xyz{};
    for (int i = 0; i < 3; ++i) {
        xyz[i] = kRgbToXyz[i][0] * linear[0] + kRgbToXyz[i][1] * linear[1] + kRgbToXyz[i][2] * linear[2];
    }
    return xyz;
}

LabColor xyz_to_lab(const std::array<double, 3>& xyz) {
    const double fx = lab_f(xyz[0] / kWhite[0]);
    const double fy = lab_f(xyz[1] / kWhite[1]);
    const double fz = lab_f(xyz[2] / kWhite[2]);
    return LabColor{116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabColor srgb_to_lab(Rgb8 rgb) {
    const std::array<double, 3> linear{srgb_channel_to_linear(rgb.r / 255.0), srgb_channel_to_linear(rgb.g / 255.0),
                                       srgb_channel_to_linear(rgb.b / 255.0)};
    return xyz_to_lab(linear_rgb_to_xyz(linear));
}

LabColor srgb_to_lab(std::string_view hex) {
    return srgb_to_lab(parse_hex(hex));
}

double delta_e76(const LabColor& lhs, const LabColor& rhs) {
    const double dl = lhs.L - rhs.L;
    const double da = lhs.a - rhs.a;
    const double db = lhs.b - rhs.b;
    return std::sqrt(dl * dl + da * da + db * db);
}

Palette load_palette_csv(std::string_view csv) {
    Palette palette;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto end = csv.find('\n', pos);
        if (end == std::string_view::npos) end = csv.size();
        const auto line = detail::trim(csv.substr(pos, end - pos));
        pos = end + 1;
        if (line.empty() || line == "name,hex") continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) throw Error(ErrorCode::MalformedDocument, std::string{line});
        auto hex = detail::to_upper(detail::trim(line.substr(comma + 1)));
        const auto rgb = parse_hex(hex);
        palette.push_back({detail::to_lower(detail::trim(line.substr(0, comma))), std::move(hex), srgb_to_lab(rgb)});
    }
    std::sort(palette.begin(), palette.end(), [](const auto& l, const auto& r) { return l.name < r.name; });
    return palette;
}

const Palette& css3_palette() {
    static const Palette palette = load_palette_csv(embedded::kCss3PaletteCsv);
    return palette;
}

std::optional<std::string> hex_for_name(std::string_view name) {
    const auto key = detail::to_lower(detail::trim(name));
    const auto& palette = css3_palette();
    const auto it = std::lower_bound(palette.begin(), palette.end(), key,
                                     [](const NamedColorEntry& e, const std::string& k) { return e.name < k; });
    if (it == palette.end() || it->name != key) return std::nullopt;
    return it->hex;
}

ColorMatch nearest_color_name(const LabColor& lab, const Palette& palette) {
    if (palette.empty()) throw Error(ErrorCode::ValidationError, "empty palette");
    const NamedColorEntry* best = nullptr;
    double best_distance = 0.0;
    for (const auto& entry : palette) {
        const double d = delta_e76(lab, entry.lab);
        if (!best || d < best_distance || (d == best_distance && entry.name < best->name)) {
            best = &entry;
            best_distance = d;
        }
    }
    return ColorMatch{best->name, best_distance};
}

ColorMatch nearest_color_name(std::string_view hex, const Palette& palette) {
    return nearest_color_name(srgb_to_lab(hex), palette);
}

std::vector<std::pair<std::string, std::string>> name_chart_colors(const std::vector<std::string>& colors,
                                                                   const Palette& palette) {
    std::vector<std::string> distinct;
    std::vector<LabColor> queries;
    for (auto hex : colors) {
        std::transform(hex.begin(), hex.end(), hex.begin(), [](unsigned char c) { return std::toupper(c); });
        if (std::find(distinct.begin(), distinct.end(), hex) != distinct.end()) continue;
        queries.push_back(srgb_to_lab(hex));
        distinct.push_back(hex);
    }
    const auto matches = kernels::nearest_colors(queries, palette);
    std::vector<std::pair<std::string, std::string>> named;
    named.reserve(distinct.size());
    for (std::size_t i = 0; i < distinct.size(); ++i) named.emplace_back(distinct[i], matches[i].name);
    return named;
}

}  // namespace chartscribe::color
