#pragma once

// sRGB -> CIELAB conversion and nearest-name lookup over the CSS3 extended
// color keywords.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chartscribe::color {

struct Rgb8 {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
};

struct LabColor {
    double L = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// Strict "#RRGGBB" (either case). Throws InvalidHex otherwise.
Rgb8 parse_hex(std::string_view hex);

// Conversion stages, exposed so they can be checked one by one.
// Companding uses the IEC 61966-2-1 piecewise curve (2.4 exponent); XYZ is
// relative to D65 with Y of reference white = 1.
double srgb_channel_to_linear(double encoded);
std::array<double, 3> linear_rgb_to_xyz(const std::array<double, 3>& linear);
LabColor xyz_to_lab(const std::array<double, 3>& xyz);

LabColor srgb_to_lab(Rgb8 rgb);
LabColor srgb_to_lab(std::string_view hex);

/// Euclidean distance in Lab (CIE76).
double delta_e76(const LabColor& lhs, const LabColor& rhs);

struct NamedColorEntry {
    std::string name;
    std::string hex;
    LabColor lab;
};

using Palette = std::vector<NamedColorEntry>;

/// Parses "name,hex" CSV (header optional). Names are lowercased, hex is
/// normalized, and entries are sorted by name.
Palette load_palette_csv(std::string_view csv);

/// The 147 CSS3 extended color keywords, embedded at build time from
/// assets/css3_colors.csv.
const Palette& css3_palette();

/// Hex code for a CSS color keyword, if it is one.
std::optional<std::string> hex_for_name(std::string_view name);

struct ColorMatch {
    std::string name;
    double distance = 0.0;

    bool operator==(const ColorMatch&) const = default;
};

/// Palette entry with the smallest CIE76 distance; exact ties go to the
/// lexicographically smallest name.
ColorMatch nearest_color_name(std::string_view hex, const Palette& palette = css3_palette());
ColorMatch nearest_color_name(const LabColor& lab, const Palette& palette);

/// hex -> name for each distinct input color, in input order.
std::vector<std::pair<std::string, std::string>> name_chart_colors(const std::vector<std::string>& colors,
                                                                   const Palette& palette = css3_palette());

}  // namespace chartscribe::color
