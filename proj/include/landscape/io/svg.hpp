#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/scans.hpp"

namespace landscape::io {

struct RenderSpec {
    /// "viridis" or "grayscale".
    std::string colormap = "viridis";
    bool contours = false;
    bool overlays = true;
    int width = 640;
    int height = 520;

    void validate() const;
};

/// sRGB colour for a normalized value in [0, 1].
std::array<int, 3> colormap_rgb(const std::string& name, double u);

/// A polyline in scan coordinates (t1, t2).
struct Overlay {
    std::vector<std::pair<double, double>> points;
    std::string label;
};

/// `metadata` is embedded verbatim (as JSON text) in the SVG metadata element.
std::string heatmap_svg(const Scan2DResult& scan, const RenderSpec& spec, const std::vector<Overlay>& overlays,
                        const Json& metadata = Json::object());
void render_heatmap_svg(const Scan2DResult& scan, const RenderSpec& spec, const std::vector<Overlay>& overlays,
                        const std::filesystem::path& path, const Json& metadata = Json::object());

std::string line_svg(const std::vector<Scan1DResult>& series, const std::vector<std::string>& labels,
                     const RenderSpec& spec = {}, const Json& metadata = Json::object());
void render_line_svg(const std::vector<Scan1DResult>& series, const std::vector<std::string>& labels,
                     const std::filesystem::path& path, const RenderSpec& spec = {},
                     const Json& metadata = Json::object());

std::string xml_escape(const std::string& text);

} // namespace landscape::io
