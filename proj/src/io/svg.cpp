#include "landscape/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace landscape::io {

namespace {

constexpr std::array<std::array<int, 3>, 9> kViridis{{{68, 1, 84},
                                                      {71, 45, 123},
                                                      {59, 82, 139},
                                                      {44, 114, 142},
                                                      {33, 145, 140},
                                                      {40, 174, 128},
                                                      {94, 201, 98},
                                                      {173, 220, 48},
                                                      {253, 231, 37}}};

constexpr std::array<const char*, 8> kSeriesColors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                   "#9467bd", "#8c564b", "#e377c2", "#17becf"};

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 110;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 60;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string hex(const std::array<int, 3>& c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void open_svg(std::ostringstream& os, const RenderSpec& spec, const Json& metadata) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
       << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
    if (!metadata.empty()) os << "<metadata>" << xml_escape(metadata.dump()) << "</metadata>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
       << "\" fill=\"#ffffff\"/>\n";
}

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return lo > hi; }
};

// Marching squares over the cell-centre lattice; returns one path per level.
std::vector<std::string> contour_paths(const Scan2DResult& scan, double vmin, double vmax, int levels,
                                       double x0, double y0, double cw, double ch) {
    std::vector<std::string> paths;
    const std::size_t nx = scan.xs.size(), ny = scan.ys.size();
    if (nx < 2 || ny < 2 || !(vmax > vmin)) return paths;
    auto cx = [&](double i) { return x0 + (i + 0.5) * cw; };
    auto cy = [&](double j) { return y0 + (static_cast<double>(ny) - 1.0 - j + 0.5) * ch; };
    for (int l = 1; l <= levels; ++l) {
        const double level = vmin + (vmax - vmin) * l / (levels + 1);
        std::ostringstream d;
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            for (std::size_t j = 0; j + 1 < ny; ++j) {
                // corners counter-clockwise: (i,j) (i+1,j) (i+1,j+1) (i,j+1)
                const std::array<double, 4> v{scan.value(i, j), scan.value(i + 1, j), scan.value(i + 1, j + 1),
                                              scan.value(i, j + 1)};
                const std::array<std::pair<double, double>, 4> c{
                    std::pair{double(i), double(j)}, std::pair{double(i + 1), double(j)},
                    std::pair{double(i + 1), double(j + 1)}, std::pair{double(i), double(j + 1)}};
                std::vector<std::pair<double, double>> hits;
                for (int e = 0; e < 4; ++e) {
                    const double a = v[e], b = v[(e + 1) % 4];
                    if (!std::isfinite(a) || !std::isfinite(b)) continue;
                    if ((a < level) == (b < level)) continue;
                    const double s = (level - a) / (b - a);
                    const auto& p = c[e];
                    const auto& q = c[(e + 1) % 4];
                    hits.emplace_back(p.first + s * (q.first - p.first), p.second + s * (q.second - p.second));
                }
                for (std::size_t h = 0; h + 1 < hits.size(); h += 2) {
                    d << 'M' << px(cx(hits[h].first)) << ',' << px(cy(hits[h].second)) << 'L'
                      << px(cx(hits[h + 1].first)) << ',' << px(cy(hits[h + 1].second));
                }
            }
        }
        if (!d.str().empty()) paths.push_back(d.str());
    }
    return paths;
}

} // namespace

void RenderSpec::validate() const {
    if (width <= kMarginLeft + kMarginRight || height <= kMarginTop + kMarginBottom)
        throw UsageError("render: width/height too small");
    if (colormap != "viridis" && colormap != "grayscale") throw UsageError("render: unknown colormap " + colormap);
}

std::array<int, 3> colormap_rgb(const std::string& name, double u) {
    if (!std::isfinite(u)) return {128, 128, 128};
    u = std::clamp(u, 0.0, 1.0);
    if (name == "grayscale") {
        int g = static_cast<int>(std::lround(20.0 + 235.0 * u));
        return {g, g, g};
    }
    if (name != "viridis") throw UsageError("render: unknown colormap " + name);
    const double s = u * static_cast<double>(kViridis.size() - 1);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(s), kViridis.size() - 2);
    const double f = s - static_cast<double>(k);
    std::array<int, 3> out{};
    for (int c = 0; c < 3; ++c)
        out[c] = static_cast<int>(std::lround(kViridis[k][c] + f * (kViridis[k + 1][c] - kViridis[k][c])));
    return out;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string heatmap_svg(const Scan2DResult& scan, const RenderSpec& spec, const std::vector<Overlay>& overlays,
                        const Json& metadata) {
    spec.validate();
    const std::size_t nx = scan.xs.size(), ny = scan.ys.size();
    if (nx == 0 || ny == 0 || scan.values.size() != nx * ny) throw UsageError("render: malformed scan grid");

    Extent ext;
    for (double v : scan.values) ext.add(v);
    const double vmin = ext.empty() ? 0.0 : ext.lo;
    const double vmax = ext.empty() ? 0.0 : ext.hi;
    auto norm = [&](double v) { return vmax > vmin ? (v - vmin) / (vmax - vmin) : 0.0; };

    const double pw = spec.width - kMarginLeft - kMarginRight;
    const double ph = spec.height - kMarginTop - kMarginBottom;
    const double x0 = kMarginLeft, y0 = kMarginTop;
    const double cw = pw / static_cast<double>(nx), ch = ph / static_cast<double>(ny);

    std::ostringstream os;
    open_svg(os, spec, metadata);
    os << "<defs><clipPath id=\"plot\"><rect x=\"" << px(x0) << "\" y=\"" << px(y0) << "\" width=\"" << px(pw)
       << "\" height=\"" << px(ph) << "\"/></clipPath></defs>\n";

    os << "<g class=\"cells\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const double v = scan.value(i, j);
            const auto rgb = std::isfinite(v) ? colormap_rgb(spec.colormap, norm(v)) : std::array<int, 3>{128, 128, 128};
            os << "<rect x=\"" << px(x0 + static_cast<double>(i) * cw) << "\" y=\""
               << px(y0 + static_cast<double>(ny - 1 - j) * ch) << "\" width=\"" << px(cw) << "\" height=\""
               << px(ch) << "\" fill=\"" << hex(rgb) << "\"/>\n";
        }
    }
    os << "</g>\n";

    if (spec.contours) {
        os << "<g class=\"contours\" fill=\"none\" stroke=\"#ffffff\" stroke-opacity=\"0.6\" stroke-width=\"0.8\">\n";
        for (const auto& d : contour_paths(scan, vmin, vmax, 8, x0, y0, cw, ch)) os << "<path d=\"" << d << "\"/>\n";
        os << "</g>\n";
    }

    if (spec.overlays && !overlays.empty()) {
        const double xlo = scan.xs.front(), xhi = scan.xs.back();
        const double ylo = scan.ys.front(), yhi = scan.ys.back();
        // sample positions sit at cell centres
        auto mx = [&](double t) {
            return xhi > xlo ? x0 + 0.5 * cw + (t - xlo) / (xhi - xlo) * (pw - cw) : x0 + 0.5 * pw;
        };
        auto my = [&](double t) {
            return yhi > ylo ? y0 + ph - 0.5 * ch - (t - ylo) / (yhi - ylo) * (ph - ch) : y0 + 0.5 * ph;
        };
        os << "<g class=\"overlays\" clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.5\">\n";
        for (std::size_t k = 0; k < overlays.size(); ++k) {
            os << "<polyline class=\"overlay\" stroke=\"" << kSeriesColors[k % kSeriesColors.size()] << "\"";
            if (!overlays[k].label.empty()) os << " data-label=\"" << xml_escape(overlays[k].label) << "\"";
            os << " points=\"";
            bool first = true;
            for (const auto& [a, b] : overlays[k].points) {
                if (!first) os << ' ';
                os << px(mx(a)) << ',' << px(my(b));
                first = false;
            }
            os << "\"/>\n";
        }
        os << "</g>\n";
    }

    // frame and axes
    os << "<rect x=\"" << px(x0) << "\" y=\"" << px(y0) << "\" width=\"" << px(pw) << "\" height=\"" << px(ph)
       << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    os << "<g class=\"axes\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">\n";
    os << "<text x=\"" << px(x0) << "\" y=\"" << px(y0 + ph + 16) << "\" text-anchor=\"start\">"
       << label_number(scan.range_x.lo) << "</text>\n";
    os << "<text x=\"" << px(x0 + pw) << "\" y=\"" << px(y0 + ph + 16) << "\" text-anchor=\"end\">"
       << label_number(scan.range_x.hi) << "</text>\n";
    os << "<text class=\"xlabel\" x=\"" << px(x0 + pw / 2) << "\" y=\"" << px(y0 + ph + 40)
       << "\" text-anchor=\"middle\">t1 in [" << label_number(scan.range_x.lo) << ", "
       << label_number(scan.range_x.hi) << "]</text>\n";
    os << "<text x=\"" << px(x0 - 6) << "\" y=\"" << px(y0 + ph) << "\" text-anchor=\"end\">"
       << label_number(scan.range_y.lo) << "</text>\n";
    os << "<text x=\"" << px(x0 - 6) << "\" y=\"" << px(y0 + 10) << "\" text-anchor=\"end\">"
       << label_number(scan.range_y.hi) << "</text>\n";
    os << "<text class=\"ylabel\" x=\"" << px(18) << "\" y=\"" << px(y0 + ph / 2)
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << px(18) << ' ' << px(y0 + ph / 2) << ")\">t2 in ["
       << label_number(scan.range_y.lo) << ", " << label_number(scan.range_y.hi) << "]</text>\n";
    os << "</g>\n";

    // colorbar
    const double bx = x0 + pw + 20, bw = 18;
    constexpr int kSteps = 64;
    os << "<g class=\"colorbar\" shape-rendering=\"crispEdges\">\n";
    for (int s = 0; s < kSteps; ++s) {
        const double u = (s + 0.5) / kSteps;
        os << "<rect x=\"" << px(bx) << "\" y=\"" << px(y0 + ph - (s + 1) * ph / kSteps) << "\" width=\""
           << px(bw) << "\" height=\"" << px(ph / kSteps) << "\" fill=\"" << hex(colormap_rgb(spec.colormap, u))
           << "\"/>\n";
    }
    os << "<rect x=\"" << px(bx) << "\" y=\"" << px(y0) << "\" width=\"" << px(bw) << "\" height=\"" << px(ph)
       << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    os << "<text class=\"colorbar-max\" x=\"" << px(bx + bw + 4) << "\" y=\"" << px(y0 + 10)
       << "\" font-family=\"sans-serif\" font-size=\"11\">max " << label_number(vmax) << "</text>\n";
    os << "<text class=\"colorbar-min\" x=\"" << px(bx + bw + 4) << "\" y=\"" << px(y0 + ph)
       << "\" font-family=\"sans-serif\" font-size=\"11\">min " << label_number(vmin) << "</text>\n";
    os << "</g>\n";
    os << "</svg>\n";
    return os.str();
}

void render_heatmap_svg(const Scan2DResult& scan, const RenderSpec& spec, const std::vector<Overlay>& overlays,
                        const std::filesystem::path& path, const Json& metadata) {
    write_text(heatmap_svg(scan, spec, overlays, metadata), path);
}

std::string line_svg(const std::vector<Scan1DResult>& series, const std::vector<std::string>& labels,
                     const RenderSpec& spec, const Json& metadata) {
    spec.validate();
    if (series.empty()) throw UsageError("render: no series");
    if (labels.size() != series.size()) throw UsageError("render: one label per series required");

    Extent ex, ey;
    for (const auto& s : series) {
        if (s.ts.size() != s.values.size()) throw UsageError("render: malformed series");
        for (double t : s.ts) ex.add(t);
        for (double v : s.values) ey.add(v);
    }
    if (ex.empty()) ex = Extent{0.0, 1.0};
    if (ey.empty()) ey = Extent{0.0, 1.0};
    if (!(ex.hi > ex.lo)) {
        ex.lo -= 0.5;
        ex.hi += 0.5;
    }
    if (!(ey.hi > ey.lo)) {
        const double pad = ey.lo == 0.0 ? 0.5 : 0.1 * std::abs(ey.lo);
        ey.lo -= pad;
        ey.hi += pad;
    } else {
        const double pad = 0.05 * (ey.hi - ey.lo);
        ey.lo -= pad;
        ey.hi += pad;
    }

    const double pw = spec.width - kMarginLeft - kMarginRight;
    const double ph = spec.height - kMarginTop - kMarginBottom;
    const double x0 = kMarginLeft, y0 = kMarginTop;
    auto mx = [&](double t) { return x0 + (t - ex.lo) / (ex.hi - ex.lo) * pw; };
    auto my = [&](double v) { return y0 + ph - (v - ey.lo) / (ey.hi - ey.lo) * ph; };

    std::ostringstream os;
    open_svg(os, spec, metadata);
    os << "<g class=\"view\" data-t-min=\"" << label_number(ex.lo) << "\" data-t-max=\"" << label_number(ex.hi)
       << "\" data-y-min=\"" << label_number(ey.lo) << "\" data-y-max=\"" << label_number(ey.hi) << "\"/>\n";
    os << "<rect x=\"" << px(x0) << "\" y=\"" << px(y0) << "\" width=\"" << px(pw) << "\" height=\"" << px(ph)
       << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    os << "<g class=\"series\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        os << "<polyline class=\"series-line\" stroke=\"" << kSeriesColors[k % kSeriesColors.size()]
           << "\" points=\"";
        for (std::size_t i = 0; i < series[k].ts.size(); ++i) {
            if (!std::isfinite(series[k].values[i])) continue;
            if (i) os << ' ';
            os << px(mx(series[k].ts[i])) << ',' << px(my(series[k].values[i]));
        }
        os << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g class=\"axes\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">\n";
    os << "<text x=\"" << px(x0) << "\" y=\"" << px(y0 + ph + 16) << "\" text-anchor=\"start\">"
       << label_number(ex.lo) << "</text>\n";
    os << "<text x=\"" << px(x0 + pw) << "\" y=\"" << px(y0 + ph + 16) << "\" text-anchor=\"end\">"
       << label_number(ex.hi) << "</text>\n";
    os << "<text class=\"xlabel\" x=\"" << px(x0 + pw / 2) << "\" y=\"" << px(y0 + ph + 40)
       << "\" text-anchor=\"middle\">t</text>\n";
    os << "<text x=\"" << px(x0 - 6) << "\" y=\"" << px(y0 + ph) << "\" text-anchor=\"end\">"
       << label_number(ey.lo) << "</text>\n";
    os << "<text x=\"" << px(x0 - 6) << "\" y=\"" << px(y0 + 10) << "\" text-anchor=\"end\">"
       << label_number(ey.hi) << "</text>\n";
    os << "<text class=\"ylabel\" x=\"" << px(18) << "\" y=\"" << px(y0 + ph / 2)
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << px(18) << ' ' << px(y0 + ph / 2)
       << ")\">loss</text>\n";
    os << "</g>\n";

    os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double ly = y0 + 12 + 16.0 * static_cast<double>(k);
        const double lx = x0 + pw + 8;
        os << "<g class=\"legend-entry\"><line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4) << "\" x2=\""
           << px(lx + 16) << "\" y2=\"" << px(ly - 4) << "\" stroke=\"" << kSeriesColors[k % kSeriesColors.size()]
           << "\" stroke-width=\"2\"/><text x=\"" << px(lx + 20) << "\" y=\"" << px(ly) << "\">"
           << xml_escape(labels[k]) << "</text></g>\n";
    }
    os << "</g>\n";
    os << "</svg>\n";
    return os.str();
}

void render_line_svg(const std::vector<Scan1DResult>& series, const std::vector<std::string>& labels,
                     const std::filesystem::path& path, const RenderSpec& spec, const Json& metadata) {
    write_text(line_svg(series, labels, spec, metadata), path);
}

} // namespace landscape::io
