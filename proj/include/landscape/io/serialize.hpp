#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/hessian.hpp"
#include "landscape/neb.hpp"
#include "landscape/pca.hpp"
#include "landscape/scans.hpp"

namespace landscape::io {

/// Version tag written into every emitted document.
inline constexpr const char* kFormatVersion = "1.0";

/// What produced a result: enough to re-run it.
struct Provenance {
    Json model = Json::object();
    std::uint64_t seed = 0;
    std::uint64_t eval_count = 0;
    Json extra = Json::object();
};

Provenance provenance_of(const LossModel& model, std::uint64_t seed, Json extra = Json::object());

Json to_json(const Scan1DResult& scan, const Provenance& prov);
Json to_json(const Scan2DResult& scan, const Provenance& prov);
Json to_json(const PrincipalFrame& frame);
Json to_json(const HessianResult& hessian);
Json to_json(const std::vector<Chain>& history);

Scan1DResult scan1d_from_json(const Json& j);
Scan2DResult scan2d_from_json(const Json& j);
PrincipalFrame frame_from_json(const Json& j);

/// Writes `doc` with two-space indentation and a trailing newline.
void write_json(const Json& doc, const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

void emit_scan_json(const Scan1DResult& scan, const Provenance& prov, const std::filesystem::path& path);
void emit_scan_json(const Scan2DResult& scan, const Provenance& prov, const std::filesystem::path& path);

/// Header "t1,t2,value", one row per cell in storage order (t1 outer, t2
/// inner), 17 significant digits, LF line endings.
void emit_scan_csv(const Scan2DResult& scan, const std::filesystem::path& path);
/// Header "t,value".
void emit_scan_csv(const Scan1DResult& scan, const std::filesystem::path& path);

/// Shortest 17-significant-digit text for a double.
std::string format_double(double v);

/// Parses the 2D CSV back into (t1, t2, value) rows.
std::vector<std::array<double, 3>> read_scan_csv(const std::filesystem::path& path);

} // namespace landscape::io
