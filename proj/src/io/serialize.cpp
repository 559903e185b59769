#include "landscape/io/serialize.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace landscape::io {

namespace fs = std::filesystem;

Provenance provenance_of(const LossModel& model, std::uint64_t seed, Json extra) {
    return Provenance{model.descriptor(), seed, model.eval_count(), std::move(extra)};
}

namespace {

Json direction_json(const Direction& d) { return Json{{"vector", d.vector().values()}, {"norm", d.norm()}}; }

Json interval_json(const Interval& r) { return Json::array({r.lo, r.hi}); }

void append_provenance(Json& doc, const Provenance& prov) {
    doc["model"] = prov.model;
    doc["seed"] = prov.seed;
    doc["eval_count"] = prov.eval_count;
    if (!prov.extra.empty()) doc["parameters"] = prov.extra;
    doc["spec_version"] = kFormatVersion;
}

template <typename T>
T field(const Json& j, const char* name) {
    if (!j.contains(name)) throw UsageError(std::string("missing field: ") + name);
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError(std::string("malformed field: ") + name);
    }
}

Interval interval_from(const Json& j, const char* name) {
    auto v = field<std::vector<double>>(j, name);
    if (v.size() != 2) throw UsageError(std::string("malformed field: ") + name);
    return Interval{v[0], v[1]};
}

ScanKind kind_from(const std::string& s) {
    if (s == "linear") return ScanKind::linear;
    if (s == "interpolation") return ScanKind::interpolation;
    if (s == "piecewise") return ScanKind::piecewise;
    throw UsageError("malformed field: path");
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

} // namespace

Json to_json(const Scan1DResult& scan, const Provenance& prov) {
    Json doc;
    doc["kind"] = "scan1d";
    doc["path"] = to_string(scan.kind);
    doc["origin"] = scan.origin.values();
    doc["directions"] = Json::array({direction_json(scan.direction)});
    doc["ts"] = scan.ts;
    doc["values"] = scan.values;
    append_provenance(doc, prov);
    return doc;
}

Json to_json(const Scan2DResult& scan, const Provenance& prov) {
    Json doc;
    doc["kind"] = "scan2d";
    doc["origin"] = scan.origin.values();
    doc["directions"] = Json::array({direction_json(scan.dir_x), direction_json(scan.dir_y)});
    doc["range_x"] = interval_json(scan.range_x);
    doc["range_y"] = interval_json(scan.range_y);
    doc["xs"] = scan.xs;
    doc["ys"] = scan.ys;
    doc["values"] = scan.values;
    append_provenance(doc, prov);
    return doc;
}

Json to_json(const PrincipalFrame& frame) {
    Json comps = Json::array();
    for (const auto& c : frame.components) comps.push_back(c.vector().values());
    return Json{{"kind", "principal_frame"},
                {"mean", frame.mean.values()},
                {"components", comps},
                {"explained_variance", frame.explained_variance},
                {"explained_ratio", frame.explained_ratio},
                {"total_variance", frame.total_variance}};
}

Json to_json(const HessianResult& h) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < h.matrix.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < h.matrix.cols(); ++j) row.push_back(h.matrix(i, j));
        rows.push_back(row);
    }
    Json vecs = Json::array();
    for (const auto& v : h.eigenvectors) vecs.push_back(v.vector().values());
    return Json{{"kind", "hessian"},
                {"point", h.point.values()},
                {"matrix", rows},
                {"eigenvalues", h.eigenvalues},
                {"eigenvectors", vecs},
                {"raw_asymmetry", h.raw_asymmetry},
                {"stochastic", h.stochastic}};
}

Json to_json(const std::vector<Chain>& history) {
    Json cycles = Json::array();
    for (const auto& chain : history) {
        Json pivots = Json::array();
        for (const auto& p : chain.pivots()) pivots.push_back(p.values());
        cycles.push_back(pivots);
    }
    return Json{{"kind", "chain_history"}, {"cycles", cycles}};
}

Scan1DResult scan1d_from_json(const Json& j) {
    if (field<std::string>(j, "kind") != "scan1d") throw UsageError("malformed field: kind");
    const Json& dirs = j.at("directions");
    if (!dirs.is_array() || dirs.size() != 1) throw UsageError("malformed field: directions");
    Scan1DResult r{field<std::vector<double>>(j, "ts"), field<std::vector<double>>(j, "values"),
                   ParameterVector(field<std::vector<double>>(j, "origin")),
                   Direction(ParameterVector(field<std::vector<double>>(dirs[0], "vector"))),
                   kind_from(field<std::string>(j, "path"))};
    if (r.ts.size() != r.values.size()) throw UsageError("malformed field: values");
    return r;
}

Scan2DResult scan2d_from_json(const Json& j) {
    if (field<std::string>(j, "kind") != "scan2d") throw UsageError("malformed field: kind");
    const Json& dirs = j.at("directions");
    if (!dirs.is_array() || dirs.size() != 2) throw UsageError("malformed field: directions");
    Scan2DResult r{field<std::vector<double>>(j, "xs"),
                   field<std::vector<double>>(j, "ys"),
                   field<std::vector<double>>(j, "values"),
                   ParameterVector(field<std::vector<double>>(j, "origin")),
                   Direction(ParameterVector(field<std::vector<double>>(dirs[0], "vector"))),
                   Direction(ParameterVector(field<std::vector<double>>(dirs[1], "vector"))),
                   interval_from(j, "range_x"),
                   interval_from(j, "range_y")};
    if (r.values.size() != r.xs.size() * r.ys.size()) throw UsageError("malformed field: values");
    return r;
}

PrincipalFrame frame_from_json(const Json& j) {
    PrincipalFrame f{ParameterVector(field<std::vector<double>>(j, "mean")), {},
                     field<std::vector<double>>(j, "explained_variance"),
                     field<std::vector<double>>(j, "explained_ratio"), field<double>(j, "total_variance")};
    for (const auto& c : field<std::vector<std::vector<double>>>(j, "components"))
        f.components.emplace_back(ParameterVector(c));
    return f;
}

void write_json(const Json& doc, const fs::path& path) {
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
    finish(out, path);
}

Json read_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(path.string() + ": " + e.what());
    }
}

void emit_scan_json(const Scan1DResult& scan, const Provenance& prov, const fs::path& path) {
    write_json(to_json(scan, prov), path);
}

void emit_scan_json(const Scan2DResult& scan, const Provenance& prov, const fs::path& path) {
    write_json(to_json(scan, prov), path);
}

std::string format_double(double v) {
    std::array<char, 40> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

void emit_scan_csv(const Scan2DResult& scan, const fs::path& path) {
    auto out = open_out(path);
    out << "t1,t2,value\n";
    for (std::size_t i = 0; i < scan.xs.size(); ++i)
        for (std::size_t j = 0; j < scan.ys.size(); ++j)
            out << format_double(scan.xs[i]) << ',' << format_double(scan.ys[j]) << ','
                << format_double(scan.value(i, j)) << '\n';
    finish(out, path);
}

void emit_scan_csv(const Scan1DResult& scan, const fs::path& path) {
    auto out = open_out(path);
    out << "t,value\n";
    for (std::size_t i = 0; i < scan.ts.size(); ++i)
        out << format_double(scan.ts[i]) << ',' << format_double(scan.values[i]) << '\n';
    finish(out, path);
}

std::vector<std::array<double, 3>> read_scan_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "t1,t2,value") throw UsageError(path.string() + ": bad header");
    std::vector<std::array<double, 3>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 3> row{};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int k = 0; k < 3; ++k) {
            auto res = std::from_chars(p, end, row[k]);
            if (res.ec != std::errc()) throw UsageError(path.string() + ": bad number in row " + std::to_string(rows.size() + 1));
            p = res.ptr;
            if (k < 2) {
                if (p == end || *p != ',') throw UsageError(path.string() + ": bad separator");
                ++p;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace landscape::io
