#include "landscape/io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "landscape/io/serialize.hpp"

namespace landscape {

// Intervals serialize as [lo, hi].
template <typename BasicJsonType>
void to_json(BasicJsonType& j, const Interval& r) {
    j = BasicJsonType::array({r.lo, r.hi});
}

template <typename BasicJsonType>
void from_json(const BasicJsonType& j, Interval& r) {
    if (!j.is_array() || j.size() != 2) throw UsageError("interval must be [lo, hi]");
    r.lo = j.at(0).template get<double>();
    r.hi = j.at(1).template get<double>();
}

} // namespace landscape

// The stock nlohmann helper macro only targets the unordered json type.
#define LANDSCAPE_JSON_TYPE(Type, ...)                                                                    \
    inline void to_json(landscape::Json& nlohmann_json_j, const Type& nlohmann_json_t) {                 \
        NLOHMANN_JSON_EXPAND(NLOHMANN_JSON_PASTE(NLOHMANN_JSON_TO, __VA_ARGS__))                         \
    }                                                                                                     \
    inline void from_json(const landscape::Json& nlohmann_json_j, Type& nlohmann_json_t) {               \
        const Type nlohmann_json_default_obj{};                                                           \
        NLOHMANN_JSON_EXPAND(NLOHMANN_JSON_PASTE(NLOHMANN_JSON_FROM_WITH_DEFAULT, __VA_ARGS__))          \
    }

namespace landscape::io {

LANDSCAPE_JSON_TYPE(RenderSpec, colormap, contours, overlays, width, height)
LANDSCAPE_JSON_TYPE(ModelSpec, kind, dim, nu, value, diagonal, graph_file, vertices,
                                                degree, weights, graph_seed, layers, qubits, ansatz_layers,
                                                dist_file, hamiltonian_file, kl_epsilon, shots)
LANDSCAPE_JSON_TYPE(OperationParams, res_x, res_y, range_x, range_y, points, dir_norm,
                                                origin, point_a, point_b, optimizer, starts, init_range,
                                                learning_rate, iterations, grad_step, spsa_directions, spsa_eps,
                                                hessian, hessian_step, repetitions, hessian_eps, pivots,
                                                neb_learning_rate, neb_iterations, cycles, spring, insert_rel_tol,
                                                insert_abs_tol, max_new_pivots, profile_samples, margin, threads)
LANDSCAPE_JSON_TYPE(ExperimentConfig, operation, demo, model, params, seed, out_dir,
                                                formats, render)

namespace {

const std::set<std::string> kOperations{"scan1d", "scan2d",  "pca-scan", "hessian", "eigen-ratio-scan",
                                        "neb",    "autoneb", "optimize", "demo"};
const std::set<std::string> kFormats{"json", "csv", "svg"};

// Decodes one object field by field so that errors name the offending key.
template <typename T>
T decode_object(const Json& j, const std::string& prefix) {
    if (!j.is_object()) throw UsageError("config field " + (prefix.empty() ? std::string("<root>") : prefix) +
                                         " must be an object");
    const Json defaults = T{};
    Json merged = defaults;
    for (const auto& [key, value] : j.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (!defaults.contains(key)) throw UsageError("unknown config field: " + name);
        Json probe = defaults;
        probe[key] = value;
        try {
            (void)probe.template get<T>();
        } catch (const std::exception&) {
            throw UsageError("malformed config field: " + name);
        }
        merged[key] = value;
    }
    return merged.template get<T>();
}

} // namespace

void ExperimentConfig::validate() const {
    if (!kOperations.count(operation)) throw UsageError("unknown operation: " + operation);
    if (operation == "demo" && demo.empty()) throw UsageError("missing required: demo name");
    for (const auto& f : formats)
        if (!kFormats.count(f)) throw UsageError("unknown format: " + f);
    render.validate();
}

bool ExperimentConfig::wants(const std::string& format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

Json to_json(const ExperimentConfig& config) { return Json(config); }

ExperimentConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    Json top = j;
    ExperimentConfig config;
    if (j.contains("model")) config.model = decode_object<ModelSpec>(j.at("model"), "model");
    if (j.contains("params")) config.params = decode_object<OperationParams>(j.at("params"), "params");
    if (j.contains("render")) config.render = decode_object<RenderSpec>(j.at("render"), "render");
    top.erase("model");
    top.erase("params");
    top.erase("render");
    ExperimentConfig rest = decode_object<ExperimentConfig>(top, "");
    rest.model = std::move(config.model);
    rest.params = std::move(config.params);
    rest.render = std::move(config.render);
    return rest;
}

void save_config(const ExperimentConfig& config, const std::filesystem::path& path) {
    write_json(to_json(config), path);
}

ExperimentConfig load_config(const std::filesystem::path& path) { return config_from_json(read_json(path)); }

Json provenance_config(const ExperimentConfig& config) {
    Json j = to_json(config);
    j.erase("out_dir");
    return j;
}

namespace {

double parse_number(std::string_view s, const std::string& field) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw UsageError("malformed value for " + field + ": '" + std::string(s) + "'");
    return v;
}

} // namespace

Interval parse_interval(const std::string& text, const std::string& field) {
    // the separator is the first ':' after a possible leading sign
    const auto colon = text.find(':', 1);
    if (colon == std::string::npos) throw UsageError("malformed value for " + field + ": expected lo:hi");
    Interval r{parse_number(std::string_view(text).substr(0, colon), field),
               parse_number(std::string_view(text).substr(colon + 1), field)};
    if (!(r.lo < r.hi)) throw UsageError("malformed value for " + field + ": lo must be < hi");
    return r;
}

std::vector<double> parse_vector(const std::string& text, const std::string& field) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(parse_number(std::string_view(text).substr(start, comma - start), field));
        start = comma + 1;
    }
    return out;
}

std::vector<std::string> parse_formats(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!kFormats.count(item)) throw UsageError("unknown format: " + item);
        if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
    }
    if (out.empty()) throw UsageError("malformed value for --formats");
    return out;
}

} // namespace landscape::io
