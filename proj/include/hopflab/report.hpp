#pragma once

/**
 * @file report.hpp
 * @brief Machine-readable outputs: run reports and fiber polyline files.
 *
 * Both documents carry `format_version` (currently 1). JSON field order is
 * fixed so that identical runs produce identical bytes apart from the
 * `timestamp` field of a report.
 */

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopflab::cli {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolkitVersion = "0.1.0";

using json = nlohmann::ordered_json;

struct Outcome {
    std::string name;
    bool ok{true};
    double value{0.0};
    std::string detail;

    bool operator==(const Outcome&) const = default;
};

struct RunReport {
    int format_version{kFormatVersion};
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::uint64_t seed{0};
    std::vector<Outcome> outcomes;
    std::string version{kToolkitVersion};
    std::string timestamp;

    bool operator==(const RunReport&) const = default;

    void add(std::string name, bool ok, double value, std::string detail = {}) {
        outcomes.push_back({std::move(name), ok, value, std::move(detail)});
    }

    const Outcome* find(const std::string& name) const {
        for (const auto& o : outcomes)
            if (o.name == name) return &o;
        return nullptr;
    }

    bool all_finite() const {
        for (const auto& o : outcomes)
            if (!std::isfinite(o.value)) return false;
        return true;
    }
};

inline std::string utc_timestamp() {
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline json to_json(const RunReport& r) {
    if (!r.all_finite()) throw std::domain_error("RunReport: non-finite value in outcomes");
    json params = json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    json outcomes = json::array();
    for (const auto& o : r.outcomes)
        outcomes.push_back(json{{"name", o.name}, {"ok", o.ok}, {"value", o.value}, {"detail", o.detail}});
    return json{{"format_version", r.format_version},
                {"command", r.command},
                {"version", r.version},
                {"seed", r.seed},
                {"parameters", params},
                {"outcomes", outcomes},
                {"timestamp", r.timestamp}};
}

inline RunReport report_from_json(const json& j) {
    RunReport r;
    r.format_version = j.at("format_version").get<int>();
    if (r.format_version != kFormatVersion) throw std::runtime_error("RunReport: unsupported format_version");
    r.command = j.at("command").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters.emplace_back(k, v.get<std::string>());
    for (const auto& o : j.at("outcomes"))
        r.outcomes.push_back({o.at("name").get<std::string>(), o.at("ok").get<bool>(), o.at("value").get<double>(),
                              o.at("detail").get<std::string>()});
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
}

inline std::string report_to_csv(const RunReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "name,ok,value,detail\n";
    for (const auto& o : r.outcomes) os << o.name << ',' << (o.ok ? "true" : "false") << ',' << o.value << ',' << o.detail << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------

struct FiberPolyline {
    int id{0};
    std::vector<std::vector<double>> points;

    bool operator==(const FiberPolyline&) const = default;
};

struct FiberPolylineFile {
    int format_version{kFormatVersion};
    int ambient_dim{0};
    std::string projection{"none"};  // "none" | "stereographic"
    std::vector<FiberPolyline> fibers;

    bool operator==(const FiberPolylineFile&) const = default;
};

inline json to_json(const FiberPolylineFile& f) {
    json fibers = json::array();
    for (const auto& fiber : f.fibers) fibers.push_back(json{{"id", fiber.id}, {"points", fiber.points}});
    return json{{"format_version", f.format_version},
                {"ambient_dim", f.ambient_dim},
                {"projection", f.projection},
                {"fibers", fibers}};
}

inline FiberPolylineFile polylines_from_json(const json& j) {
    FiberPolylineFile f;
    f.format_version = j.at("format_version").get<int>();
    if (f.format_version != kFormatVersion) throw std::runtime_error("FiberPolylineFile: unsupported format_version");
    f.ambient_dim = j.at("ambient_dim").get<int>();
    f.projection = j.at("projection").get<std::string>();
    for (const auto& fiber : j.at("fibers"))
        f.fibers.push_back({fiber.at("id").get<int>(), fiber.at("points").get<std::vector<std::vector<double>>>()});
    return f;
}

inline std::string polylines_to_csv(const FiberPolylineFile& f) {
    std::ostringstream os;
    os.precision(17);
    const std::size_t arity = f.fibers.empty() || f.fibers.front().points.empty() ? 0 : f.fibers.front().points.front().size();
    os << "fiber_id,point_index";
    for (std::size_t c = 0; c < arity; ++c) os << ",c" << c;
    os << '\n';
    for (const auto& fiber : f.fibers)
        for (std::size_t k = 0; k < fiber.points.size(); ++k) {
            os << fiber.id << ',' << k;
            for (double v : fiber.points[k]) os << ',' << v;
            os << '\n';
        }
    return os.str();
}

/// Writes `content` to a sibling temporary file and renames it over `path`.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot write " + path.string() + ": " + ec.message());
    }
}

}  // namespace hopflab::cli
