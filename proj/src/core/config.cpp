#include "satrestore/core/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "satrestore/core/error.hpp"
#include "satrestore/core/image_io.hpp"

namespace satrestore {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text, const std::string& source) {
    KeyValueConfig cfg;
    cfg.source_ = source;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(line_no);
        if (eq == std::string::npos) throw ParseError(source, where, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(source, where, "empty key");
        if (cfg.values_.count(key)) throw ParseError(source, where, "duplicate key '" + key + "'");
        cfg.values_.emplace(std::move(key), std::move(value));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        const double d = std::stod(*v, &used);
        if (used == v->size()) return d;
    } catch (const std::exception&) {
    }
    throw ParseError(source_, "key '" + key + "'", "expected a number, got '" + *v + "'");
}

long KeyValueConfig::get_int(const std::string& key, long fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        const long n = std::stol(*v, &used);
        if (used == v->size()) return n;
    } catch (const std::exception&) {
    }
    throw ParseError(source_, "key '" + key + "'", "expected an integer, got '" + *v + "'");
}

ExposureConfig exposure_config_from(const KeyValueConfig& kv) {
    ExposureConfig cfg;
    cfg.dt1 = kv.get_double("dt1", 1.0);
    cfg.dt0 = kv.get_double("dt0", cfg.dt1 / 4.0);
    cfg.dt2 = kv.get_double("dt2", cfg.dt1 * 4.0);
    cfg.xi_u = static_cast<int>(kv.get_int("xi_u", 250));
    cfg.xi_l = static_cast<int>(kv.get_int("xi_l", 200));
    cfg.validate();
    return cfg;
}

Crf crf_from(const KeyValueConfig& kv) {
    const auto gamma = kv.get("gamma");
    const auto path = kv.get("crf_path");
    if (gamma && path) throw ParseError(kv.source(), "key 'gamma'", "gamma and crf_path are mutually exclusive");
    if (path) {
        // Relative CRF paths are resolved against the config file's directory.
        std::filesystem::path p(*path);
        const std::filesystem::path source(kv.source());
        if (p.is_relative() && std::filesystem::exists(source)) p = source.parent_path() / p;
        return Crf::tabulated(read_crf_csv(p.string()));
    }
    return Crf::gamma(kv.get_double("gamma", 2.2));
}

}  // namespace satrestore
