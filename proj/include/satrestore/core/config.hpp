#pragma once

#include <map>
#include <optional>
#include <string>

#include "satrestore/core/crf.hpp"
#include "satrestore/core/exposure.hpp"

namespace satrestore {

/// Flat `key = value` file. '#' starts a comment; blank lines are ignored.
class KeyValueConfig {
public:
    static KeyValueConfig parse(const std::string& text, const std::string& source = "<config>");
    static KeyValueConfig load(const std::string& path);

    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    const std::map<std::string, std::string>& values() const noexcept { return values_; }
    const std::string& source() const noexcept { return source_; }

private:
    std::string source_;
    std::map<std::string, std::string> values_;
};

/// Reads dt0, dt1, dt2, xi_u, xi_l. Missing times default to dt1 / 4 and 4 * dt1.
ExposureConfig exposure_config_from(const KeyValueConfig& kv);

/// Reads `gamma` or `crf_path` (exactly one; gamma 2.2 if neither is present).
Crf crf_from(const KeyValueConfig& kv);

}  // namespace satrestore
