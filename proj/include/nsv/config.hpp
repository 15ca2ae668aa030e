#pragma once

#include <map>
#include <set>
#include <string>

#include "nsv/errors.hpp"

namespace nsv {

/// Line-based `key = value` configuration: UTF-8, `#` comments, blank lines
/// ignored. Strict mode — consumers validate against their documented key set
/// and unknown keys are a configuration error (CLI exit code 2).
class ConfigMap {
public:
    static ConfigMap parse_file(const std::string& path);
    static ConfigMap parse_text(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string>& values() const { return values_; }

    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int_or(const std::string& key, long long fallback) const;

    /// Throws config_error naming the first key outside `allowed`.
    void require_known_keys(const std::set<std::string>& allowed) const;

private:
    std::map<std::string, std::string> values_;
    std::string origin_;
};

}  // namespace nsv
