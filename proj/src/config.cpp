#include "nsv/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nsv {

namespace {
std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}
}  // namespace

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

ConfigMap ConfigMap::parse_text(const std::string& text, const std::string& origin) {
    ConfigMap cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(lineno) +
                               ": expected `key = value`, got `" + line + "`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error(origin + ":" + std::to_string(lineno) + ": empty key");
        if (cfg.values_.count(key))
            throw config_error(origin + ":" + std::to_string(lineno) + ": duplicate key `" +
                               key + "`");
        cfg.values_[key] = value;
    }
    return cfg;
}

std::string ConfigMap::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw config_error(origin_ + ": missing key `" + key + "`");
    return it->second;
}

std::string ConfigMap::get_string_or(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double ConfigMap::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw config_error(origin_ + ": key `" + key + "` is not a number: `" + v + "`");
    return x;
}

double ConfigMap::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long long ConfigMap::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw config_error(origin_ + ": key `" + key + "` is not an integer: `" + v + "`");
    return x;
}

long long ConfigMap::get_int_or(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

void ConfigMap::require_known_keys(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : values_)
        if (!allowed.count(key))
            throw config_error(origin_ + ": unknown key `" + key + "`");
}

}  // namespace nsv
