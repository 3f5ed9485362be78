#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace heis::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses JSON text; syntax errors carry 1-based line and column.
nlohmann::json parse_config(const std::string& text, const std::string& source = "<config>");
nlohmann::json load_config(const std::string& path);

// Read-only view of one config object that reports the dotted key path on errors.
class Section {
public:
    Section(const nlohmann::json& j, std::string path);

    // Rejects keys outside `allowed` so typos do not silently fall back to defaults.
    void allow(std::initializer_list<const char*> allowed) const;
    bool has(const std::string& key) const { return j_.contains(key); }
    Section sub(const std::string& key) const;
    const nlohmann::json& raw() const { return j_; }
    const std::string& path() const { return path_; }

    template <class T>
    T get(const std::string& key, const T& fallback) const {
        if (!j_.contains(key)) return fallback;
        try {
            return j_.at(key).get<T>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config field '" + where(key) + "': " + e.what());
        }
    }

    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    nlohmann::json j_;
    std::string path_;
};

}  // namespace heis::cli
