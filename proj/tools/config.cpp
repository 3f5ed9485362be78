#include "config.hpp"

#include <fstream>
#include <sstream>

namespace heis::cli {

using nlohmann::json;

json parse_config(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is one past the offending character.
        std::size_t line = 1, col = 1;
        const std::size_t stop = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << source << ":" << line << ":" << col << ": parse error: " << e.what();
        throw ConfigError(os.str());
    }
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

Section::Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError("config section '" + (path_.empty() ? "<root>" : path_) + "' must be an object");
}

void Section::allow(std::initializer_list<const char*> allowed) const {
    for (const auto& [key, value] : j_.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError("config field '" + where(key) + "': unknown key");
    }
}

Section Section::sub(const std::string& key) const {
    if (!j_.contains(key)) return Section(json::object(), where(key));
    return Section(j_.at(key), where(key));
}

}  // namespace heis::cli
