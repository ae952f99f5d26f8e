#pragma once

#include <map>
#include <string>
#include <vector>

namespace ppgfit {

// Flat key=value configuration. Keys are validated against the documented set;
// an unknown key is an input error.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    static const std::vector<std::string>& known_keys();

private:
    std::map<std::string, std::string> values_;
};

} // namespace ppgfit
