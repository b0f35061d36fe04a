#pragma once

// Flat TOML subset used for configuration files: [sections], key = value with
// integer, float, boolean, string and homogeneous array values, # comments.
// Keys are exposed as "section.key". No nested tables, no multi-line values.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pvauction {

class TomlLite {
  public:
    static TomlLite parse_file(const std::filesystem::path& path);
    static TomlLite parse_string(std::string_view text, std::string source = "<string>");

    bool has(const std::string& key) const;

    std::optional<std::string> get_string(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<long long> get_int(const std::string& key) const;
    std::optional<bool> get_bool(const std::string& key) const;
    std::optional<std::vector<double>> get_double_array(const std::string& key) const;
    std::optional<std::vector<long long>> get_int_array(const std::string& key) const;

    // All keys, for unknown-key reporting.
    std::vector<std::string> keys() const;

  private:
    struct Value {
        enum class Kind { String, Number, Boolean, Array } kind = Kind::String;
        std::string text;                // raw scalar text
        std::vector<std::string> items;  // raw array items
        bool boolean = false;
    };
    std::map<std::string, Value> values_;
    std::string source_;
};

}  // namespace pvauction
