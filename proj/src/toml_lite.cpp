#include "pvauction/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pvauction/errors.hpp"

namespace pvauction {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Cuts a trailing comment, respecting quoted strings.
std::string_view strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

double to_double(std::string_view s, const std::string& key) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("config: key '" + key + "' is not a number ('" + std::string(s) + "')");
    return v;
}

long long to_int(std::string_view s, const std::string& key) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("config: key '" + key + "' is not an integer ('" + std::string(s) + "')");
    return v;
}

}  // namespace

TomlLite TomlLite::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path.string());
}

TomlLite TomlLite::parse_string(std::string_view text, std::string source) {
    TomlLite t;
    t.source_ = std::move(source);
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = trim(strip_comment(line));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(t.source_ + ":" + std::to_string(line_no) + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty())
                throw ParseError(t.source_ + ":" + std::to_string(line_no) + ": empty section name");
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(t.source_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string_view raw = trim(line.substr(eq + 1));
        if (key.empty() || raw.empty())
            throw ParseError(t.source_ + ":" + std::to_string(line_no) + ": empty key or value");
        std::string full = section.empty() ? key : section + "." + key;
        if (t.values_.count(full))
            throw ParseError(t.source_ + ":" + std::to_string(line_no) + ": duplicate key '" + full + "'");

        Value v;
        if (raw.front() == '"') {
            if (raw.size() < 2 || raw.back() != '"')
                throw ParseError(t.source_ + ":" + std::to_string(line_no) + ": unterminated string");
            v.kind = Value::Kind::String;
            v.text = std::string(raw.substr(1, raw.size() - 2));
        } else if (raw.front() == '[') {
            if (raw.back() != ']')
                throw ParseError(t.source_ + ":" + std::to_string(line_no) + ": unterminated array");
            v.kind = Value::Kind::Array;
            std::string_view body = trim(raw.substr(1, raw.size() - 2));
            while (!body.empty()) {
                std::size_t comma = body.find(',');
                std::string_view item = trim(body.substr(0, comma));
                if (item.empty())
                    throw ParseError(t.source_ + ":" + std::to_string(line_no) + ": empty array item");
                v.items.emplace_back(item);
                if (comma == std::string_view::npos) break;
                body = trim(body.substr(comma + 1));
            }
        } else if (raw == "true" || raw == "false") {
            v.kind = Value::Kind::Boolean;
            v.boolean = raw == "true";
        } else {
            v.kind = Value::Kind::Number;
            v.text = std::string(raw);
        }
        t.values_.emplace(std::move(full), std::move(v));
    }
    return t;
}

bool TomlLite::has(const std::string& key) const {
    return values_.count(key) > 0;
}

std::optional<std::string> TomlLite::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (it->second.kind != Value::Kind::String)
        throw ParseError("config: key '" + key + "' is not a string");
    return it->second.text;
}

std::optional<double> TomlLite::get_double(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (it->second.kind != Value::Kind::Number)
        throw ParseError("config: key '" + key + "' is not a number");
    return to_double(it->second.text, key);
}

std::optional<long long> TomlLite::get_int(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (it->second.kind != Value::Kind::Number)
        throw ParseError("config: key '" + key + "' is not a number");
    return to_int(it->second.text, key);
}

std::optional<bool> TomlLite::get_bool(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (it->second.kind != Value::Kind::Boolean)
        throw ParseError("config: key '" + key + "' is not a boolean");
    return it->second.boolean;
}

std::optional<std::vector<double>> TomlLite::get_double_array(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (it->second.kind != Value::Kind::Array)
        throw ParseError("config: key '" + key + "' is not an array");
    std::vector<double> out;
    for (const auto& item : it->second.items) out.push_back(to_double(item, key));
    return out;
}

std::optional<std::vector<long long>> TomlLite::get_int_array(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (it->second.kind != Value::Kind::Array)
        throw ParseError("config: key '" + key + "' is not an array");
    std::vector<long long> out;
    for (const auto& item : it->second.items) out.push_back(to_int(item, key));
    return out;
}

std::vector<std::string> TomlLite::keys() const {
    std::vector<std::string> out;
    out.reserve(values_.size());
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
}

}  // namespace pvauction
