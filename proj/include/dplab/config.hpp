#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dplab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key-value config with dotted nesting, `#` comments and strict
/// unknown-key rejection. Keys keep file order for deterministic echoing.
class Config {
public:
    static Config parse_text(const std::string& text) {
        Config cfg;
        cfg.raw_text_ = text;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            const size_t eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
            if (cfg.values_.count(key))
                throw ConfigError("config: duplicate key '" + key + "'");
            cfg.values_[key] = value;
            cfg.order_.push_back(key);
        }
        return cfg;
    }

    static Config parse_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("config: cannot read '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_text(ss.str());
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    std::string require_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("config: missing required key '" + key + "'");
        return it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        return to_double(key, it->second);
    }

    int get_int(const std::string& key, int fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(it->second, &pos);
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' is not an integer");
        }
        if (pos != it->second.size())
            throw ConfigError("config: key '" + key + "' is not an integer");
        return v;
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        if (it->second == "true" || it->second == "on" || it->second == "1") return true;
        if (it->second == "false" || it->second == "off" || it->second == "0") return false;
        throw ConfigError("config: key '" + key + "' is not a boolean");
    }

    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::vector<double> out;
        std::istringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
        if (out.empty()) throw ConfigError("config: key '" + key + "' is an empty list");
        return out;
    }

    /// Strict validation: every present key must match an allowed name or an
    /// allowed indexed pattern like "measure.*.mass".
    void check_keys(const std::vector<std::string>& allowed) const {
        for (const auto& [key, value] : values_) {
            (void)value;
            bool ok = false;
            for (const std::string& pat : allowed) {
                if (matches(key, pat)) {
                    ok = true;
                    break;
                }
            }
            if (!ok) throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    /// Indices i for which any key "prefix.i.*" exists, sorted.
    std::vector<int> indexed_entries(const std::string& prefix) const {
        std::vector<int> idx;
        for (const auto& [key, value] : values_) {
            (void)value;
            if (key.rfind(prefix + ".", 0) != 0) continue;
            const std::string rest = key.substr(prefix.size() + 1);
            const size_t dot = rest.find('.');
            if (dot == std::string::npos) continue;
            try {
                idx.push_back(std::stoi(rest.substr(0, dot)));
            } catch (const std::exception&) {
                throw ConfigError("config: malformed indexed key '" + key + "'");
            }
        }
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        return idx;
    }

    const std::string& raw_text() const { return raw_text_; }
    const std::vector<std::string>& ordered_keys() const { return order_; }

    void set(const std::string& key, const std::string& value) {
        if (!values_.count(key)) order_.push_back(key);
        values_[key] = value;
    }

private:
    static std::string trim(const std::string& s) {
        size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return s.substr(a, b - a);
    }

    static double to_double(const std::string& key, const std::string& text) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &pos);
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' is not a number");
        }
        if (pos != text.size())
            throw ConfigError("config: key '" + key + "' is not a number");
        return v;
    }

    static bool matches(const std::string& key, const std::string& pattern) {
        // Only one wildcard form is used: a single "*" path component.
        const size_t star = pattern.find('*');
        if (star == std::string::npos) return key == pattern;
        const std::string head = pattern.substr(0, star);
        const std::string tail = pattern.substr(star + 1);
        if (key.size() < head.size() + tail.size()) return false;
        if (key.compare(0, head.size(), head) != 0) return false;
        if (key.compare(key.size() - tail.size(), tail.size(), tail) != 0) return false;
        const std::string mid = key.substr(head.size(), key.size() - head.size() - tail.size());
        if (mid.empty()) return false;
        return std::all_of(mid.begin(), mid.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
    std::string raw_text_;
};

}  // namespace dplab
