#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bicres::cli {

/// Flat key/value settings for one command.
///
/// Lookup order: command-line flag, `<verb>.<key>` from the run file, plain
/// `<key>` from the run file, then the caller's default.
class RunConfig {
public:
    explicit RunConfig(std::string verb = {}) : verb_(std::move(verb)) {}

    /// Parses `key = value` lines; `#` starts a comment. Throws
    /// ValidationError on malformed lines.
    void load_text(const std::string& text, const std::string& origin = "<string>");
    void load_file(const std::string& path);

    void set_flag(const std::string& key, const std::string& value) { flags_[key] = value; }

    std::optional<std::string> lookup(const std::string& key) const;
    bool has(const std::string& key) const { return lookup(key).has_value(); }

    std::string get_string(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key, double def) const;
    long get_int(const std::string& key, long def) const;
    bool get_bool(const std::string& key, bool def) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& def) const;

    const std::string& verb() const noexcept { return verb_; }

    /// Every resolved key, flags winning, for metadata output.
    std::map<std::string, std::string> resolved() const;

private:
    std::string verb_;
    std::map<std::string, std::string> flags_;
    std::map<std::string, std::string> file_;
};

double parse_double(const std::string& key, const std::string& text);
std::vector<double> parse_list(const std::string& key, const std::string& text);

}  // namespace bicres::cli
