#include "bicres_cli/run_config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bicres/errors.hpp"

namespace bicres::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        throw ValidationError("'" + key + "': expected a number, got '" + text + "'");
    }
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw ValidationError("'" + key + "': empty list");
    return out;
}

void RunConfig::load_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(origin + ":" + std::to_string(n) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ValidationError(origin + ":" + std::to_string(n) + ": empty key");
        file_[key] = trim(line.substr(eq + 1));
    }
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read run file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    load_text(ss.str(), path);
}

std::optional<std::string> RunConfig::lookup(const std::string& key) const {
    if (auto it = flags_.find(key); it != flags_.end()) return it->second;
    if (!verb_.empty()) {
        if (auto it = file_.find(verb_ + "." + key); it != file_.end()) return it->second;
    }
    if (auto it = file_.find(key); it != file_.end()) return it->second;
    return std::nullopt;
}

std::string RunConfig::get_string(const std::string& key, const std::string& def) const {
    return lookup(key).value_or(def);
}

double RunConfig::get_double(const std::string& key, double def) const {
    const auto v = lookup(key);
    return v ? parse_double(key, *v) : def;
}

long RunConfig::get_int(const std::string& key, long def) const {
    const auto v = lookup(key);
    if (!v) return def;
    const double d = parse_double(key, *v);
    if (d != static_cast<double>(static_cast<long>(d))) {
        throw ValidationError("'" + key + "': expected an integer, got '" + *v + "'");
    }
    return static_cast<long>(d);
}

bool RunConfig::get_bool(const std::string& key, bool def) const {
    const auto v = lookup(key);
    if (!v) return def;
    if (*v == "1" || *v == "true" || *v == "yes" || *v == "on") return true;
    if (*v == "0" || *v == "false" || *v == "no" || *v == "off") return false;
    throw ValidationError("'" + key + "': expected a boolean, got '" + *v + "'");
}

std::vector<double> RunConfig::get_list(const std::string& key,
                                        const std::vector<double>& def) const {
    const auto v = lookup(key);
    return v ? parse_list(key, *v) : def;
}

std::map<std::string, std::string> RunConfig::resolved() const {
    std::map<std::string, std::string> out;
    const std::string prefix = verb_.empty() ? std::string{} : verb_ + ".";
    for (const auto& [k, v] : file_) {
        if (k.find('.') == std::string::npos) out[k] = v;
    }
    for (const auto& [k, v] : file_) {
        if (!prefix.empty() && k.rfind(prefix, 0) == 0) out[k.substr(prefix.size())] = v;
    }
    for (const auto& [k, v] : flags_) out[k] = v;
    return out;
}

}  // namespace bicres::cli
