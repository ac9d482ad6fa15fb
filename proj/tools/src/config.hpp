#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "antbif/params.hpp"

namespace antbif::cli {

// Flat key=value configuration. '#' starts a comment; blank lines are ignored.
class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<string>");
    static Config load(const std::string& path);

    // "key=value" as given to --param
    void override_with(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

    // Rejects keys outside the known set.
    void check_keys() const;

private:
    std::map<std::string, std::string> kv_;
};

double parse_number(const std::string& key, const std::string& text);

// Model parameters from the seven model keys; chi is resolved separately.
ModelParams model_params(const Config& c);

// "43.2" is absolute, "1.05x" is a multiple of chi_1.
struct ChiSpec {
    double value = 1.0;
    bool relative = true;

    double resolve(double chi_1) const { return relative ? value * chi_1 : value; }
};
ChiSpec parse_chi(const std::string& text);

std::vector<double> parse_list(const std::string& key, const std::string& text);

const std::vector<std::string>& known_keys();

}  // namespace antbif::cli
