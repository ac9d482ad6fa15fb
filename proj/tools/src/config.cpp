#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "antbif/errors.hpp"

namespace antbif::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_assignment(const std::string& line, const std::string& where)
{
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw ValidationError(where + ": expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty())
        throw ValidationError(where + ": empty key");
    if (value.empty())
        throw ValidationError(where + ": empty value for '" + key + "'");
    return {key, value};
}

}  // namespace

const std::vector<std::string>& known_keys()
{
    static const std::vector<std::string> keys = {
        "gamma", "sigma_c", "sigma_x", "sigma_theta", "lambda", "chi", "tau",
        "k", "n_theta", "sigma_k_max",
        "n1", "n2", "nt", "dt", "t_max", "residual_tol", "scheme", "dealias", "check_every", "project_every",
        "init", "eps",
        "branch", "chi_start", "chi_end", "steps", "seed_noise", "eigs", "krylov_dim", "seed",
        "k_max", "n_c",
        "mu_min", "mu_max", "mu_points",
    };
    return keys;
}

Config Config::parse(const std::string& text, const std::string& origin)
{
    Config c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto [k, v] = split_assignment(line, origin + ":" + std::to_string(lineno));
        c.kv_[k] = v;
    }
    c.check_keys();
    return c;
}

Config Config::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

void Config::override_with(const std::string& assignment)
{
    auto [k, v] = split_assignment(assignment, "--param");
    set(k, v);
}

void Config::set(const std::string& key, const std::string& value)
{
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ValidationError("unknown configuration key '" + key + "'");
    kv_[key] = value;
}

std::optional<std::string> Config::get(const std::string& key) const
{
    auto it = kv_.find(key);
    if (it == kv_.end())
        return std::nullopt;
    return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const
{
    return get(key).value_or(fallback);
}

double Config::number(const std::string& key, double fallback) const
{
    auto v = get(key);
    return v ? parse_number(key, *v) : fallback;
}

int Config::integer(const std::string& key, int fallback) const
{
    auto v = get(key);
    if (!v)
        return fallback;
    const double x = parse_number(key, *v);
    if (x != std::floor(x) || std::abs(x) > 1e9)
        throw ValidationError("'" + key + "' must be an integer, got '" + *v + "'");
    return static_cast<int>(x);
}

void Config::check_keys() const
{
    const auto& keys = known_keys();
    for (const auto& [k, v] : kv_)
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw ValidationError("unknown configuration key '" + k + "'");
}

double parse_number(const std::string& key, const std::string& text)
{
    size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("'" + key + "' is not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(x))
        throw ValidationError("'" + key + "' is not a finite number: '" + text + "'");
    return x;
}

ModelParams model_params(const Config& c)
{
    ModelParams p;
    p.gamma = c.number("gamma", p.gamma);
    p.sigma_c = c.number("sigma_c", p.sigma_c);
    p.sigma_x = c.number("sigma_x", p.sigma_x);
    p.sigma_theta = c.number("sigma_theta", p.sigma_theta);
    p.lambda = c.number("lambda", p.lambda);
    p.tau = c.number("tau", p.tau);
    p.validate();
    return p;
}

ChiSpec parse_chi(const std::string& text)
{
    const std::string t = trim(text);
    if (t.empty())
        throw ValidationError("empty chi value");
    ChiSpec s;
    if (t.back() == 'x' || t.back() == 'X') {
        s.relative = true;
        s.value = parse_number("chi", t.substr(0, t.size() - 1));
        if (s.value <= 0.0)
            throw ValidationError("relative chi must be positive, got '" + t + "'");
    } else {
        s.relative = false;
        s.value = parse_number("chi", t);
    }
    return s;
}

std::vector<double> parse_list(const std::string& key, const std::string& text)
{
    std::vector<double> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ','))
        out.push_back(parse_number(key, trim(item)));
    if (out.empty())
        throw ValidationError("'" + key + "' needs at least one value");
    return out;
}

}  // namespace antbif::cli
