// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "swipt/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <vector>

namespace swipt {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct FieldSpec {
    const char* name;
    bool is_pair;
    bool is_power;  // accepts the _dbm suffix
};

constexpr FieldSpec kFields[] = {
    {"n_antennas", false, false}, {"slot_length", false, false}, {"eta", false, false},
    {"sigma_r2", false, true},    {"p_relay", false, true},      {"pathloss_c", false, false},
    {"pathloss_n", false, false}, {"sigma_d2", true, true},      {"sigma_c2", true, true},
    {"p_max", true, true},        {"tau", true, false},          {"weights", true, false},
    {"distances", true, false},
};

const std::set<std::string>& system_keys()
{
    static const std::set<std::string> keys = [] {
        std::set<std::string> k{"sigma2", "sigma2_dbm", "alpha", "beta"};
        for (const auto& f : kFields) {
            std::vector<std::string> bases{f.name};
            if (f.is_pair) {
                bases.push_back(std::string(f.name) + "_1");
                bases.push_back(std::string(f.name) + "_2");
            }
            for (const auto& b : bases) {
                k.insert(b);
                if (f.is_power)
                    k.insert(b + "_dbm");
            }
        }
        return k;
    }();
    return keys;
}

}  // namespace

const std::string& KeyValueConfig::get(const std::string& key) const
{
    auto it = entries.find(key);
    if (it == entries.end())
        throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

double KeyValueConfig::get_double(const std::string& key) const
{
    const std::string& raw = get(key);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(raw, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != raw.size() || !std::isfinite(v))
        throw ConfigError("config key '" + key + "': expected a number, got '" + raw + "'");
    return v;
}

long long KeyValueConfig::get_int(const std::string& key) const
{
    const std::string& raw = get(key);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(raw, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != raw.size())
        throw ConfigError("config key '" + key + "': expected an integer, got '" + raw + "'");
    return v;
}

KeyValueConfig parse_config(std::istream& in)
{
    KeyValueConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        if (!cfg.entries.emplace(key, value).second)
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    return cfg;
}

KeyValueConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

bool is_system_key(const std::string& key)
{
    return system_keys().count(key) != 0;
}

SystemParams apply_system_keys(const KeyValueConfig& cfg, SystemParams p)
{
    // Plain value or <key>_dbm converted to the linear power unit.
    auto power = [&](const std::string& key, double& out) {
        if (cfg.has(key))
            out = cfg.get_double(key);
        if (cfg.has(key + "_dbm"))
            out = dbm_to_watts(cfg.get_double(key + "_dbm"));
    };
    auto plain = [&](const std::string& key, double& out) {
        if (cfg.has(key))
            out = cfg.get_double(key);
    };
    auto pair = [&](const std::string& key, NodePair& out, bool is_power) {
        auto one = [&](const std::string& k, double& v) {
            if (is_power)
                power(k, v);
            else
                plain(k, v);
        };
        double both = out[0];
        if (cfg.has(key) || (is_power && cfg.has(key + "_dbm"))) {
            one(key, both);
            out = {both, both};
        }
        one(key + "_1", out[0]);
        one(key + "_2", out[1]);
    };

    if (cfg.has("sigma2") || cfg.has("sigma2_dbm")) {
        double s = 1.0;
        power("sigma2", s);
        p.sigma_r2 = s;
        p.sigma_d2 = {s, s};
        p.sigma_c2 = {s, s};
    }
    if (cfg.has("n_antennas"))
        p.n_antennas = static_cast<int>(cfg.get_int("n_antennas"));
    plain("slot_length", p.slot_length);
    plain("eta", p.eta);
    power("sigma_r2", p.sigma_r2);
    power("p_relay", p.p_relay);
    plain("pathloss_c", p.pathloss_c);
    plain("pathloss_n", p.pathloss_n);
    pair("sigma_d2", p.sigma_d2, true);
    pair("sigma_c2", p.sigma_c2, true);
    pair("p_max", p.p_max, true);
    pair("tau", p.tau, false);
    pair("weights", p.weights, false);
    pair("distances", p.distances, false);
    plain("alpha", p.weights[0]);
    plain("beta", p.weights[1]);
    if (cfg.has("alpha") != cfg.has("beta")) {
        // A single weight implies the other through alpha + beta = 1.
        if (cfg.has("alpha"))
            p.weights[1] = 1.0 - p.weights[0];
        else
            p.weights[0] = 1.0 - p.weights[1];
    }

    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

}  // namespace swipt
