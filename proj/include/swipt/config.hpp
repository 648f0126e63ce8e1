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

#ifndef SWIPT_CONFIG_HPP
#define SWIPT_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include "swipt/model.hpp"

namespace swipt {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plain-text `key = value` file. `#` starts a comment; blank lines are ignored.
struct KeyValueConfig {
    std::map<std::string, std::string> entries;

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
};

KeyValueConfig parse_config(std::istream& in);

/// Throws ConfigError when the file cannot be opened or parsed.
KeyValueConfig load_config(const std::string& path);

/// True for keys that map onto SystemParams fields.
///
/// Field names mirror SystemParams. Pair fields accept `<name>` (both nodes),
/// `<name>_1` and `<name>_2`. Power and noise keys also accept a `_dbm`
/// suffix, e.g. `p_relay_dbm = 20` or `p_max_2_dbm = 5`. `sigma2` and
/// `sigma2_dbm` set every noise variance at once.
bool is_system_key(const std::string& key);

/// Overlays every system key present in cfg onto base and validates the result.
SystemParams apply_system_keys(const KeyValueConfig& cfg, SystemParams base);

}  // namespace swipt

#endif  // SWIPT_CONFIG_HPP
