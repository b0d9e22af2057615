// SPDX-License-Identifier: Apache-2.0
//
// JSON configuration files. Every section is optional; unknown keys are
// errors. Power-like fields accept a linear value `name`, a decibel value
// `name_db` or, for absolute powers, `name_dbm`.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdmimo/config.hpp"
#include "fdmimo/rates.hpp"
#include "fdmimo/scenario.hpp"

namespace fdmimo {

struct ExperimentSettings {
    std::uint64_t seed = 1;
    int drops = 100;
    int trials = 10000;
    int threads = 0;
    std::vector<int> m_list;            // empty: the experiment's default
    std::vector<double> kappa_db_list;  // empty: the experiment's default
    std::vector<double> gain_grid;
    std::vector<int> m_tdd_list;
    std::optional<Csi> csi;
};

struct ConfigBundle {
    nlohmann::json document;  // the parsed input, used for the digest
    std::optional<SystemConfig> system;
    std::optional<HomogeneousConfig> homogeneous;
    std::optional<LargeScaleProfile> profile;
    ScenarioParams scenario;
    ExperimentSettings experiment;
    std::optional<PowerScalingSchedule> power_scaling;

    std::string digest() const;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws ConfigError naming the offending key.
ConfigBundle parse_config(const nlohmann::json& doc);

/// Reads and parses a file. Throws ConfigError on I/O or syntax errors.
nlohmann::json read_config_json(const std::string& path);
ConfigBundle load_config(const std::string& path);

/// FNV-1a 64 of the canonical (sorted-key, compact) dump without experiment.threads.
std::string config_digest(const nlohmann::json& doc);

}  // namespace fdmimo
