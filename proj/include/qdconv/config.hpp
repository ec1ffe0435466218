// Copyright 2026 The qdconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// config.hpp: run configuration from a JSON file plus command-line overrides.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdconv/experiments.hpp"
#include "qdconv/model.hpp"
#include "qdconv/optimize.hpp"
#include "qdconv/table.hpp"

namespace qdconv {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Flag values; each one present overrides the file.
struct ConfigOverrides {
    std::optional<double> r_p, r_l, x_g, x_l, x_r, temp, temp_p, gamma;
    std::optional<std::string> tau;  // number or "inf"
    std::optional<std::filesystem::path> out;
    std::optional<std::string> format;
    std::optional<unsigned> workers;
    bool force = false;
};

struct RunConfig {
    ModelParams params;
    bool scaled_input = true;  // energies came from the "scaled" block
    ScaledEnergies scaled;

    OptimizerSettings optimizer;
    std::vector<Variable> free{Variable::XL, Variable::XR};

    CoherenceMapGrid fig2;
    double fig3a_r_p = 0.9;
    double fig3a_tau = 0.0;
    std::vector<double> fig3a_r_l_values = default_r_l_values();
    std::vector<double> fig3a_eta_c_grid = default_eta_c_grid();
    double fig3b_r_p = 0.9;
    double fig3b_r_l = 0.0;
    std::vector<double> fig3b_tau_values = default_tau_values();
    std::vector<double> fig3b_eta_c_grid = default_eta_c_grid();

    std::optional<std::filesystem::path> out;
    TableFormat format = TableFormat::Csv;
    bool force = false;
    unsigned workers = 1;

    /// Fully resolved configuration, in the input schema.
    Json echo() const;
};

/// Throws ConfigError for unknown keys (all listed), wrong types, a config
/// carrying both "physical" and "scaled" energies, and invalid values.
RunConfig parse_config(const Json& doc, const ConfigOverrides& overrides = {});

/// Reads and parses a JSON file; an empty path means an empty document.
RunConfig parse_config_file(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

}  // namespace qdconv
