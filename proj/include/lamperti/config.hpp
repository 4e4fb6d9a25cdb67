// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lamperti/error.hpp"
#include "lamperti/increments.hpp"
#include "lamperti/montecarlo.hpp"

namespace lamperti {

/// Invalid configuration. `where` is "line L, column C" for syntax errors or
/// the JSON path of the offending field.
class ConfigError : public Error {
public:
    ConfigError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

struct SimFields {
    double a = 10.0;
    double start = 50.0;
    double start_y = 0.0;
    std::int64_t horizon = 100000;
    std::int64_t n_traj = 1000;
    double escape_level = 0.0;
};

struct DriftRequest {
    int i = 0;
    double nu = 0.5;
    std::vector<double> x_grid = {1e2, 1e3, 1e4, 1e5};
};

struct SweepAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    int steps = 2;

    double value(int k) const;
};

struct RunConfig {
    ChainSpec spec;
    std::optional<SimFields> sim;
    std::optional<DriftRequest> drift;
    std::vector<SweepAxis> sweep;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
};

/// Parses and validates a config document. Throws ConfigError; range and
/// feasibility failures of the chain are reported as ConfigError too.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

nlohmann::json spec_to_json(const ChainSpec& spec);
/// `path` prefixes field names in diagnostics.
ChainSpec spec_from_json(const nlohmann::json& j, const std::string& path = "");
nlohmann::json config_to_json(const RunConfig& cfg);

/// Sets a sweepable field ("alpha", "b", "plane.p_radial", ...).
void set_param(ChainSpec& spec, const std::string& param, double value);
bool is_sweepable(const std::string& param);

SimConfig make_sim_config(const RunConfig& cfg);

}  // namespace lamperti
