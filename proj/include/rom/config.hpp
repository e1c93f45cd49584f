#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rom/types.hpp"

namespace rom {

// Flat "section.key = value" configuration with '#' comments. Unknown keys
// are rejected so typos fail loudly. All numeric fields are validated at
// parse time.
struct ExperimentConfig {
    // model
    int n_grid = 201;
    double length = 1.0;
    double viscosity = 0.1;
    double ic_root1 = 1.2;
    double ic_root2 = 1.5;
    double ic_root3 = 2.0;
    double ic_peak = 1.0;   // max |p| over [0, L]
    double ic_sign = 1.0;   // sign of p near x = 0 (+1 or -1)

    // time
    double t_final = 1.0;
    int num_steps = 201;
    Scheme scheme = Scheme::implicit_euler;

    // rom
    std::optional<int> pod_dim;        // fixed k...
    std::optional<double> pod_energy;  // ...or energy criterion gamma
    int deim_points = 40;
    bool adaptive = false;
    double alpha = 0.5;
    int dwr_modes = 15;

    // qoi
    double qoi_lo = 0.05;
    double qoi_hi = 0.1;

    // sweep
    std::vector<int> sweep_k;
    std::vector<int> sweep_m;
    std::vector<double> sweep_alpha;
    std::vector<double> sweep_mu;

    // output
    std::filesystem::path output_dir = "out";

    unsigned long seed = 0;

    int pod_dim_or_default() const { return pod_dim.value_or(15); }
};

ExperimentConfig parse_config_file(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");

// Serialises back to the flat format (used to echo resolved configs).
std::string config_to_text(const ExperimentConfig& config);

}  // namespace rom
