#pragma once

// Experiment configuration: flat key=value text format with section
// prefixes (system.J, integrator.dt, sweep.kappa_list, ...) plus
// command-line overrides of the same form.

#include <string>
#include <vector>

#include "naq/integrator.hpp"
#include "naq/operators.hpp"

namespace naq {

enum class RunMode { simulate, sweep_kappa, sweep_field, verify };

struct ExperimentConfig {
    RunMode mode = RunMode::simulate;
    SystemParams system;
    IntegratorConfig integrator;
    std::vector<double> kappa_list{0.0, 50.0, 100.0, 150.0, 200.0};
    std::vector<double> field_grid = default_field_grid();
    std::string output_dir = "out";
    unsigned long seed = 12345;
    int workers = 1;

    static std::vector<double> default_field_grid();  // 0 .. 1.0 step 0.025

    /// kappa_list non-empty, field_grid strictly increasing, sub-configs valid.
    void validate() const;

    bool operator==(const ExperimentConfig& o) const;
};

/// Parse the key=value config text. Unknown keys or malformed values
/// throw std::invalid_argument. `mode` is not part of the file format.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Inverse of parse_config: parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& c);

/// Apply one "key=value" override in place.
void apply_override(ExperimentConfig& c, const std::string& key_value);

/// 17-significant-digit formatting (round-trip exact for doubles).
std::string fmt17(double v);

} // namespace naq
