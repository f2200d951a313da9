#pragma once

#include <string>

#include "dfesim/measure.hpp"

namespace dfesim {

/// CLI run configuration: a SimConfig plus measurement and output options.
/// Parsed from a flat key = value file; see parse_config_text for the keys.
struct RunConfig {
    SimConfig sim;
    double bitrate_hz = 1e9;
    double phase_ui = 0.5;
    double threshold_ber = 1e-3;
    int n_phases = 64;
    std::string out_dir = ".";
};

/// Parse a flat key = value configuration ('#' starts a comment). Unknown
/// and duplicate keys are rejected, every key has a documented default,
/// and all values are range-checked. Throws config_error.
RunConfig parse_config_text(const std::string& text);

/// parse_config_text over the contents of a file.
RunConfig parse_config_file(const std::string& path);

} // namespace dfesim
