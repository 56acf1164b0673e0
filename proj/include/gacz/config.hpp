#pragma once

#include "gacz/protocol.hpp"

#include <string>

namespace gacz {

struct OutputSpec {
    std::string csv;      // trajectory / table destination ("" = stdout)
    std::string json;     // summary document destination
    std::string gnuplot;  // companion plot script destination
};

// One JSON document drives every workflow. Energies and rates carry an
// explicit _over_J suffix, times a _J suffix; unknown keys are rejected.
struct RunConfig {
    GateConfig gate;
    bool calibrate = false;  // run the omega2 calibration before the workflow
    double calibration_halfwidth = 0.05;
    OutputSpec output;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);  // file errors -> config_error

} // namespace gacz
