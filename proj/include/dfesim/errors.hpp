#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace dfesim {

/// Invalid or out-of-range configuration value. The CLI maps this to exit 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Offset calibration found no code with a nonzero bathtub width.
/// Carries the measured width table so callers can still report it.
class calibration_error : public std::runtime_error {
public:
    calibration_error(const std::string& msg, std::map<int, double> widths)
        : std::runtime_error(msg), widths_by_code(std::move(widths)) {}

    std::map<int, double> widths_by_code;
};

} // namespace dfesim
