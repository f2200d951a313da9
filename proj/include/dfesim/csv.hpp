#pragma once

#include <map>
#include <ostream>
#include <string>

#include "dfesim/channel.hpp"
#include "dfesim/measure.hpp"
#include "dfesim/receiver.hpp"

namespace dfesim {

// CSV report writers. One header row, floating values with 9 significant
// digits. The path overloads throw std::runtime_error on open failure.

void write_trace_csv(std::ostream& os, const DecisionTrace& trace);
void write_bathtub_csv(std::ostream& os, const BathtubCurve& curve);
void write_calibration_csv(std::ostream& os,
                           const std::map<int, double>& widths_by_code);
void write_tap_sweep_csv(std::ostream& os,
                         const std::map<int, double>& widths_by_beta);
void write_eye_csv(std::ostream& os, const EyeDiagram& eye);
void write_pulse_csv(std::ostream& os, const PulseResponse& pulse);

void write_trace_csv(const std::string& path, const DecisionTrace& trace);
void write_bathtub_csv(const std::string& path, const BathtubCurve& curve);
void write_calibration_csv(const std::string& path,
                           const std::map<int, double>& widths_by_code);
void write_tap_sweep_csv(const std::string& path,
                         const std::map<int, double>& widths_by_beta);
void write_eye_csv(const std::string& path, const EyeDiagram& eye);
void write_pulse_csv(const std::string& path, const PulseResponse& pulse);

/// Format one double with 9 significant digits (%.9g).
std::string csv_num(double v);

} // namespace dfesim
