#pragma once

#include <vector>

#include "dfesim/signal.hpp"

namespace dfesim {

/// Behavioral link model: 1-tap transmit pre-emphasis into a single-pole
/// low-pass with unity DC gain, plus an integer-sample transport delay.
struct ChannelConfig {
    double tau_ui = 1.0;      // pole time constant, in UI
    double ffe_tap = 0.0;     // pre-emphasis weight w, in [0, 1)
    double amplitude = 0.030; // launch swing, volts differential
    double delay_ui = 0.0;    // pure transport delay, in UI
};

/// Response to one isolated +1 UI pulse. The pulse is launched in UI 1 so
/// the sample one UI before the cursor is a valid (zero) precursor.
struct PulseResponse {
    Waveform waveform;
    std::size_t cursor_index = 0; // sample index of the peak
};

void validate(const ChannelConfig& cfg);

/// t[n] = (d[n] - w*d[n-1]) / (1 + w) with d[-1] = +1. The 1/(1+w)
/// normalization keeps the peak launch level at or below 1.
std::vector<double> tx_preemphasis(const BitSequence& bits, double w);

/// Zero-order-hold upsampling of levels*amplitude, then the exact
/// discretization of the single pole:
///   y[k] = a*y[k-1] + (1-a)*x[k],  a = exp(-1/(tau_ui*samples_per_ui))
/// with y[-1] = 0, followed by a delay of round(delay_ui*samples_per_ui)
/// samples (zero-filled, output length unchanged).
Waveform apply_channel(const std::vector<double>& levels,
                       const ChannelConfig& cfg, int samples_per_ui,
                       double ui_seconds = 1e-9);

/// Channel response to a single +1 UI among zeros, cursor at the argmax.
PulseResponse pulse_response(const ChannelConfig& cfg, int n_ui,
                             int samples_per_ui);

/// UI-spaced samples h0, h1, ... of the pulse response starting at
/// cursor + round(phase_ui * samples_per_ui). h0 is the largest.
std::vector<double> isi_taps(const PulseResponse& p, double phase_ui);

} // namespace dfesim
