#pragma once

#include <span>
#include <vector>

#include "dfesim/bias_dac.hpp"
#include "dfesim/signal.hpp"

namespace dfesim {

/// Sense-amplifier comparator behavioral parameters.
struct ComparatorConfig {
    double v_of = 0.0;        // inherent input-referred offset, volts
    double noise_sigma = 0.0; // input-referred Gaussian noise std, per decision
    double g_fb = 0.5;        // feedback-port gain relative to the main pair
    int fb_polarity = -1;     // -1 subtractive (default), +1 additive
    Symbol tie_break = +1;    // decision at exactly zero comparator input
};

/// Decision-feedback loop parameters.
struct LoopConfig {
    int latency_ui = 1;         // decision-to-feedback latency, UI
    double settle_factor = 1.0; // fraction of the selected bias that settles
};

/// Per-UI record of one closed-loop run.
struct DecisionTrace {
    BitSequence decisions;
    std::vector<double> sampled_inputs;   // volts at each sampling instant
    std::vector<double> feedback_applied; // selected differential bias, volts
};

/// Differential bias pair picked by the previous decision.
struct FeedbackSelect {
    double v_plus = 0.0;
    double v_minus = 0.0;
    double diff() const { return v_plus - v_minus; }
};

struct TimingCheck {
    bool ok = true;
    double margin_s = 0.0; // ui - loop delay; negative on violation
};

void validate(const ComparatorConfig& cfg);
void validate(const LoopConfig& cfg);

/// y_prev = +1 -> (v_h1, v_l2), y_prev = -1 -> (v_l1, v_h2).
FeedbackSelect select_feedback(Symbol y_prev, const BiasVoltages& b);

/// x = v_main + fb_polarity*g_fb*settle_factor*v_fb_diff - v_of + noise;
/// returns -1 if x < 0, +1 if x > 0, tie_break at exactly 0.
Symbol decide(double v_main, double v_fb_diff, const ComparatorConfig& cfg,
              double noise_sample, double settle_factor = 1.0);

/// Closed loop over a waveform: UI n is sampled at n*spp + round(phase*spp)
/// (clamped into the UI) and the feedback is selected by the decision made
/// latency_ui cycles earlier, with y[k] = +1 for k < 0.
DecisionTrace run_dfe(const Waveform& w, double phase_ui,
                      const BiasVoltages& bias, const ComparatorConfig& cmp,
                      const LoopConfig& loop,
                      std::span<const double> noise_stream);

/// Direct transcription of the one-tap recurrence, used as the oracle for
/// run_dfe:
///   y[n] = Q(sampled[n] - alpha_eff*y[n-1] - v_residual + noise[n])
/// with y[-1] = +1 and Q(x) = -1 for x < 0, +1 otherwise. The caller
/// composes alpha_eff and v_residual from the gain, polarity and codes.
/// An empty noise stream means all zeros.
BitSequence reference_dfe(std::span<const double> sampled, double alpha_eff,
                          double v_residual,
                          std::span<const double> noise_stream);

/// ok iff loop_delay_s <= ui_s (boundary inclusive).
TimingCheck loop_timing_check(double loop_delay_s, double ui_s);

} // namespace dfesim
