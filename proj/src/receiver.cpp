#include "dfesim/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dfesim/errors.hpp"

namespace dfesim {

void validate(const ComparatorConfig& cfg) {
    if (!(cfg.noise_sigma >= 0.0))
        throw config_error("cmp.noise_sigma must be >= 0");
    if (!(cfg.g_fb > 0.0))
        throw config_error("cmp.g_fb must be > 0");
    if (cfg.fb_polarity != 1 && cfg.fb_polarity != -1)
        throw config_error("cmp.fb_polarity must be +1 or -1 (got " +
                           std::to_string(cfg.fb_polarity) + ")");
    if (cfg.tie_break != 1 && cfg.tie_break != -1)
        throw config_error("cmp.tie_break must be +1 or -1");
}

void validate(const LoopConfig& cfg) {
    if (cfg.latency_ui < 1)
        throw config_error("loop.latency_ui must be >= 1 (got " +
                           std::to_string(cfg.latency_ui) + ")");
    if (!(cfg.settle_factor > 0.0 && cfg.settle_factor <= 1.0))
        throw config_error("loop.settle_factor must be in (0, 1]");
}

FeedbackSelect select_feedback(Symbol y_prev, const BiasVoltages& b) {
    if (y_prev == +1) return {b.v_h1, b.v_l2};
    return {b.v_l1, b.v_h2};
}

Symbol decide(double v_main, double v_fb_diff, const ComparatorConfig& cfg,
              double noise_sample, double settle_factor) {
    const double x = v_main +
                     cfg.fb_polarity * cfg.g_fb * settle_factor * v_fb_diff -
                     cfg.v_of + noise_sample;
    if (x < 0.0) return -1;
    if (x > 0.0) return +1;
    return cfg.tie_break;
}

DecisionTrace run_dfe(const Waveform& w, double phase_ui,
                      const BiasVoltages& bias, const ComparatorConfig& cmp,
                      const LoopConfig& loop,
                      std::span<const double> noise_stream) {
    validate(cmp);
    validate(loop);
    if (!(phase_ui >= 0.0 && phase_ui < 1.0))
        throw std::invalid_argument("run_dfe phase must be in [0, 1)");
    const int spp = w.samples_per_ui;
    if (spp < 1 || w.samples.size() < static_cast<std::size_t>(spp))
        throw std::invalid_argument("run_dfe needs at least one full UI");
    const std::size_t n_ui = w.n_ui();
    if (noise_stream.size() < n_ui)
        throw std::invalid_argument("noise stream shorter than the waveform");

    const auto p = std::min<std::size_t>(
        static_cast<std::size_t>(std::llround(phase_ui * spp)),
        static_cast<std::size_t>(spp - 1));
    const int latency = loop.latency_ui;

    DecisionTrace trace;
    trace.decisions.symbols.reserve(n_ui);
    trace.sampled_inputs.reserve(n_ui);
    trace.feedback_applied.reserve(n_ui);

    for (std::size_t n = 0; n < n_ui; ++n) {
        const Symbol y_prev = (n >= static_cast<std::size_t>(latency))
                                  ? trace.decisions.symbols[n - latency]
                                  : +1;
        const double v_fb = select_feedback(y_prev, bias).diff();
        const double v_main = w.samples[n * spp + p];
        const Symbol y =
            decide(v_main, v_fb, cmp, noise_stream[n], loop.settle_factor);
        trace.decisions.symbols.push_back(y);
        trace.sampled_inputs.push_back(v_main);
        trace.feedback_applied.push_back(v_fb);
    }
    return trace;
}

BitSequence reference_dfe(std::span<const double> sampled, double alpha_eff,
                          double v_residual,
                          std::span<const double> noise_stream) {
    if (!noise_stream.empty() && noise_stream.size() < sampled.size())
        throw std::invalid_argument("noise stream shorter than sampled inputs");

    BitSequence out;
    out.symbols.reserve(sampled.size());
    Symbol y = +1;
    for (std::size_t n = 0; n < sampled.size(); ++n) {
        const double noise = noise_stream.empty() ? 0.0 : noise_stream[n];
        const double x = sampled[n] - alpha_eff * y - v_residual + noise;
        y = (x < 0.0) ? -1 : +1;
        out.symbols.push_back(y);
    }
    return out;
}

TimingCheck loop_timing_check(double loop_delay_s, double ui_s) {
    if (!(loop_delay_s > 0.0) || !(ui_s > 0.0))
        throw std::invalid_argument("loop delay and UI must be positive");
    return {loop_delay_s <= ui_s, ui_s - loop_delay_s};
}

} // namespace dfesim
