#include "dfesim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dfesim/errors.hpp"

namespace dfesim {

void validate(const ChannelConfig& cfg) {
    if (!(cfg.tau_ui > 0.0))
        throw config_error("channel.tau_ui must be > 0");
    if (!(cfg.ffe_tap >= 0.0 && cfg.ffe_tap < 1.0))
        throw config_error("channel.ffe_tap must be in [0, 1) (got " +
                           std::to_string(cfg.ffe_tap) + ")");
    if (!(cfg.amplitude > 0.0))
        throw config_error("channel.amplitude must be > 0");
    if (!(cfg.delay_ui >= 0.0))
        throw config_error("channel.delay_ui must be >= 0");
}

std::vector<double> tx_preemphasis(const BitSequence& bits, double w) {
    if (!(w >= 0.0 && w < 1.0))
        throw config_error("ffe tap weight must be in [0, 1) (got " +
                           std::to_string(w) + ")");

    std::vector<double> out;
    out.reserve(bits.size());
    const double norm = 1.0 / (1.0 + w);
    Symbol prev = +1;
    for (Symbol d : bits.symbols) {
        out.push_back((d - w * prev) * norm);
        prev = d;
    }
    return out;
}

Waveform apply_channel(const std::vector<double>& levels,
                       const ChannelConfig& cfg, int samples_per_ui,
                       double ui_seconds) {
    validate(cfg);
    if (samples_per_ui < 1)
        throw config_error("samples_per_ui must be >= 1 (got " +
                           std::to_string(samples_per_ui) + ")");

    Waveform w;
    w.samples_per_ui = samples_per_ui;
    w.ui_seconds = ui_seconds;
    w.samples.resize(levels.size() * static_cast<std::size_t>(samples_per_ui));

    const double a = std::exp(-1.0 / (cfg.tau_ui * samples_per_ui));
    const double b = 1.0 - a;
    double y = 0.0;
    std::size_t k = 0;
    for (double level : levels) {
        const double x = level * cfg.amplitude;
        for (int j = 0; j < samples_per_ui; ++j, ++k) {
            y = a * y + b * x;
            w.samples[k] = y;
        }
    }

    const auto delay =
        static_cast<std::size_t>(std::llround(cfg.delay_ui * samples_per_ui));
    if (delay > 0 && !w.samples.empty()) {
        const std::size_t n = w.samples.size();
        if (delay >= n) {
            std::fill(w.samples.begin(), w.samples.end(), 0.0);
        } else {
            std::move_backward(w.samples.begin(),
                               w.samples.begin() + (n - delay), w.samples.end());
            std::fill(w.samples.begin(), w.samples.begin() + delay, 0.0);
        }
    }
    return w;
}

PulseResponse pulse_response(const ChannelConfig& cfg, int n_ui,
                             int samples_per_ui) {
    if (n_ui < 2)
        throw std::invalid_argument("pulse_response needs n_ui >= 2");

    std::vector<double> levels(static_cast<std::size_t>(n_ui), 0.0);
    levels[1] = 1.0; // pulse in UI 1; UI 0 stays zero as the precursor

    PulseResponse p;
    p.waveform = apply_channel(levels, cfg, samples_per_ui);
    const auto it =
        std::max_element(p.waveform.samples.begin(), p.waveform.samples.end());
    p.cursor_index =
        static_cast<std::size_t>(it - p.waveform.samples.begin());
    return p;
}

std::vector<double> isi_taps(const PulseResponse& p, double phase_ui) {
    if (!(phase_ui >= 0.0 && phase_ui < 1.0))
        throw std::invalid_argument("isi_taps phase must be in [0, 1)");

    const int spp = p.waveform.samples_per_ui;
    const auto offset = std::min<std::size_t>(
        static_cast<std::size_t>(std::llround(phase_ui * spp)),
        static_cast<std::size_t>(spp - 1));

    std::vector<double> taps;
    for (std::size_t i = p.cursor_index + offset; i < p.waveform.samples.size();
         i += static_cast<std::size_t>(spp))
        taps.push_back(p.waveform.samples[i]);
    return taps;
}

} // namespace dfesim
