#include "dfesim/signal.hpp"

#include <string>

#include "dfesim/errors.hpp"

namespace dfesim {

namespace {

// Second feedback tap per order; the first is always the order itself.
// Each pair is a primitive polynomial, so the state period is 2^order - 1.
int second_tap(int order) {
    switch (order) {
        case 7: return 6;
        case 9: return 5;
        case 15: return 14;
        case 23: return 18;
        case 31: return 28;
        default: return 0;
    }
}

} // namespace

void validate(const PrbsConfig& cfg) {
    if (second_tap(cfg.order) == 0)
        throw config_error("prbs.order must be one of 7, 9, 15, 23, 31 (got " +
                           std::to_string(cfg.order) + ")");
    const std::uint32_t mask =
        (cfg.order == 31) ? 0x7fffffffu : ((1u << cfg.order) - 1u);
    if ((cfg.seed & mask) == 0)
        throw config_error("prbs.seed must be nonzero in the low " +
                           std::to_string(cfg.order) + " bits");
}

BitSequence prbs_generate(const PrbsConfig& cfg, std::int64_t n_bits) {
    validate(cfg);
    if (n_bits < 1)
        throw config_error("prbs n_bits must be >= 1 (got " +
                           std::to_string(n_bits) + ")");

    const int tap2 = second_tap(cfg.order);
    const std::uint32_t mask =
        (cfg.order == 31) ? 0x7fffffffu : ((1u << cfg.order) - 1u);
    std::uint32_t state = cfg.seed & mask;

    BitSequence out;
    out.symbols.reserve(static_cast<std::size_t>(n_bits));
    for (std::int64_t i = 0; i < n_bits; ++i) {
        const std::uint32_t bit =
            ((state >> (cfg.order - 1)) ^ (state >> (tap2 - 1))) & 1u;
        state = ((state << 1) | bit) & mask;
        out.symbols.push_back(bit ? +1 : -1);
    }
    return out;
}

Waveform nrz_modulate(const BitSequence& bits, double amplitude,
                      int samples_per_ui, double ui_seconds) {
    if (amplitude <= 0.0)
        throw config_error("nrz amplitude must be > 0");
    if (samples_per_ui < 1)
        throw config_error("samples_per_ui must be >= 1 (got " +
                           std::to_string(samples_per_ui) + ")");

    Waveform w;
    w.samples_per_ui = samples_per_ui;
    w.ui_seconds = ui_seconds;
    w.samples.reserve(bits.size() * static_cast<std::size_t>(samples_per_ui));
    for (Symbol s : bits.symbols) {
        const double v = s * amplitude;
        w.samples.insert(w.samples.end(), static_cast<std::size_t>(samples_per_ui), v);
    }
    return w;
}

} // namespace dfesim
