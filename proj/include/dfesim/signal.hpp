#pragma once

#include <cstdint>
#include <vector>

namespace dfesim {

/// Hard decision / data symbol, always -1 or +1.
using Symbol = int;

/// Bipolar symbol stream. Every element is exactly -1 or +1.
struct BitSequence {
    std::vector<Symbol> symbols;

    std::size_t size() const { return symbols.size(); }
    Symbol operator[](std::size_t i) const { return symbols[i]; }
};

/// Maximal-length LFSR stimulus. Feedback polynomials per order
/// (x^a + x^b + 1):
///   order 7: {7,6}   9: {9,5}   15: {15,14}   23: {23,18}   31: {31,28}
struct PrbsConfig {
    int order = 7;
    std::uint32_t seed = 1; // nonzero initial state, low `order` bits used
};

/// Oversampled differential voltage trace. The sample count is always an
/// integer multiple of samples_per_ui.
struct Waveform {
    std::vector<double> samples; // volts, differential
    int samples_per_ui = 1;
    double ui_seconds = 1e-9;

    std::size_t n_ui() const {
        return samples.size() / static_cast<std::size_t>(samples_per_ui);
    }
};

void validate(const PrbsConfig& cfg);

/// Maximal-length PRBS with bits mapped {0 -> -1, 1 -> +1}.
/// Deterministic: the same cfg always yields the same sequence.
BitSequence prbs_generate(const PrbsConfig& cfg, std::int64_t n_bits);

/// NRZ modulation: each symbol held for samples_per_ui samples at
/// symbol * amplitude.
Waveform nrz_modulate(const BitSequence& bits, double amplitude,
                      int samples_per_ui, double ui_seconds = 1e-9);

} // namespace dfesim
