#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dfesim/bias_dac.hpp"
#include "dfesim/channel.hpp"
#include "dfesim/receiver.hpp"
#include "dfesim/signal.hpp"

namespace dfesim {

/// Everything needed for one closed-loop run.
struct SimConfig {
    PrbsConfig prbs;
    ChannelConfig channel;
    ComparatorConfig cmp;
    LoopConfig loop;
    TapCodes taps;
    DacConfig dac;
    int samples_per_ui = 32;
    std::int64_t n_bits = 100000;
    std::int64_t warmup_bits = 32;
    std::uint64_t seed = 1;
    double ui_seconds = 1e-9;
};

struct BerCount {
    std::int64_t errors = 0;
    std::int64_t bits = 0;

    double ber() const {
        return bits > 0 ? static_cast<double>(errors) / static_cast<double>(bits)
                        : 0.0;
    }
};

/// BER vs sampling phase. Phases with zero observed errors report ber = 0
/// with the trial count attached; no extrapolation is applied.
struct BathtubCurve {
    std::vector<double> phases; // in [0, 1)
    std::vector<double> ber;
    std::vector<std::int64_t> errors;
    std::vector<std::int64_t> bits;
};

/// 2-D (phase, voltage) histogram of a waveform folded modulo one UI.
struct EyeDiagram {
    int time_bins = 0;
    int volt_bins = 0;
    std::pair<double, double> volt_range{0.0, 0.0};
    std::vector<std::int64_t> counts; // row-major [time_bin][volt_bin]

    std::int64_t at(int t, int v) const {
        return counts[static_cast<std::size_t>(t) * volt_bins + v];
    }
};

struct CalibrationResult {
    int best_reg_of = 0;
    std::map<int, double> widths_by_code;
    double threshold_ber = 0.0;
};

/// Result bundle for one closed-loop run (CLI `simulate`).
struct SimRun {
    DecisionTrace trace;
    BerCount count;
    double alpha_eff = 0.0;        // realized tap in the y[n] recurrence
    double residual_offset = 0.0;  // threshold error left after correction
};

void validate(const SimConfig& cfg);

// Deterministic stream derivation. All randomness descends from
// (seed, stream, shard) so sweeps can run on any number of workers.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t shard = 0);
std::vector<double> gaussian_noise(std::uint64_t stream_seed, std::size_t n,
                                   double sigma);
std::uint32_t derive_prbs_seed(std::uint32_t base_seed, int shard, int order);

/// Pre-emphasized PRBS stimulus through the channel.
Waveform link_waveform(const SimConfig& cfg, const BitSequence& bits);

/// One shard of a partitioned run: shard 0 uses the configured PRBS seed,
/// later shards derive theirs, and each shard owns noise stream
/// (seed, noise_stream, shard). Warmup is discarded per shard.
BerCount ber_shard(const SimConfig& cfg, double phase_ui, int n_shards,
                   int shard_index, int noise_stream = 0);

/// Sum of all shards. Equals independently computed shards merged by
/// count addition, exactly.
BerCount ber_estimate_sharded(const SimConfig& cfg, double phase_ui,
                              int n_shards, int noise_stream = 0);

/// Single-shard estimate on noise stream 0.
BerCount ber_estimate(const SimConfig& cfg, double phase_ui);

/// ber at n_phases uniformly spaced phases i/n_phases, per_phase_bits each.
/// Phase i draws noise stream i; the stimulus is shared across phases.
BathtubCurve bathtub(const SimConfig& cfg, int n_phases,
                     std::int64_t per_phase_bits);

/// Width of the maximal contiguous (circular) phase interval containing the
/// minimum-BER phase where ber < threshold, linearly interpolated at the
/// crossings. 0 if no phase qualifies, 1 if every phase does.
double bathtub_width(const BathtubCurve& curve, double threshold);

/// Pick the widest code; ties resolve toward mid-range (smallest
/// |code - 15.5|), then the smaller code.
int pick_best_code(const std::map<int, double>& widths_by_code);

/// Offset sweep with the tap forced to zero: bathtub_width for each
/// reg_of in 8..23, returning the widest. Throws calibration_error with
/// the width table when every width is zero.
CalibrationResult calibrate_offset(const SimConfig& cfg, double threshold,
                                   int n_phases, std::int64_t per_phase_bits);

/// Bathtub widths for beta 0..8 at a fixed offset code.
std::map<int, double> tap_sweep(const SimConfig& cfg, int reg_of,
                                double threshold, int n_phases,
                                std::int64_t per_phase_bits);

/// Fold a waveform modulo one UI into a (time, voltage) count grid.
EyeDiagram eye_histogram(const Waveform& w, int time_bins, int volt_bins);

/// One closed-loop run with the full per-UI trace.
SimRun simulate_run(const SimConfig& cfg, double phase_ui);

} // namespace dfesim
