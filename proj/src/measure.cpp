#include "dfesim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "dfesim/errors.hpp"

namespace dfesim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// floor division for possibly negative numerators
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::size_t phase_sample(double phase_ui, int spp) {
    return std::min<std::size_t>(
        static_cast<std::size_t>(std::llround(phase_ui * spp)),
        static_cast<std::size_t>(spp - 1));
}

// Count decision errors against the transmitted bits. The decision for UI n
// estimates bit n + lag, where lag accounts for the sampling phase and the
// channel transport delay.
BerCount count_errors(const DecisionTrace& trace, const BitSequence& bits,
                      const SimConfig& cfg, double phase_ui) {
    const int spp = cfg.samples_per_ui;
    const auto p = static_cast<std::int64_t>(phase_sample(phase_ui, spp));
    const auto d = static_cast<std::int64_t>(
        std::llround(cfg.channel.delay_ui * spp));
    const std::int64_t lag = floor_div(p - d, spp);

    const auto n_ui = static_cast<std::int64_t>(trace.decisions.size());
    const auto n_bits = static_cast<std::int64_t>(bits.size());

    BerCount count;
    for (std::int64_t n = cfg.warmup_bits; n < n_ui; ++n) {
        const std::int64_t m = n + lag;
        if (m < 0 || m >= n_bits) continue;
        ++count.bits;
        if (trace.decisions.symbols[static_cast<std::size_t>(n)] !=
            bits.symbols[static_cast<std::size_t>(m)])
            ++count.errors;
    }
    return count;
}

BerCount run_on_waveform(const SimConfig& cfg, const Waveform& wave,
                         const BitSequence& bits, double phase_ui,
                         std::span<const double> noise) {
    const BiasVoltages bias = decode_bias(compute_words(cfg.taps), cfg.dac);
    const DecisionTrace trace =
        run_dfe(wave, phase_ui, bias, cfg.cmp, cfg.loop, noise);
    return count_errors(trace, bits, cfg, phase_ui);
}

void require_sweepable(const SimConfig& cfg, int n_phases) {
    if (n_phases < 8)
        throw config_error("measure.n_phases must be >= 8 (got " +
                           std::to_string(n_phases) + ")");
    if (cfg.samples_per_ui < 8)
        throw config_error("samples_per_ui must be >= 8 for phase sweeps");
}

BathtubCurve bathtub_on_waveform(const SimConfig& cfg, const Waveform& wave,
                                 const BitSequence& bits, int n_phases,
                                 const std::vector<std::vector<double>>& noise) {
    BathtubCurve curve;
    curve.phases.reserve(n_phases);
    for (int i = 0; i < n_phases; ++i) {
        const double phase = static_cast<double>(i) / n_phases;
        const BerCount c = run_on_waveform(cfg, wave, bits, phase, noise[i]);
        curve.phases.push_back(phase);
        curve.ber.push_back(c.ber());
        curve.errors.push_back(c.errors);
        curve.bits.push_back(c.bits);
    }
    return curve;
}

std::vector<std::vector<double>> per_phase_noise(const SimConfig& cfg,
                                                 int n_phases,
                                                 std::size_t n_ui) {
    std::vector<std::vector<double>> noise;
    noise.reserve(n_phases);
    for (int i = 0; i < n_phases; ++i)
        noise.push_back(gaussian_noise(derive_stream(cfg.seed, i), n_ui,
                                       cfg.cmp.noise_sigma));
    return noise;
}

} // namespace

void validate(const SimConfig& cfg) {
    validate(cfg.prbs);
    validate(cfg.channel);
    validate(cfg.cmp);
    validate(cfg.loop);
    validate(cfg.taps);
    if (cfg.samples_per_ui < 1)
        throw config_error("samples_per_ui must be >= 1 (got " +
                           std::to_string(cfg.samples_per_ui) + ")");
    if (cfg.warmup_bits < 0)
        throw config_error("warmup_bits must be >= 0");
    if (cfg.n_bits <= cfg.warmup_bits)
        throw config_error("n_bits must exceed warmup_bits (got " +
                           std::to_string(cfg.n_bits) + " <= " +
                           std::to_string(cfg.warmup_bits) + ")");
    if (!(cfg.ui_seconds > 0.0))
        throw config_error("ui_seconds must be > 0");
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t shard) {
    return splitmix64(splitmix64(splitmix64(seed) + stream) + shard);
}

std::vector<double> gaussian_noise(std::uint64_t stream_seed, std::size_t n,
                                   double sigma) {
    std::vector<double> noise(n, 0.0);
    if (sigma > 0.0) {
        std::mt19937_64 rng(stream_seed);
        std::normal_distribution<double> unit(0.0, 1.0);
        for (double& v : noise) v = sigma * unit(rng);
    }
    return noise;
}

std::uint32_t derive_prbs_seed(std::uint32_t base_seed, int shard, int order) {
    const std::uint64_t h = derive_stream(base_seed, 0x5eedu, shard);
    const std::uint64_t period = (1ull << order) - 1ull;
    return static_cast<std::uint32_t>(h % period) + 1u;
}

Waveform link_waveform(const SimConfig& cfg, const BitSequence& bits) {
    const std::vector<double> levels =
        tx_preemphasis(bits, cfg.channel.ffe_tap);
    return apply_channel(levels, cfg.channel, cfg.samples_per_ui,
                         cfg.ui_seconds);
}

BerCount ber_shard(const SimConfig& cfg, double phase_ui, int n_shards,
                   int shard_index, int noise_stream) {
    validate(cfg);
    if (n_shards < 1 || shard_index < 0 || shard_index >= n_shards)
        throw std::invalid_argument("bad shard index");

    // Partition n_bits evenly; the first n_bits % n_shards shards get one
    // extra bit so the total is exact.
    const std::int64_t base = cfg.n_bits / n_shards;
    const std::int64_t chunk = base + (shard_index < cfg.n_bits % n_shards);
    if (chunk <= cfg.warmup_bits)
        throw config_error("shard length must exceed warmup_bits (got " +
                           std::to_string(chunk) + " bits per shard)");

    SimConfig shard_cfg = cfg;
    shard_cfg.n_bits = chunk;
    if (shard_index > 0)
        shard_cfg.prbs.seed =
            derive_prbs_seed(cfg.prbs.seed, shard_index, cfg.prbs.order);

    const BitSequence bits = prbs_generate(shard_cfg.prbs, chunk);
    const Waveform wave = link_waveform(shard_cfg, bits);
    const std::vector<double> noise = gaussian_noise(
        derive_stream(cfg.seed, static_cast<std::uint64_t>(noise_stream),
                      static_cast<std::uint64_t>(shard_index)),
        wave.n_ui(), cfg.cmp.noise_sigma);
    return run_on_waveform(shard_cfg, wave, bits, phase_ui, noise);
}

BerCount ber_estimate_sharded(const SimConfig& cfg, double phase_ui,
                              int n_shards, int noise_stream) {
    BerCount total;
    for (int i = 0; i < n_shards; ++i) {
        const BerCount c = ber_shard(cfg, phase_ui, n_shards, i, noise_stream);
        total.errors += c.errors;
        total.bits += c.bits;
    }
    return total;
}

BerCount ber_estimate(const SimConfig& cfg, double phase_ui) {
    return ber_shard(cfg, phase_ui, 1, 0, 0);
}

BathtubCurve bathtub(const SimConfig& cfg, int n_phases,
                     std::int64_t per_phase_bits) {
    SimConfig run_cfg = cfg;
    run_cfg.n_bits = per_phase_bits;
    validate(run_cfg);
    require_sweepable(run_cfg, n_phases);

    const BitSequence bits = prbs_generate(run_cfg.prbs, per_phase_bits);
    const Waveform wave = link_waveform(run_cfg, bits);
    const auto noise = per_phase_noise(run_cfg, n_phases, wave.n_ui());
    return bathtub_on_waveform(run_cfg, wave, bits, n_phases, noise);
}

double bathtub_width(const BathtubCurve& curve, double threshold) {
    const std::size_t n = curve.phases.size();
    if (n == 0) throw std::invalid_argument("empty bathtub curve");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("threshold must be in (0, 1)");

    std::size_t qualifying = 0;
    for (double b : curve.ber) qualifying += (b < threshold);
    if (qualifying == 0) return 0.0;
    if (qualifying == n) return 1.0;

    // Minimum-BER phase, first index on ties.
    std::size_t i_min = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (curve.ber[i] < curve.ber[i_min]) i_min = i;
    if (!(curve.ber[i_min] < threshold)) return 0.0;

    const auto prev = [n](std::size_t i) { return (i + n - 1) % n; };
    const auto next = [n](std::size_t i) { return (i + 1) % n; };
    // Circular gap from phase i to the following phase j.
    const auto gap = [&](std::size_t i, std::size_t j) {
        double g = curve.phases[j] - curve.phases[i];
        if (g <= 0.0) g += 1.0;
        return g;
    };

    // Expand the qualifying interval around the minimum. Cannot wrap fully
    // because at least one phase fails.
    std::size_t lo = i_min;
    while (curve.ber[prev(lo)] < threshold) lo = prev(lo);
    std::size_t hi = i_min;
    while (curve.ber[next(hi)] < threshold) hi = next(hi);

    double width = 0.0;
    for (std::size_t i = lo; i != hi; i = next(i)) width += gap(i, next(i));

    // Interpolated crossings into the failing neighbors.
    const std::size_t fl = prev(lo);
    const std::size_t fh = next(hi);
    width += gap(fl, lo) * (threshold - curve.ber[lo]) /
             (curve.ber[fl] - curve.ber[lo]);
    width += gap(hi, fh) * (threshold - curve.ber[hi]) /
             (curve.ber[fh] - curve.ber[hi]);
    return std::min(width, 1.0);
}

int pick_best_code(const std::map<int, double>& widths_by_code) {
    if (widths_by_code.empty())
        throw std::invalid_argument("empty width table");
    int best = widths_by_code.begin()->first;
    double best_width = widths_by_code.begin()->second;
    const auto mid_dist = [](int code) {
        return std::abs(code - 0.5 * DacConfig::max_code);
    };
    for (const auto& [code, width] : widths_by_code) {
        if (width > best_width ||
            (width == best_width && mid_dist(code) < mid_dist(best))) {
            best = code;
            best_width = width;
        }
    }
    return best;
}

CalibrationResult calibrate_offset(const SimConfig& cfg, double threshold,
                                   int n_phases, std::int64_t per_phase_bits) {
    SimConfig run_cfg = cfg;
    run_cfg.n_bits = per_phase_bits;
    run_cfg.taps.beta = 0;
    validate(run_cfg);
    require_sweepable(run_cfg, n_phases);

    const BitSequence bits = prbs_generate(run_cfg.prbs, per_phase_bits);
    const Waveform wave = link_waveform(run_cfg, bits);
    const auto noise = per_phase_noise(run_cfg, n_phases, wave.n_ui());

    CalibrationResult result;
    result.threshold_ber = threshold;
    for (int code = 8; code <= 23; ++code) {
        run_cfg.taps.reg_of = code;
        const BathtubCurve curve =
            bathtub_on_waveform(run_cfg, wave, bits, n_phases, noise);
        result.widths_by_code[code] = bathtub_width(curve, threshold);
    }

    bool any = false;
    for (const auto& [code, width] : result.widths_by_code)
        any = any || width > 0.0;
    if (!any)
        throw calibration_error("offset calibration failed: zero bathtub "
                                "width at every code",
                                result.widths_by_code);

    result.best_reg_of = pick_best_code(result.widths_by_code);
    return result;
}

std::map<int, double> tap_sweep(const SimConfig& cfg, int reg_of,
                                double threshold, int n_phases,
                                std::int64_t per_phase_bits) {
    SimConfig run_cfg = cfg;
    run_cfg.n_bits = per_phase_bits;
    run_cfg.taps.reg_of = reg_of;
    run_cfg.taps.beta = 0;
    validate(run_cfg);
    require_sweepable(run_cfg, n_phases);

    const BitSequence bits = prbs_generate(run_cfg.prbs, per_phase_bits);
    const Waveform wave = link_waveform(run_cfg, bits);
    const auto noise = per_phase_noise(run_cfg, n_phases, wave.n_ui());

    std::map<int, double> widths;
    for (int beta = 0; beta <= 8; ++beta) {
        run_cfg.taps.beta = beta;
        const BathtubCurve curve =
            bathtub_on_waveform(run_cfg, wave, bits, n_phases, noise);
        widths[beta] = bathtub_width(curve, threshold);
    }
    return widths;
}

EyeDiagram eye_histogram(const Waveform& w, int time_bins, int volt_bins) {
    if (time_bins < 2 || volt_bins < 2)
        throw std::invalid_argument("eye histogram needs at least 2x2 bins");

    EyeDiagram eye;
    eye.time_bins = time_bins;
    eye.volt_bins = volt_bins;
    eye.counts.assign(static_cast<std::size_t>(time_bins) * volt_bins, 0);
    if (w.samples.empty()) return eye;

    const auto [lo, hi] =
        std::minmax_element(w.samples.begin(), w.samples.end());
    eye.volt_range = {*lo, *hi};
    const double span = *hi - *lo;
    const int spp = w.samples_per_ui;

    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        const auto t = static_cast<int>(
            (i % static_cast<std::size_t>(spp)) * time_bins / spp);
        int v = 0;
        if (span > 0.0)
            v = std::min(static_cast<int>((w.samples[i] - *lo) / span * volt_bins),
                         volt_bins - 1);
        ++eye.counts[static_cast<std::size_t>(t) * volt_bins + v];
    }
    return eye;
}

SimRun simulate_run(const SimConfig& cfg, double phase_ui) {
    validate(cfg);

    const BitSequence bits = prbs_generate(cfg.prbs, cfg.n_bits);
    const Waveform wave = link_waveform(cfg, bits);
    const std::vector<double> noise = gaussian_noise(
        derive_stream(cfg.seed, 0), wave.n_ui(), cfg.cmp.noise_sigma);
    const BiasVoltages bias = decode_bias(compute_words(cfg.taps), cfg.dac);

    SimRun run;
    run.trace = run_dfe(wave, phase_ui, bias, cfg.cmp, cfg.loop, noise);
    run.count = count_errors(run.trace, bits, cfg, phase_ui);

    // Realized recurrence x[n] = v[n] - alpha_eff*y[n-1] - residual + noise.
    const EffectiveParams eff = effective_params(cfg.taps, cfg.dac, cfg.cmp.g_fb);
    const double k = cfg.cmp.fb_polarity * cfg.loop.settle_factor;
    run.alpha_eff = -k * eff.alpha_eff;
    run.residual_offset = cfg.cmp.v_of - k * eff.v_ofc_eff;
    return run;
}

} // namespace dfesim
