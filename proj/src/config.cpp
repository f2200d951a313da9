#include "dfesim/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "dfesim/errors.hpp"

namespace dfesim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw config_error("config: " + key + " is not a number (got '" +
                           value + "')");
    return v;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw config_error("config: " + key + " is not an integer (got '" +
                           value + "')");
    return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    if (!value.empty() && value[0] == '-')
        throw config_error("config: " + key + " must be non-negative (got '" +
                           value + "')");
    const unsigned long long v = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw config_error("config: " + key + " is not an integer (got '" +
                           value + "')");
    return v;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(line_no) +
                               " is not a key = value pair");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error("config: empty key on line " +
                               std::to_string(line_no));
        if (kv.count(key))
            throw config_error("config: duplicate key '" + key + "'");
        kv[key] = value;
    }

    RunConfig rc;
    const auto take = [&kv](const std::string& key) {
        std::string v;
        const auto it = kv.find(key);
        if (it != kv.end()) {
            v = it->second;
            kv.erase(it);
        }
        return v;
    };
    const auto set_double = [&](const std::string& key, double& dst) {
        const std::string v = take(key);
        if (!v.empty()) dst = parse_double(key, v);
    };
    const auto set_mv = [&](const std::string& key, double& dst_volts) {
        const std::string v = take(key);
        if (!v.empty()) dst_volts = parse_double(key, v) * 1e-3;
    };
    const auto set_int = [&](const std::string& key, auto& dst) {
        const std::string v = take(key);
        if (!v.empty()) dst = static_cast<std::decay_t<decltype(dst)>>(
            parse_int(key, v));
    };

    SimConfig& sim = rc.sim;
    set_double("bitrate_hz", rc.bitrate_hz);
    set_int("samples_per_ui", sim.samples_per_ui);
    set_int("n_bits", sim.n_bits);
    set_int("warmup_bits", sim.warmup_bits);
    if (const std::string v = take("seed"); !v.empty())
        sim.seed = parse_uint("seed", v);
    set_double("phase_ui", rc.phase_ui);
    set_int("prbs.order", sim.prbs.order);
    set_double("channel.tau_ui", sim.channel.tau_ui);
    set_double("channel.ffe_tap", sim.channel.ffe_tap);
    set_mv("channel.amplitude_mv", sim.channel.amplitude);
    set_double("channel.delay_ui", sim.channel.delay_ui);
    set_mv("cmp.v_of_mv", sim.cmp.v_of);
    set_mv("cmp.noise_sigma_mv", sim.cmp.noise_sigma);
    set_double("cmp.g_fb", sim.cmp.g_fb);
    set_int("cmp.fb_polarity", sim.cmp.fb_polarity);
    set_int("loop.latency_ui", sim.loop.latency_ui);
    set_double("loop.settle_factor", sim.loop.settle_factor);
    set_mv("dac.v_cm_mv", sim.dac.v_cm);
    set_int("taps.reg_of", sim.taps.reg_of);
    set_int("taps.beta", sim.taps.beta);
    set_double("measure.threshold_ber", rc.threshold_ber);
    set_int("measure.n_phases", rc.n_phases);
    if (const std::string v = take("out_dir"); !v.empty()) rc.out_dir = v;

    if (!kv.empty())
        throw config_error("config: unknown key '" + kv.begin()->first + "'");

    if (!(rc.bitrate_hz > 0.0))
        throw config_error("config: bitrate_hz must be > 0");
    if (!(rc.phase_ui >= 0.0 && rc.phase_ui < 1.0))
        throw config_error("config: phase_ui must be in [0, 1)");
    if (!(rc.threshold_ber > 0.0 && rc.threshold_ber < 1.0))
        throw config_error("config: measure.threshold_ber must be in (0, 1)");
    if (rc.n_phases < 8)
        throw config_error("config: measure.n_phases must be >= 8 (got " +
                           std::to_string(rc.n_phases) + ")");

    sim.ui_seconds = 1.0 / rc.bitrate_hz;
    validate(sim);
    // All randomness descends from `seed`; the LFSR start state is derived.
    sim.prbs.seed = derive_prbs_seed(
        static_cast<std::uint32_t>(sim.seed ^ (sim.seed >> 32)), 0,
        sim.prbs.order);
    return rc;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("config: cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace dfesim
