#include "dfesim/bias_dac.hpp"

#include <stdexcept>
#include <string>

#include "dfesim/errors.hpp"

namespace dfesim {

void validate(const TapCodes& t) {
    if (t.reg_of < 8 || t.reg_of > 23)
        throw config_error("taps.reg_of out of range 8..23 (got " +
                           std::to_string(t.reg_of) + ")");
    if (t.beta < 0 || t.beta > 8)
        throw config_error("taps.beta out of range 0..8 (got " +
                           std::to_string(t.beta) + ")");
}

BiasWords compute_words(const TapCodes& t) {
    validate(t);
    BiasWords w;
    w.w_h1 = t.reg_of + t.beta;
    w.w_l1 = t.reg_of - t.beta;
    w.w_h2 = DacConfig::max_code - t.reg_of + t.beta;
    w.w_l2 = DacConfig::max_code - t.reg_of - t.beta;
    return w;
}

double dac_level(int code, const DacConfig& cfg) {
    if (code < 0 || code > DacConfig::max_code)
        throw std::invalid_argument("dac code out of range 0..31 (got " +
                                    std::to_string(code) + ")");
    return cfg.v_cm + (code - 0.5 * DacConfig::max_code) * cfg.lsb();
}

BiasVoltages decode_bias(const BiasWords& w, const DacConfig& cfg) {
    BiasVoltages v;
    v.v_h1 = dac_level(w.w_h1, cfg);
    v.v_l1 = dac_level(w.w_l1, cfg);
    v.v_h2 = dac_level(w.w_h2, cfg);
    v.v_l2 = dac_level(w.w_l2, cfg);
    return v;
}

EffectiveParams effective_params(const TapCodes& t, const DacConfig& cfg,
                                 double g_fb) {
    validate(t);
    if (!(g_fb > 0.0))
        throw config_error("g_fb must be > 0");
    const double lsb = cfg.lsb();
    EffectiveParams p;
    p.alpha_eff = g_fb * (2.0 * t.beta * lsb);
    p.v_ofc_eff = g_fb * ((2.0 * t.reg_of - DacConfig::max_code) * lsb);
    return p;
}

BiasVoltages ideal_bias_voltages(double v_cm, double v_offset, double alpha) {
    BiasVoltages v;
    v.v_h1 = v_cm + v_offset / 2.0 + alpha / 2.0;
    v.v_l1 = v_cm + v_offset / 2.0 - alpha / 2.0;
    v.v_h2 = v_cm - v_offset / 2.0 + alpha / 2.0;
    v.v_l2 = v_cm - v_offset / 2.0 - alpha / 2.0;
    return v;
}

double feedback_factor(const TapCodes& t, const DacConfig& cfg, double g_fb,
                       double swing) {
    if (!(swing > 0.0))
        throw config_error("swing must be > 0");
    return effective_params(t, cfg, g_fb).alpha_eff / (2.0 * swing);
}

} // namespace dfesim
