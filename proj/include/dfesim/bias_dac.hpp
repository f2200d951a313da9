#pragma once

namespace dfesim {

/// Digital control inputs: 5-bit offset code and 4-bit tap code.
struct TapCodes {
    int reg_of = 15; // offset code, 8..23
    int beta = 0;    // tap code, 0..8
};

/// The four 5-bit DAC words driving the switch matrices.
struct BiasWords {
    int w_h1 = 0;
    int w_l1 = 0;
    int w_h2 = 0;
    int w_l2 = 0;
};

/// 5-bit resistor-string DAC, 32 levels spanning v_cm +/- full_scale.
/// Codes 0 and 31 sit exactly at the range ends, so one LSB is
/// 2*full_scale/31 and the midpoint falls between codes 15 and 16.
struct DacConfig {
    double v_cm = 0.600;      // volts
    double full_scale = 0.025; // half-range about v_cm, volts

    static constexpr int n_bits = 5;
    static constexpr int n_levels = 32;
    static constexpr int max_code = 31;

    double lsb() const { return 2.0 * full_scale / (n_levels - 1); }
};

/// The four analog feedback bias levels.
struct BiasVoltages {
    double v_h1 = 0.0;
    double v_l1 = 0.0;
    double v_h2 = 0.0;
    double v_l2 = 0.0;
};

/// Tap weight and offset correction referred to the comparator main input.
struct EffectiveParams {
    double alpha_eff = 0.0;  // volts
    double v_ofc_eff = 0.0;  // volts
};

/// Throws config_error on out-of-range codes. Codes are never clamped.
void validate(const TapCodes& t);

/// Register logic:
///   w_h1 = reg_of + beta        w_l1 = reg_of - beta
///   w_h2 = 31 - reg_of + beta   w_l2 = 31 - reg_of - beta
BiasWords compute_words(const TapCodes& t);

/// v_cm + (code - 15.5) * lsb, strictly increasing in code.
double dac_level(int code, const DacConfig& cfg);

/// Element-wise dac_level of the four words.
BiasVoltages decode_bias(const BiasWords& w, const DacConfig& cfg);

/// alpha_raw = 2*beta*lsb, v_ofc_raw = (2*reg_of - 31)*lsb, both scaled by
/// the feedback-port gain ratio g_fb.
EffectiveParams effective_params(const TapCodes& t, const DacConfig& cfg,
                                 double g_fb);

/// Continuous-valued bias levels:
///   v_h1 = v_cm + v_offset/2 + alpha/2   v_l1 = v_cm + v_offset/2 - alpha/2
///   v_h2 = v_cm - v_offset/2 + alpha/2   v_l2 = v_cm - v_offset/2 - alpha/2
/// decode_bias(compute_words(t)) equals this evaluated at the quantized
/// (v_ofc_raw, alpha_raw) exactly.
BiasVoltages ideal_bias_voltages(double v_cm, double v_offset, double alpha);

/// Tap weight normalized to the peak-to-peak differential swing:
/// alpha_eff / (2 * swing).
double feedback_factor(const TapCodes& t, const DacConfig& cfg, double g_fb,
                       double swing);

} // namespace dfesim
