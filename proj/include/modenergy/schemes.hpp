#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "modenergy/channel.hpp"
#include "modenergy/errors.hpp"
#include "modenergy/frame.hpp"

namespace modenergy {

/// Non-coherent M-ary FSK; zeta = 1 for non-coherent tone spacing.
struct NcMfsk {
    unsigned m = 2;
    unsigned zeta = 1;
};

/// Coherent square-grid MQAM. M is any integer >= 4; sqrt(M) and log2(M) are
/// evaluated as reals so the optimizer can scan every integer.
struct Mqam {
    unsigned m = 4;
};

/// Differentially encoded offset QPSK.
struct DiffOqpsk {};

/// On-off keying with duty cycle T_p / T_s.
struct Ook {
    double duty_cycle = 0.5;
};

using Scheme = std::variant<NcMfsk, Mqam, DiffOqpsk, Ook>;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline bool is_power_of_two(unsigned m) { return m != 0 && (m & (m - 1)) == 0; }

inline void validate(const Scheme& scheme)
{
    std::visit(overloaded{
                   [](const NcMfsk& s) {
                       if (s.m < 2 || !is_power_of_two(s.m))
                           throw invalid_input("NcMfsk: M must be a power of two >= 2");
                       if (s.zeta != 1 && s.zeta != 2)
                           throw invalid_input("NcMfsk: zeta must be 1 or 2");
                   },
                   [](const Mqam& s) {
                       if (s.m < 4)
                           throw invalid_input("Mqam: M must be >= 4");
                   },
                   [](const DiffOqpsk&) {},
                   [](const Ook& s) {
                       if (!(s.duty_cycle > 0.0) || s.duty_cycle > 1.0)
                           throw invalid_input("Ook: duty cycle must lie in (0, 1]");
                   },
               },
               scheme);
}

/// Short human-readable name, e.g. "NC-BFSK", "NC-8FSK", "64QAM".
inline std::string label(const Scheme& scheme)
{
    return std::visit(overloaded{
                          [](const NcMfsk& s) -> std::string {
                              return s.m == 2 ? "NC-BFSK" : "NC-" + std::to_string(s.m) + "FSK";
                          },
                          [](const Mqam& s) -> std::string { return std::to_string(s.m) + "QAM"; },
                          [](const DiffOqpsk&) -> std::string { return "DOQPSK"; },
                          [](const Ook&) -> std::string { return "OOK"; },
                      },
                      scheme);
}

/// Constellation size; 4 for OQPSK, 2 for OOK.
inline unsigned constellation_size(const Scheme& scheme)
{
    return std::visit(overloaded{
                          [](const NcMfsk& s) { return s.m; },
                          [](const Mqam& s) { return s.m; },
                          [](const DiffOqpsk&) { return 4u; },
                          [](const Ook&) { return 2u; },
                      },
                      scheme);
}

inline double bits_per_symbol(const Scheme& scheme)
{
    return std::log2(static_cast<double>(constellation_size(scheme)));
}

/// Circuit and amplifier parameters. Member defaults are the carrier-scheme
/// evaluation set; `ook_defaults()` swaps in the UWB front end.
struct RadioParameters {
    double chi_e = 0.8;
    double n0 = 1e-21;        // J (-180 dBm/Hz)

    double p_sy = 10e-3;      // frequency synthesizer
    double p_filt = 2.5e-3;   // transmit filter
    double p_filr = 2.5e-3;   // receive filter
    double p_lna = 9e-3;
    double p_ifa = 3e-3;
    double p_ed = 3e-3;       // envelope detector
    double p_adc = 7e-3;
    double p_dac = 7e-3;
    double p_mix = 7e-3;
    double p_pg = 0.0;        // pulse generator (OOK)
    double p_int = 0.0;       // integrator (OOK)

    double alpha_fsk = 0.33;
    double alpha_oqpsk = 0.33;
    double alpha_ook = 0.33;
    double vartheta = 0.35;   // MQAM drain efficiency

    static RadioParameters carrier_defaults() { return {}; }

    static RadioParameters ook_defaults()
    {
        RadioParameters r;
        r.p_sy = 0.0;
        r.p_dac = 0.0;
        r.p_mix = 0.0;
        r.p_ifa = 0.0;
        r.p_pg = 675e-6;
        r.p_lna = 3.1e-3;
        r.p_ed = 3e-3;
        r.p_filt = 2.5e-3;
        r.p_filr = 2.5e-3;
        r.p_adc = 7e-3;
        r.p_int = 3e-3;
        return r;
    }

    void validate() const
    {
        if (!(chi_e > 0.0) || chi_e > 1.0)
            throw invalid_input("RadioParameters: chi_e must lie in (0, 1]");
        if (!(n0 > 0.0))
            throw invalid_input("RadioParameters: N0 must be positive");
        for (double p : {p_sy, p_filt, p_filr, p_lna, p_ifa, p_ed, p_adc, p_dac, p_mix, p_pg, p_int})
            if (!(p >= 0.0) || !std::isfinite(p))
                throw invalid_input("RadioParameters: block powers must be non-negative");
        if (!(vartheta > 0.0))
            throw invalid_input("RadioParameters: vartheta must be positive");
    }
};

inline double bandwidth_efficiency(const Scheme& scheme)
{
    validate(scheme);
    return std::visit(overloaded{
                          [](const NcMfsk& s) {
                              return s.zeta * std::log2(double(s.m)) / double(s.m);
                          },
                          [](const Mqam& s) { return 2.0 * std::log2(double(s.m)); },
                          [](const DiffOqpsk&) { return 2.0; },
                          [](const Ook& s) { return s.duty_cycle; },
                      },
                      scheme);
}

/// Active-mode duration T_ac needed to move N bits. Throws frame_overrun if
/// it does not fit in T_N - T_tr.
inline double active_duration(const Scheme& scheme, const FrameTiming& timing)
{
    validate(scheme);
    timing.validate();
    const double n = static_cast<double>(timing.n_bits);
    const double b = timing.bandwidth;
    const double t_ac = std::visit(
        overloaded{
            [&](const NcMfsk& s) {
                return s.m * n / (s.zeta * b * std::log2(double(s.m)));
            },
            [&](const Mqam& s) { return n / (2.0 * b * std::log2(double(s.m))); },
            [&](const DiffOqpsk&) { return n / (2.0 * b); },
            [&](const Ook& s) { return n / (s.duty_cycle * b); },
        },
        scheme);
    if (t_ac > timing.max_active())
        throw frame_overrun(label(scheme) + ": active duration " + std::to_string(t_ac) +
                            " s exceeds T_N - T_tr = " + std::to_string(timing.max_active()) +
                            " s");
    return t_ac;
}

namespace detail {

inline double oqpsk_gain() { return std::sqrt((1.0 + std::sqrt(2.0)) / 2.0); }
inline double oqpsk_slope() { return 2.0 - std::sqrt(2.0); }

} // namespace detail

/// Closed-form Rayleigh SER upper bound without clamping; OQPSK exceeds 1 near 0 dB.
inline double ser_bound_unclamped(const Scheme& scheme, double gamma_bar)
{
    validate(scheme);
    if (!(gamma_bar >= 0.0))
        throw invalid_input("ser_bound: gamma_bar must be non-negative");
    return std::visit(
        overloaded{
            [&](const NcMfsk& s) {
                const double pair = 1.0 / (2.0 + gamma_bar);
                if (s.m == 2)
                    return pair;
                return -std::expm1(double(s.m - 1) * std::log1p(-pair));
            },
            [&](const Mqam& s) {
                const double m = s.m;
                return 4.0 * (m - 1.0) / (3.0 * gamma_bar + 2.0 * (m - 1.0)) *
                       (1.0 - 1.0 / std::sqrt(m));
            },
            [&](const DiffOqpsk&) {
                return detail::oqpsk_gain() * 4.0 / (detail::oqpsk_slope() * gamma_bar + 4.0);
            },
            [&](const Ook&) { return 1.0 / (gamma_bar + 2.0); },
        },
        scheme);
}

inline double ser_bound(const Scheme& scheme, double gamma_bar)
{
    return std::min(1.0, ser_bound_unclamped(scheme, gamma_bar));
}

/// Average SNR at which the Rayleigh bound equals `p_target`.
inline double required_snr(const Scheme& scheme, double p_target)
{
    validate(scheme);
    const double ceiling = ser_bound_unclamped(scheme, 0.0);
    if (!(p_target > 0.0) || !(p_target < ceiling))
        throw unattainable_target(label(scheme) + ": SER target " + std::to_string(p_target) +
                                  " outside (0, " + std::to_string(ceiling) + ")");
    return std::visit(
        overloaded{
            [&](const NcMfsk& s) {
                if (s.m == 2)
                    return 1.0 / p_target - 2.0;
                // 1 - (1 - P)^(1/(M-1)), kept accurate for small P
                const double pair = -std::expm1(std::log1p(-p_target) / double(s.m - 1));
                return 1.0 / pair - 2.0;
            },
            [&](const Mqam& s) {
                const double m = s.m;
                return 2.0 * (m - 1.0) / 3.0 *
                       (2.0 * (1.0 - 1.0 / std::sqrt(m)) / p_target - 1.0);
            },
            [&](const DiffOqpsk&) {
                return (4.0 * detail::oqpsk_gain() / p_target - 4.0) / detail::oqpsk_slope();
            },
            [&](const Ook&) { return 1.0 / p_target - 2.0; },
        },
        scheme);
}

/// Transmit energy per symbol E_t meeting `p_target` over Rayleigh fading.
inline double required_symbol_energy(const Scheme& scheme, double p_target,
                                     const LinkBudget& link, const Rayleigh& fading, double n0)
{
    if (!(n0 > 0.0))
        throw invalid_input("required_symbol_energy: N0 must be positive");
    if (!(fading.omega > 0.0))
        throw invalid_input("required_symbol_energy: omega must be positive");
    return required_snr(scheme, p_target) * path_loss_gain(link) * n0 / fading.omega;
}

struct CircuitPowers {
    double tx_minus_amp;   // sensor-side blocks excluding the power amplifier
    double rx;             // sink-side blocks
};

/// Block-sum circuit powers. The NC-MFSK sink carries one filter + envelope
/// detector per tone. For OOK the transmit filter is charged separately, only
/// while a pulse is on, so it is not part of `tx_minus_amp`.
inline CircuitPowers circuit_powers(const Scheme& scheme, const RadioParameters& r)
{
    validate(scheme);
    return std::visit(
        overloaded{
            [&](const NcMfsk& s) {
                return CircuitPowers{r.p_sy + r.p_filt,
                                     r.p_lna + s.m * (r.p_filr + r.p_ed) + r.p_ifa + r.p_adc};
            },
            [&](const Mqam&) {
                return CircuitPowers{r.p_dac + r.p_sy + r.p_mix + r.p_filt,
                                     r.p_lna + r.p_mix + r.p_sy + r.p_filr + r.p_ifa + r.p_adc};
            },
            [&](const DiffOqpsk&) {
                return CircuitPowers{r.p_dac + r.p_sy + r.p_mix + r.p_filt,
                                     r.p_lna + r.p_mix + r.p_sy + r.p_filr + r.p_ifa + r.p_adc};
            },
            [&](const Ook&) {
                return CircuitPowers{r.p_pg, r.p_lna + r.p_ed + r.p_filr + r.p_int + r.p_adc};
            },
        },
        scheme);
}

/// P_Amp = alpha * P_t. MQAM follows alpha = xi/vartheta - 1 with
/// xi = 3 (sqrt(M) - 1) / (sqrt(M) + 1).
inline double amplifier_coefficient(const Scheme& scheme, const RadioParameters& r = {})
{
    validate(scheme);
    return std::visit(overloaded{
                          [&](const NcMfsk&) { return r.alpha_fsk; },
                          [&](const Mqam& s) {
                              const double root = std::sqrt(double(s.m));
                              const double xi = 3.0 * (root - 1.0) / (root + 1.0);
                              return xi / r.vartheta - 1.0;
                          },
                          [&](const DiffOqpsk&) { return r.alpha_oqpsk; },
                          [&](const Ook&) { return r.alpha_ook; },
                      },
                      scheme);
}

/// Number of energy-bearing transmissions per frame: symbols for the carrier
/// schemes, expected "1" pulses (N/2) for OOK.
inline double transmissions_per_frame(const Scheme& scheme, const FrameTiming& timing)
{
    const double n = static_cast<double>(timing.n_bits);
    if (std::holds_alternative<Ook>(scheme))
        return 0.5 * n;
    return n / bits_per_symbol(scheme);
}

} // namespace modenergy
