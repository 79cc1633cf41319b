#pragma once

// Total N-bit frame energy per scheme.

#include <cmath>
#include <cstdint>

#include "modenergy/channel.hpp"
#include "modenergy/errors.hpp"
#include "modenergy/frame.hpp"
#include "modenergy/mc_oracle.hpp"
#include "modenergy/schemes.hpp"

namespace modenergy {

/// Average SNR needed for `p_target`. Rayleigh uses the closed-form
/// inversion, Rician the quadrature inversion.
inline double required_average_snr(const Scheme& scheme, double p_target,
                                   const FadingModel& fading, const InversionOptions& opt = {})
{
    validate(fading);
    if (std::holds_alternative<Rayleigh>(fading))
        return required_snr(scheme, p_target);
    return invert_ser_numeric(scheme, p_target, fading, opt);
}

/// E_t = gamma_bar L_d N0 / E|h|^2
inline double symbol_energy_for_snr(double gamma_bar, const LinkBudget& link,
                                    const FadingModel& fading, double n0)
{
    return gamma_bar * path_loss_gain(link) * n0 / mean_square(fading);
}

namespace detail {

inline EnergyBreakdown ook_energy(double ones, double e_t, const Ook& ook,
                                  const FrameTiming& timing, const RadioParameters& r)
{
    const double t_ac = active_duration(ook, timing);
    const double t_pulse = ook.duty_cycle * t_ac / static_cast<double>(timing.n_bits);
    const CircuitPowers cp = circuit_powers(ook, r);
    const double rf = (1.0 + amplifier_coefficient(ook, r)) * ones * e_t / r.chi_e;
    const double circuit = ((cp.rx + cp.tx_minus_amp) * t_ac + ones * t_pulse * r.p_filt) / r.chi_e;
    const double start_up = 2.0 * r.p_pg * timing.transient / r.chi_e;
    return EnergyBreakdown::from_parts(rf, circuit, start_up);
}

} // namespace detail

/// Per-frame energy split for one scheme at SER target `p_target`.
///
/// Carrier schemes: RF = (1+alpha) E_t (N / log2 M) / chi_e, circuit =
/// (P_ct - P_amp + P_cr) T_ac / chi_e, transient = 2 P_sy T_tr / chi_e.
/// OOK returns the expectation over the number of "1" bits, E[L] = N/2.
inline EnergyBreakdown total_frame_energy(const Scheme& scheme, double p_target,
                                          const LinkBudget& link, const FadingModel& fading,
                                          const FrameTiming& timing, const RadioParameters& radio,
                                          const InversionOptions& opt = {})
{
    validate(scheme);
    timing.validate();
    radio.validate();
    const double t_ac = active_duration(scheme, timing);
    const double gamma = required_average_snr(scheme, p_target, fading, opt);
    const double e_t = symbol_energy_for_snr(gamma, link, fading, radio.n0);

    if (const auto* ook = std::get_if<Ook>(&scheme))
        return detail::ook_energy(transmissions_per_frame(scheme, timing), e_t, *ook, timing,
                                  radio);

    const CircuitPowers cp = circuit_powers(scheme, radio);
    const double rf = (1.0 + amplifier_coefficient(scheme, radio)) * e_t *
                      transmissions_per_frame(scheme, timing) / radio.chi_e;
    const double circuit = (cp.tx_minus_amp + cp.rx) * t_ac / radio.chi_e;
    const double start_up = 2.0 * radio.p_sy * timing.transient / radio.chi_e;
    return EnergyBreakdown::from_parts(rf, circuit, start_up);
}

/// OOK frame energy given exactly `l_ones` "1" pulses in the frame.
inline double ook_frame_energy_conditional(std::uint64_t l_ones, const LinkBudget& link,
                                           const FrameTiming& timing,
                                           const RadioParameters& radio, double p_target,
                                           const FadingModel& fading = Rayleigh{},
                                           const Ook& ook = {})
{
    timing.validate();
    radio.validate();
    if (l_ones > timing.n_bits)
        throw invalid_input("ook_frame_energy_conditional: L must lie in [0, N]");
    const double gamma = required_average_snr(ook, p_target, fading);
    const double e_t = symbol_energy_for_snr(gamma, link, fading, radio.n0);
    return detail::ook_energy(static_cast<double>(l_ones), e_t, ook, timing, radio).total;
}

} // namespace modenergy
