#pragma once

#include <cmath>
#include <cstdint>

#include "modenergy/errors.hpp"

namespace modenergy {

/// Duty-cycled frame: transient, active and sleep phases share a fixed period.
///
/// Sleep time is the slack T_N - T_tr - T_ac and draws no energy.
struct FrameTiming {
    std::uint64_t n_bits = 8192;     // payload bits per frame
    double frame_period = 1.4;       // T_N, s
    double transient = 5e-6;         // T_tr, s
    double bandwidth = 62.5e3;       // B, Hz

    /// Longest active-mode duration that still fits in the frame.
    double max_active() const { return frame_period - transient; }

    void validate() const
    {
        if (n_bits < 1)
            throw invalid_input("FrameTiming: N must be >= 1");
        if (!(frame_period > 0.0) || !std::isfinite(frame_period))
            throw invalid_input("FrameTiming: T_N must be positive");
        if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
            throw invalid_input("FrameTiming: B must be positive");
        if (!(transient >= 0.0) || !(transient < frame_period))
            throw invalid_input("FrameTiming: require 0 <= T_tr < T_N");
    }
};

/// Per-frame energy split, in joules. All terms already include 1/chi_e.
struct EnergyBreakdown {
    double rf_tx = 0.0;            // radiated energy plus amplifier overhead
    double circuit_active = 0.0;   // non-amplifier blocks, sensor + sink, over T_ac
    double transient = 0.0;        // start-up
    double total = 0.0;

    static EnergyBreakdown from_parts(double rf, double circuit, double start_up)
    {
        return {rf, circuit, start_up, rf + circuit + start_up};
    }
};

/// E_N = [(P_c + P_t) T_ac + P_tr T_tr] / chi_e.
inline double frame_energy(double p_circuit, double p_transmit, double t_active,
                           double p_transient, double t_transient, double chi_e)
{
    if (!(chi_e > 0.0) || chi_e > 1.0)
        throw invalid_input("frame_energy: chi_e must lie in (0, 1]");
    if (p_circuit < 0.0 || p_transmit < 0.0 || t_active < 0.0 || p_transient < 0.0 ||
        t_transient < 0.0)
        throw invalid_input("frame_energy: powers and durations must be non-negative");
    return ((p_circuit + p_transmit) * t_active + p_transient * t_transient) / chi_e;
}

} // namespace modenergy
