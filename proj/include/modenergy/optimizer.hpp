#pragma once

// Constellation-size optimization and scheme selection.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "modenergy/energy.hpp"
#include "modenergy/errors.hpp"
#include "modenergy/numeric.hpp"
#include "modenergy/scenario.hpp"
#include "modenergy/schemes.hpp"

namespace modenergy {

/// Largest power of two M with M / log2(M) <= (zeta B / N)(T_N - T_tr).
inline unsigned max_constellation(const FrameTiming& timing, unsigned zeta = 1)
{
    timing.validate();
    if (zeta != 1 && zeta != 2)
        throw invalid_input("max_constellation: zeta must be 1 or 2");
    const double rhs = zeta * timing.bandwidth / static_cast<double>(timing.n_bits) *
                       (timing.frame_period - timing.transient);
    if (rhs < 2.0)
        throw invalid_input("max_constellation: even M = 2 overruns the frame");
    unsigned best = 2;
    for (unsigned b = 1; b < 31; ++b) {
        const double m = std::ldexp(1.0, int(b));
        if (m / b <= rhs)
            best = 1u << b;
        else if (b >= 2)
            break;   // M/log2 M is increasing from M = 4 on
    }
    return best;
}

enum class SchemeFamily { nc_mfsk, mqam };

struct OptimizationResult {
    Scheme scheme;
    EnergyBreakdown breakdown;
    unsigned m_max = 0;
};

/// Exhaustive scan: NC-MFSK over powers of two in [2, M_max], MQAM over every
/// integer in [4, M_max]. Sizes that overrun the frame are skipped. Ties go to
/// the smaller M.
inline OptimizationResult optimize_constellation(SchemeFamily family, double p_target,
                                                 const LinkBudget& link,
                                                 const FadingModel& fading,
                                                 const FrameTiming& timing,
                                                 const RadioParameters& radio,
                                                 std::optional<unsigned> m_max = std::nullopt,
                                                 unsigned zeta = 1)
{
    const unsigned limit = m_max ? *m_max : max_constellation(timing, zeta);
    std::vector<Scheme> grid;
    if (family == SchemeFamily::nc_mfsk) {
        for (unsigned m = 2; m <= limit && m != 0; m <<= 1)
            grid.push_back(NcMfsk{m, zeta});
    } else {
        for (unsigned m = 4; m <= limit; ++m)
            grid.push_back(Mqam{m});
    }

    std::optional<OptimizationResult> best;
    for (const Scheme& s : grid) {
        EnergyBreakdown e;
        try {
            e = total_frame_energy(s, p_target, link, fading, timing, radio);
        } catch (const frame_overrun&) {
            continue;
        }
        if (!best || e.total < best->breakdown.total)
            best = OptimizationResult{s, e, limit};
    }
    if (!best)
        throw frame_overrun("optimize_constellation: no constellation fits the frame");
    return *best;
}

/// (M - 1)(1 - 1/sqrt(M)) = M - 1 - sqrt(M) + 1/sqrt(M)
inline double intersection_lhs(double m)
{
    return (m - 1.0) * (1.0 - 1.0 / std::sqrt(m));
}

enum class IntersectionRegime {
    lower,      // circuit term never dominates: optimum at M = 4
    interior,
    upper,      // optimum pinned at M_max
};

struct IntersectionReport {
    IntersectionRegime regime;
    double root;   // real-valued M where RF and circuit terms cross
    double phi;
};

/// Real M where the MQAM RF term equals the circuit term:
/// (M-1)(1-1/sqrt M)(1 + alpha(M)) = phi, with
/// phi = (P_c - P_amp)/(2B) * 3 P_s Omega / (4 L_d N0).
/// The root is found over [1, M_max]; regime says whether it is interior to [4, M_max].
inline IntersectionReport mqam_intersection_m(const LinkBudget& link, const RadioParameters& radio,
                                              double p_target, const FrameTiming& timing,
                                              double omega = 1.0,
                                              std::optional<unsigned> m_max = std::nullopt)
{
    radio.validate();
    timing.validate();
    if (!(p_target > 0.0) || !(p_target < 1.0))
        throw invalid_input("mqam_intersection_m: P_s must lie in (0, 1)");
    const unsigned limit = m_max ? *m_max : max_constellation(timing);
    const CircuitPowers cp = circuit_powers(Mqam{}, radio);
    const double phi = (cp.tx_minus_amp + cp.rx) / (2.0 * timing.bandwidth) * 3.0 * p_target *
                       omega / (4.0 * path_loss_gain(link) * radio.n0);

    const auto alpha = [&](double m) {
        const double root = std::sqrt(m);
        return 3.0 * (root - 1.0) / (root + 1.0) / radio.vartheta - 1.0;
    };
    const auto g = [&](double m) { return intersection_lhs(m) * (1.0 + alpha(m)) - phi; };

    IntersectionReport rep{IntersectionRegime::interior, 0.0, phi};
    const double top = static_cast<double>(limit);
    if (g(top) <= 0.0) {
        rep.regime = IntersectionRegime::upper;
        rep.root = top;
        return rep;
    }
    if (phi <= 0.0) {
        rep.regime = IntersectionRegime::lower;
        rep.root = 1.0;
        return rep;
    }
    rep.root = numeric::bisect(g, 1.0, top);
    if (rep.root <= 4.0)
        rep.regime = IntersectionRegime::lower;
    return rep;
}

struct RankedScheme {
    Scheme scheme;
    EnergyBreakdown breakdown;
};

struct Selection {
    RankedScheme winner;
    std::vector<RankedScheme> ranking;   // ascending total energy
};

/// Optimized NC-MFSK vs optimized MQAM vs DOQPSK at one (d, eta). OOK lives in
/// a different bandwidth regime and is compared per bit instead.
inline Selection select_modulation(const Scenario& sc, double d, double eta, double p_target)
{
    const LinkBudget link = sc.link(d, eta);
    std::vector<RankedScheme> r;
    const auto fsk = optimize_constellation(SchemeFamily::nc_mfsk, p_target, link, sc.fading,
                                            sc.timing, sc.radio);
    r.push_back({fsk.scheme, fsk.breakdown});
    const auto qam = optimize_constellation(SchemeFamily::mqam, p_target, link, sc.fading,
                                            sc.timing, sc.radio, fsk.m_max);
    r.push_back({qam.scheme, qam.breakdown});
    try {
        r.push_back({DiffOqpsk{},
                     total_frame_energy(DiffOqpsk{}, p_target, link, sc.fading, sc.timing,
                                        sc.radio)});
    } catch (const frame_overrun&) {
    }
    std::stable_sort(r.begin(), r.end(), [](const RankedScheme& a, const RankedScheme& b) {
        return a.breakdown.total < b.breakdown.total;
    });
    return {r.front(), r};
}

struct PerBitRow {
    double d;
    double e_b_fsk;   // optimized NC-MFSK, J/bit
    double e_b_ook;
    unsigned m_fsk;
};

inline std::vector<PerBitRow> compare_per_bit(const Scenario& carrier, const Scenario& ook,
                                              double p_target, const std::vector<double>& d_grid,
                                              double eta)
{
    std::vector<PerBitRow> rows;
    rows.reserve(d_grid.size());
    for (double d : d_grid) {
        const auto fsk = optimize_constellation(SchemeFamily::nc_mfsk, p_target,
                                                carrier.link(d, eta), carrier.fading,
                                                carrier.timing, carrier.radio);
        const auto e_ook = total_frame_energy(Ook{}, p_target, ook.link(d, eta), ook.fading,
                                              ook.timing, ook.radio);
        rows.push_back({d, fsk.breakdown.total / double(carrier.timing.n_bits),
                        e_ook.total / double(ook.timing.n_bits),
                        constellation_size(fsk.scheme)});
    }
    return rows;
}

} // namespace modenergy
