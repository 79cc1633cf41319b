#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <type_traits>
#include <variant>

#include "modenergy/errors.hpp"

namespace modenergy {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// Power-law path loss L_d = M_l * d^eta * L_1.
struct LinkBudget {
    double distance = 1.0;             // d, m
    double path_loss_exponent = 3.0;   // eta
    double margin_db = 40.0;           // M_l
    double ref_gain_db = 30.0;         // L_1, gain factor at 1 m

    void validate() const
    {
        if (!(distance > 0.0) || !std::isfinite(distance))
            throw invalid_input("LinkBudget: distance must be positive");
        if (!(path_loss_exponent >= 1.0) || !std::isfinite(path_loss_exponent))
            throw invalid_input("LinkBudget: path-loss exponent must be >= 1");
        if (!std::isfinite(margin_db) || !std::isfinite(ref_gain_db))
            throw invalid_input("LinkBudget: margins must be finite");
    }
};

inline double path_loss_gain(const LinkBudget& link)
{
    link.validate();
    return db_to_linear(link.margin_db + link.ref_gain_db) *
           std::pow(link.distance, link.path_loss_exponent);
}

struct Rayleigh {
    double omega = 1.0;   // E|h|^2
};

/// Which power the Rician `omega` pins down.
enum class RicianPower {
    total,     // A^2 + 2 sigma^2 = omega
    diffuse,   // 2 sigma^2 = omega, so E|h|^2 = omega (1 + K)
};

struct Rician {
    double k_db = 10.0;   // K = A^2 / (2 sigma^2), dB; -inf gives Rayleigh
    double omega = 1.0;
    RicianPower power = RicianPower::total;

    double kappa() const { return db_to_linear(k_db); }

    /// 2 sigma^2
    double diffuse_power() const
    {
        return power == RicianPower::total ? omega / (1.0 + kappa()) : omega;
    }

    /// A^2
    double los_power() const
    {
        return power == RicianPower::total ? omega * kappa() / (1.0 + kappa())
                                           : omega * kappa();
    }

    double mean_square() const { return los_power() + diffuse_power(); }
};

using FadingModel = std::variant<Rayleigh, Rician>;

inline void validate(const FadingModel& fading)
{
    std::visit(
        [](const auto& f) {
            if (!(f.omega > 0.0) || !std::isfinite(f.omega))
                throw invalid_input("FadingModel: omega must be positive");
            if constexpr (std::is_same_v<std::decay_t<decltype(f)>, Rician>) {
                if (std::isnan(f.k_db) || f.k_db == INFINITY)
                    throw invalid_input("FadingModel: Rician K must be finite or -inf dB");
            }
        },
        fading);
}

/// E|h|^2 of the model.
inline double mean_square(const FadingModel& fading)
{
    return std::visit(
        [](const auto& f) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(f)>, Rician>)
                return f.mean_square();
            else
                return f.omega;
        },
        fading);
}

/// LOS amplitude A and per-component diffuse variance sigma^2.
struct FadingShape {
    double los_amplitude;
    double sigma2;
};

inline FadingShape fading_shape(const FadingModel& fading)
{
    validate(fading);
    if (const auto* r = std::get_if<Rician>(&fading))
        return {std::sqrt(r->los_power()), 0.5 * r->diffuse_power()};
    return {0.0, 0.5 * std::get<Rayleigh>(fading).omega};
}

/// gamma_bar = E|h|^2 E_t / (L_d N0).
inline double average_snr(double symbol_energy, const LinkBudget& link, const FadingModel& fading,
                          double n0)
{
    if (!(n0 > 0.0))
        throw invalid_input("average_snr: N0 must be positive");
    if (symbol_energy < 0.0)
        throw invalid_input("average_snr: symbol energy must be non-negative");
    validate(fading);
    return mean_square(fading) * symbol_energy / (path_loss_gain(link) * n0);
}

/// One draw of the complex channel coefficient h (LOS component on the real axis).
template <class URBG>
std::complex<double> sample_channel_gain(const FadingModel& fading, URBG& rng)
{
    const FadingShape shape = fading_shape(fading);
    std::normal_distribution<double> diffuse(0.0, std::sqrt(shape.sigma2));
    const double re = diffuse(rng);
    const double im = diffuse(rng);
    return {shape.los_amplitude + re, im};
}

} // namespace modenergy
