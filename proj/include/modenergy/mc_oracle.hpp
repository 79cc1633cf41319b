#pragma once

// Monte Carlo symbol-error simulation and numeric SER inversion under fading.
//
// simulate_ser() runs the actual detectors (envelope-detector bank for
// NC-MFSK, coherent minimum distance for square MQAM, ML energy test for OOK)
// and is the independent check on every closed-form bound.
// fading_ser_bound() averages the exponential conditional kernel whose
// Rayleigh average is exactly the closed-form bound, so it extends the bounds
// to Rician fading and reduces to them when K -> -inf dB.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "modenergy/channel.hpp"
#include "modenergy/errors.hpp"
#include "modenergy/numeric.hpp"
#include "modenergy/schemes.hpp"

namespace modenergy {

struct SerEstimate {
    double p_hat = 0.0;
    std::uint64_t n_symbols = 0;
    std::uint64_t errors = 0;
    double ci_halfwidth = 0.0;   // 95 % normal approximation
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t min_simulated_symbols = 10'000;

namespace detail {

/// I0(x) e^{-x}
inline double bessel_i0_scaled(double x)
{
    if (x < 500.0)
        return boost::math::cyl_bessel_i(0, x) * std::exp(-x);
    const double inv = 1.0 / (8.0 * x);
    return (1.0 + inv * (1.0 + inv * (9.0 / 2.0 + inv * (75.0 / 2.0)))) /
           std::sqrt(2.0 * std::numbers::pi * x);
}

inline double log_bessel_i0(double x)
{
    return x + std::log(bessel_i0_scaled(x));
}

inline constexpr std::uint64_t symbols_per_stream = 1u << 16;

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

/// Counts symbol errors for `count` symbols drawn from one stream. Noise is
/// CN(0, 1), so the symbol energy equals the instantaneous SNR numerically.
class SymbolTrial {
public:
    SymbolTrial(const Scheme& scheme, double gamma_bar, const FadingModel& fading)
        : scheme_(scheme), gamma_bar_(gamma_bar), shape_(fading_shape(fading)),
          rms_(std::sqrt(mean_square(fading)))
    {
        if (const auto* q = std::get_if<Mqam>(&scheme_)) {
            side_ = static_cast<unsigned>(std::lround(std::sqrt(double(q->m))));
            if (side_ * side_ != q->m)
                throw invalid_input("simulate_ser: MQAM simulation needs a square constellation");
            // levels +-1, +-3, ... have mean energy 2(M-1)/3 per complex symbol
            level_scale_ = std::sqrt(gamma_bar_ / (2.0 * (q->m - 1.0) / 3.0));
        }
    }

    std::uint64_t count_errors(std::mt19937_64& rng, std::uint64_t count) const
    {
        std::normal_distribution<double> fade(0.0, std::sqrt(shape_.sigma2));
        std::normal_distribution<double> noise(0.0, std::sqrt(0.5));
        std::uint64_t errors = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double re = fade(rng);
            const double im = fade(rng);
            const std::complex<double> g =
                std::complex<double>(shape_.los_amplitude + re, im) / rms_;
            errors += std::visit(
                overloaded{
                    [&](const NcMfsk& s) { return nc_mfsk(s, g, rng, noise); },
                    [&](const Mqam&) { return mqam(g, rng, noise); },
                    [&](const Ook&) { return ook(g, rng, noise); },
                    [&](const DiffOqpsk&) -> unsigned {
                        throw invalid_input("simulate_ser: DOQPSK is not simulated");
                    },
                },
                scheme_);
        }
        return errors;
    }

private:
    template <class Noise>
    unsigned nc_mfsk(const NcMfsk& s, std::complex<double> g, std::mt19937_64& rng,
                     Noise& noise) const
    {
        std::uniform_int_distribution<unsigned> pick(0, s.m - 1);
        const unsigned sent = pick(rng);
        const std::complex<double> tone = g * std::sqrt(gamma_bar_);
        unsigned best = 0;
        double best_energy = -1.0;
        for (unsigned k = 0; k < s.m; ++k) {
            std::complex<double> r(noise(rng), noise(rng));
            if (k == sent)
                r += tone;
            const double e = std::norm(r);
            if (e > best_energy) {
                best_energy = e;
                best = k;
            }
        }
        return best != sent;
    }

    template <class Noise>
    unsigned mqam(std::complex<double> g, std::mt19937_64& rng, Noise& noise) const
    {
        std::uniform_int_distribution<unsigned> pick(0, side_ - 1);
        const unsigned si = pick(rng);
        const unsigned sq = pick(rng);
        const auto level = [&](unsigned idx) { return 2.0 * idx - (side_ - 1.0); };
        const std::complex<double> x(level(si) * level_scale_, level(sq) * level_scale_);
        const std::complex<double> r = g * x + std::complex<double>(noise(rng), noise(rng));
        if (level_scale_ == 0.0) {
            // every hypothesis is equally likely; ML ties resolved uniformly
            return pick(rng) != si || pick(rng) != sq;
        }
        const std::complex<double> y = r / (g * level_scale_);
        const auto slice = [&](double v) {
            const double idx = std::round((v + (side_ - 1.0)) / 2.0);
            return static_cast<unsigned>(std::clamp(idx, 0.0, side_ - 1.0));
        };
        return slice(y.real()) != si || slice(y.imag()) != sq;
    }

    template <class Noise>
    unsigned ook(std::complex<double> g, std::mt19937_64& rng, Noise& noise) const
    {
        std::bernoulli_distribution bit(0.5);
        const bool one = bit(rng);
        // the "1" pulse carries twice the average symbol energy
        const double on_energy = 2.0 * gamma_bar_ * std::norm(g);
        std::complex<double> r(noise(rng), noise(rng));
        if (one)
            r += g * std::sqrt(2.0 * gamma_bar_);
        // ML energy test with known |g|: I0(2 sqrt(x E)) e^{-E} > 1
        const double z = 2.0 * std::sqrt(std::norm(r) * on_energy);
        const bool decide_one = log_bessel_i0(z) > on_energy;
        return decide_one != one;
    }

    Scheme scheme_;
    double gamma_bar_;
    FadingShape shape_;
    double rms_;
    unsigned side_ = 0;
    double level_scale_ = 0.0;
};

} // namespace detail

/// Monte Carlo SER at average SNR `gamma_bar`. Per-symbol SNR is
/// |h|^2 / E|h|^2 * gamma_bar with independent fading per symbol.
///
/// Symbols are split into fixed-size sub-streams seeded from (seed, index),
/// so the result depends only on (seed, n_symbols) and not on thread count.
inline SerEstimate simulate_ser(const Scheme& scheme, double gamma_bar, const FadingModel& fading,
                                std::uint64_t n_symbols, std::uint64_t seed,
                                unsigned threads = 0)
{
    validate(scheme);
    validate(fading);
    if (std::holds_alternative<DiffOqpsk>(scheme))
        throw invalid_input("simulate_ser: DOQPSK is not simulated");
    if (!(gamma_bar >= 0.0) || !std::isfinite(gamma_bar))
        throw invalid_input("simulate_ser: gamma_bar must be non-negative");
    if (n_symbols < min_simulated_symbols)
        throw invalid_input("simulate_ser: need at least 1e4 symbols");

    const detail::SymbolTrial trial(scheme, gamma_bar, fading);
    const std::uint64_t streams =
        (n_symbols + detail::symbols_per_stream - 1) / detail::symbols_per_stream;
    std::vector<std::uint64_t> errors(streams, 0);
    std::atomic<std::uint64_t> next{0};

    const auto worker = [&] {
        for (std::uint64_t s = next++; s < streams; s = next++) {
            const std::uint64_t first = s * detail::symbols_per_stream;
            const std::uint64_t count = std::min(detail::symbols_per_stream, n_symbols - first);
            auto rng = detail::make_stream(seed, s);
            errors[s] = trial.count_errors(rng, count);
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, streams));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    SerEstimate est;
    est.n_symbols = n_symbols;
    est.seed = seed;
    for (auto e : errors)
        est.errors += e;
    est.p_hat = double(est.errors) / double(n_symbols);
    est.ci_halfwidth = 1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / double(n_symbols));
    return est;
}


/// E[c * exp(-b * gamma)] with gamma = |h|^2 / E|h|^2 * gamma_bar, by adaptive
/// Gauss-Kronrod quadrature over the amplitude pdf of |h|.
inline double fading_average_exponential(double c, double b, double gamma_bar,
                                         const FadingModel& fading, double rel_tol = 1e-10)
{
    const FadingShape shape = fading_shape(fading);
    const double beta = b * gamma_bar / mean_square(fading);
    const double a = shape.los_amplitude;
    const double s2 = shape.sigma2;
    const double sigma = std::sqrt(s2);

    const auto density_weighted = [&](double r) {
        const double z = r * a / s2;
        const double d = r - a;
        return (r / s2) * std::exp(-d * d / (2.0 * s2) - beta * r * r) *
               detail::bessel_i0_scaled(z);
    };

    const double r_max = a + 40.0 * sigma;
    std::vector<double> cuts{0.0, r_max};
    const double near_origin = 1.0 / std::sqrt(1.0 / (2.0 * s2) + beta);
    for (double w = near_origin; w < r_max; w *= 2.0)
        cuts.push_back(w);
    for (double k : {-8.0, -4.0, -1.0, 0.0, 1.0, 4.0, 8.0}) {
        const double r = a + k * sigma;
        if (r > 0.0 && r < r_max)
            cuts.push_back(r);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    using boost::math::quadrature::gauss_kronrod;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        sum += gauss_kronrod<double, 31>::integrate(density_weighted, cuts[i], cuts[i + 1], 15,
                                                   rel_tol);
    return c * sum;
}

/// SER bound under an arbitrary fading model, unclamped.
inline double fading_ser_bound(const Scheme& scheme, double gamma_bar, const FadingModel& fading)
{
    validate(scheme);
    validate(fading);
    if (!(gamma_bar >= 0.0))
        throw invalid_input("fading_ser_bound: gamma_bar must be non-negative");
    return std::visit(
        overloaded{
            [&](const NcMfsk& s) {
                const double pair = fading_average_exponential(0.5, 0.5, gamma_bar, fading);
                if (s.m == 2)
                    return pair;
                return -std::expm1(double(s.m - 1) * std::log1p(-pair));
            },
            [&](const Mqam& s) {
                const double m = s.m;
                return fading_average_exponential(2.0 * (1.0 - 1.0 / std::sqrt(m)),
                                                  1.5 / (m - 1.0), gamma_bar, fading);
            },
            [&](const DiffOqpsk&) {
                return fading_average_exponential(detail::oqpsk_gain(),
                                                  detail::oqpsk_slope() / 4.0, gamma_bar, fading);
            },
            [&](const Ook&) { return fading_average_exponential(0.5, 0.5, gamma_bar, fading); },
        },
        scheme);
}

enum class InversionMethod {
    quadrature,    // bisection on fading_ser_bound
    monte_carlo,   // bisection on simulate_ser with common random numbers
};

struct InversionOptions {
    double tolerance = 1e-10;   // relative width of the final gamma_bar bracket
    InversionMethod method = InversionMethod::quadrature;
    std::uint64_t seed = 1;
    int max_iterations = 200;
    std::uint64_t max_symbols = 20'000'000;
};

/// Average SNR gamma_bar (relative to E|h|^2) at which the SER reaches `p_target`.
inline double invert_ser_numeric(const Scheme& scheme, double p_target, const FadingModel& fading,
                                 const InversionOptions& opt = {})
{
    validate(scheme);
    validate(fading);
    if (!(opt.tolerance > 0.0))
        throw invalid_input("invert_ser_numeric: tolerance must be positive");
    const double ceiling = ser_bound_unclamped(scheme, 0.0);
    if (!(p_target > 0.0) || !(p_target < ceiling))
        throw unattainable_target(label(scheme) + ": SER target outside (0, zero-SNR bound)");

    std::function<double(double)> ser;
    if (opt.method == InversionMethod::quadrature) {
        ser = [&](double g) { return fading_ser_bound(scheme, g, fading); };
    } else {
        // enough symbols that the CI half-width is ~tolerance * p
        const double wanted = 1.96 * 1.96 * (1.0 - p_target) /
                              (p_target * opt.tolerance * opt.tolerance);
        const auto n = static_cast<std::uint64_t>(std::clamp(
            std::ceil(wanted), double(min_simulated_symbols), double(opt.max_symbols)));
        ser = [&, n](double g) { return simulate_ser(scheme, g, fading, n, opt.seed).p_hat; };
    }
    const auto excess = [&](double g) { return ser(g) - p_target; };

    double hi = std::max(1.0, required_snr(scheme, p_target));
    int grow = 0;
    while (excess(hi) > 0.0) {
        hi *= 2.0;
        if (++grow > 200)
            throw convergence_error("invert_ser_numeric: could not bracket the target");
    }
    double lo = hi;
    int shrink = 0;
    while (lo > 1e-300 && excess(lo) <= 0.0) {
        lo *= 0.5;
        if (++shrink > 1100)
            break;
    }
    if (!(excess(lo) > 0.0))
        lo = 0.0;

    numeric::BisectionOptions bo;
    bo.x_tolerance = opt.tolerance;
    bo.max_iterations = opt.max_iterations;
    bo.geometric = true;
    return numeric::bisect(excess, lo, hi, bo);
}

} // namespace modenergy
