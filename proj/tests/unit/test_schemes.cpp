#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "modenergy/schemes.hpp"

using namespace modenergy;

namespace {

std::vector<Scheme> all_schemes()
{
    std::vector<Scheme> v;
    for (unsigned m = 2; m <= 64; m *= 2)
        v.push_back(NcMfsk{m});
    for (unsigned m : {4u, 5u, 10u, 13u, 16u, 43u, 64u})
        v.push_back(Mqam{m});
    v.push_back(DiffOqpsk{});
    v.push_back(Ook{});
    return v;
}

} // namespace

TEST(Scheme, Validation)
{
    EXPECT_THROW(validate(NcMfsk{3}), invalid_input);
    EXPECT_THROW(validate(NcMfsk{1}), invalid_input);
    EXPECT_THROW(validate(NcMfsk{4, 3}), invalid_input);
    EXPECT_THROW(validate(Mqam{3}), invalid_input);
    EXPECT_NO_THROW(validate(Mqam{43}));
    EXPECT_THROW(validate(Ook{0.0}), invalid_input);
    EXPECT_THROW(validate(Ook{1.5}), invalid_input);
}

TEST(Scheme, Labels)
{
    EXPECT_EQ(label(NcMfsk{2}), "NC-BFSK");
    EXPECT_EQ(label(NcMfsk{8}), "NC-8FSK");
    EXPECT_EQ(label(Mqam{64}), "64QAM");
    EXPECT_EQ(label(DiffOqpsk{}), "DOQPSK");
    EXPECT_EQ(label(Ook{}), "OOK");
}

TEST(BandwidthEfficiency, Values)
{
    EXPECT_DOUBLE_EQ(bandwidth_efficiency(NcMfsk{2, 1}), 0.5);
    EXPECT_DOUBLE_EQ(bandwidth_efficiency(NcMfsk{8, 2}), 2.0 * 3.0 / 8.0);
    EXPECT_DOUBLE_EQ(bandwidth_efficiency(Mqam{4}), 4.0);
    EXPECT_DOUBLE_EQ(bandwidth_efficiency(DiffOqpsk{}), 2.0);
    EXPECT_DOUBLE_EQ(bandwidth_efficiency(Ook{0.5}), 0.5);
}

TEST(ActiveDuration, HandEvaluations)
{
    const FrameTiming t;
    EXPECT_NEAR(active_duration(NcMfsk{2}, t), 0.262144, 1e-15);
    EXPECT_NEAR(active_duration(Mqam{4}, t), 0.032768, 1e-15);
    EXPECT_NEAR(active_duration(DiffOqpsk{}, t), 0.065536, 1e-15);
    EXPECT_NEAR(active_duration(Ook{}, FrameTiming{20000, 0.1, 2e-9, 500e6}), 8e-5, 1e-18);
}

TEST(ActiveDuration, OrderingAtOptimizedSizes)
{
    const FrameTiming t;
    EXPECT_LT(active_duration(Mqam{4}, t), active_duration(DiffOqpsk{}, t));
    EXPECT_LT(active_duration(DiffOqpsk{}, t), active_duration(NcMfsk{2}, t));
}

TEST(ActiveDuration, FrameOverrun)
{
    FrameTiming t;
    EXPECT_NO_THROW(active_duration(NcMfsk{64}, t));
    EXPECT_THROW(active_duration(NcMfsk{128}, t), frame_overrun);
    t.frame_period = 0.2;
    EXPECT_THROW(active_duration(NcMfsk{2}, t), frame_overrun);
}

TEST(SerBound, Examples)
{
    EXPECT_DOUBLE_EQ(ser_bound(NcMfsk{2}, 0.0), 0.5);
    EXPECT_NEAR(ser_bound(NcMfsk{2}, 998.0), 1e-3, 1e-18);
    EXPECT_NEAR(ser_bound(Ook{}, 998.0), 1e-3, 1e-18);
    EXPECT_NEAR(ser_bound(Mqam{4}, 1998.0), 1e-3, 1e-18);
}

TEST(SerBound, ClampedToOne)
{
    EXPECT_GT(ser_bound_unclamped(DiffOqpsk{}, 0.0), 1.0);
    EXPECT_EQ(ser_bound(DiffOqpsk{}, 0.0), 1.0);
    EXPECT_THROW(ser_bound(DiffOqpsk{}, -1.0), invalid_input);
}

TEST(SerBound, DecreasingInSnr)
{
    for (const auto& s : all_schemes())
        for (double g = 0.5; g < 1e5; g *= 1.5)
            EXPECT_LT(ser_bound_unclamped(s, g * 1.5), ser_bound_unclamped(s, g)) << label(s);
}

TEST(SerBound, NcMfskIncreasingInM)
{
    for (double g : {1.0, 10.0, 100.0, 1e4})
        for (unsigned m = 2; m < 64; m *= 2)
            EXPECT_LT(ser_bound(NcMfsk{m}, g), ser_bound(NcMfsk{2 * m}, g));
}

TEST(RequiredSnr, RoundTrip)
{
    for (const auto& s : all_schemes())
        for (double p : {1e-2, 1e-3, 1e-4, 1e-7}) {
            const double g = required_snr(s, p);
            EXPECT_NEAR(ser_bound(s, g) / p, 1.0, 1e-12) << label(s) << " p=" << p;
        }
}

TEST(RequiredSnr, RejectsUnattainable)
{
    EXPECT_THROW(required_snr(NcMfsk{2}, 0.5), unattainable_target);
    EXPECT_THROW(required_snr(NcMfsk{2}, 0.0), unattainable_target);
    EXPECT_THROW(required_snr(Ook{}, 0.7), unattainable_target);
    EXPECT_NO_THROW(required_snr(DiffOqpsk{}, 0.9));
    EXPECT_THROW(required_snr(DiffOqpsk{}, 1.1), unattainable_target);
}

TEST(RequiredSymbolEnergy, Examples)
{
    const LinkBudget unit{1.0, 3.0};
    EXPECT_NEAR(required_symbol_energy(NcMfsk{2}, 1e-3, unit, Rayleigh{}, 1e-21), 9.98e-12,
                1e-24);
    EXPECT_EQ(required_symbol_energy(Ook{}, 1e-3, unit, Rayleigh{}, 1e-21),
              required_symbol_energy(NcMfsk{2}, 1e-3, unit, Rayleigh{}, 1e-21));
    // independent high-precision evaluation of the DOQPSK inversion
    EXPECT_NEAR(required_snr(DiffOqpsk{}, 1e-3), 7495.45597480657, 1e-8);
    EXPECT_NEAR(required_symbol_energy(DiffOqpsk{}, 1e-3, unit, Rayleigh{}, 1e-21),
                7.49545597480657e-11, 1e-22);
}

TEST(RequiredSymbolEnergy, OokEqualsBinaryFskEverywhere)
{
    for (double p : {0.3, 1e-2, 1e-3, 1e-5})
        EXPECT_EQ(required_snr(Ook{}, p), required_snr(NcMfsk{2}, p));
}

TEST(CircuitPowers, BlockSums)
{
    const RadioParameters r;
    const auto fsk = circuit_powers(NcMfsk{2}, r);
    EXPECT_NEAR(fsk.tx_minus_amp, 12.5e-3, 1e-15);
    EXPECT_NEAR(fsk.rx, 30e-3, 1e-15);
    EXPECT_NEAR(circuit_powers(NcMfsk{16}, r).rx, (9 + 16 * 5.5 + 3 + 7) * 1e-3, 1e-15);
    for (unsigned m : {4u, 13u, 64u}) {
        const auto q = circuit_powers(Mqam{m}, r);
        EXPECT_NEAR(q.tx_minus_amp, 26.5e-3, 1e-15);
        EXPECT_NEAR(q.rx, 38.5e-3, 1e-15);
    }
    const auto oq = circuit_powers(DiffOqpsk{}, r);
    EXPECT_NEAR(oq.tx_minus_amp + oq.rx, 65e-3, 1e-15);
    EXPECT_NEAR(circuit_powers(Ook{}, RadioParameters::ook_defaults()).rx, 18.6e-3, 1e-15);
}

TEST(AmplifierCoefficient, Values)
{
    EXPECT_NEAR(amplifier_coefficient(Mqam{4}), 1.0 / 0.35 - 1.0, 1e-14);
    EXPECT_NEAR(amplifier_coefficient(Mqam{64}), (7.0 / 3.0) / 0.35 - 1.0, 1e-14);
    EXPECT_NEAR(amplifier_coefficient(Mqam{64}), 5.666666666666667, 1e-12);
    for (unsigned m = 2; m <= 64; m *= 2)
        EXPECT_EQ(amplifier_coefficient(NcMfsk{m}), 0.33);
    EXPECT_EQ(amplifier_coefficient(DiffOqpsk{}), 0.33);
    EXPECT_EQ(amplifier_coefficient(Ook{}), 0.33);
}

TEST(RadioParameters, Validation)
{
    EXPECT_NO_THROW(RadioParameters{}.validate());
    EXPECT_NO_THROW(RadioParameters::ook_defaults().validate());
    RadioParameters r;
    r.p_lna = -1e-3;
    EXPECT_THROW(r.validate(), invalid_input);
    r = {};
    r.chi_e = 0.0;
    EXPECT_THROW(r.validate(), invalid_input);
}

TEST(ApproximationChain, BracketCloseToLinearForm)
{
    const double p = 1e-3;
    for (unsigned m = 2; m <= 64; ++m) {
        const double exact = 1.0 / -std::expm1(std::log1p(-p) / (m - 1.0)) - 2.0;
        const double approx = (m - 1.0) / p - 2.0;
        EXPECT_LT(std::abs(approx / exact - 1.0), 2e-3) << m;
    }
}
