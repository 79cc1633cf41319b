#pragma once

#include "modenergy/channel.hpp"
#include "modenergy/frame.hpp"
#include "modenergy/schemes.hpp"

namespace modenergy {

/// Everything except distance, path-loss exponent and SER target.
struct Scenario {
    FrameTiming timing;
    RadioParameters radio;
    double margin_db = 40.0;
    double ref_gain_db = 30.0;
    FadingModel fading = Rayleigh{};

    /// Narrowband carrier setup: 1024-byte frames every 1.4 s over 62.5 kHz.
    static Scenario carrier_defaults() { return {}; }

    /// UWB OOK setup: 20000-bit frames every 100 ms over 500 MHz.
    static Scenario ook_defaults()
    {
        Scenario s;
        s.timing = {20000, 0.1, 2e-9, 500e6};
        s.radio = RadioParameters::ook_defaults();
        return s;
    }

    LinkBudget link(double d, double eta) const { return {d, eta, margin_db, ref_gain_db}; }
};

} // namespace modenergy
