// Frame energy split into RF, active circuit and transient parts for every
// scheme at one link, default carrier radio.
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "modenergy/modenergy.hpp"

using namespace modenergy;

int main(int argc, char** argv)
{
    const double d = argc > 1 ? std::atof(argv[1]) : 20.0;
    const double eta = argc > 2 ? std::atof(argv[2]) : 3.0;
    const double ps = 1e-3;
    const Scenario sc = Scenario::carrier_defaults();
    const LinkBudget link = sc.link(d, eta);

    std::vector<Scheme> schemes{DiffOqpsk{}};
    for (unsigned m = 2; m <= 64; m *= 2)
        schemes.push_back(NcMfsk{m});
    for (unsigned m = 4; m <= 64; m *= 2)
        schemes.push_back(Mqam{m});

    std::printf("d = %g m, eta = %g, P_s = %g\n", d, eta, ps);
    std::printf("%-10s %12s %12s %12s %12s\n", "scheme", "E_rf [J]", "E_circ [J]", "E_tr [J]",
                "E_total [J]");
    for (const auto& s : schemes) {
        try {
            const auto e = total_frame_energy(s, ps, link, sc.fading, sc.timing, sc.radio);
            std::printf("%-10s %12.4e %12.4e %12.4e %12.4e\n", label(s).c_str(), e.rf_tx,
                        e.circuit_active, e.transient, e.total);
        } catch (const frame_overrun&) {
            std::printf("%-10s does not fit in the frame\n", label(s).c_str());
        }
    }
}
