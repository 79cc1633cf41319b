// Cheapest scheme over a grid of distances and path-loss exponents.
#include <cstdio>

#include "modenergy/modenergy.hpp"

using namespace modenergy;

int main()
{
    const Scenario sc = Scenario::carrier_defaults();
    const double etas[] = {2.5, 3.0, 4.0, 5.0, 6.0};

    std::printf("%8s", "d \\ eta");
    for (double eta : etas)
        std::printf("%10g", eta);
    std::printf("\n");
    for (double d : {1.0, 10.0, 20.0, 40.0, 80.0, 100.0, 150.0, 200.0}) {
        std::printf("%8g", d);
        for (double eta : etas)
            std::printf("%10s", label(select_modulation(sc, d, eta, 1e-3).winner.scheme).c_str());
        std::printf("\n");
    }
}
