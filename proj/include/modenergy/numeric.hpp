#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "modenergy/errors.hpp"

namespace modenergy::numeric {

struct BisectionOptions {
    double x_tolerance = 1e-12;   // relative to the bracket magnitude
    int max_iterations = 400;
    bool geometric = false;       // split at sqrt(lo*hi) once lo > 0
};

struct BisectionStep {
    double lo, hi;
    double f_lo, f_hi;
};

/// Root of a function that changes sign exactly once on [lo, hi].
///
/// Works for increasing and decreasing functions. The bracket always keeps
/// f(lo) and f(hi) on opposite sides of zero; `observer` (if set) sees every
/// bracket so callers can check that. Throws invalid_input when the initial
/// bracket has no sign change and convergence_error when the budget runs out.
template <class F>
double bisect(F&& f, double lo, double hi, const BisectionOptions& opt = {},
              const std::function<void(const BisectionStep&)>& observer = {})
{
    if (!(lo < hi))
        throw invalid_input("bisect: empty bracket");
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0)
        return lo;
    if (f_hi == 0.0)
        return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi))
        throw invalid_input("bisect: no sign change on [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");

    for (int it = 0; it < opt.max_iterations; ++it) {
        if (observer)
            observer({lo, hi, f_lo, f_hi});
        const double scale = std::max(std::abs(lo), std::abs(hi));
        if (hi - lo <= opt.x_tolerance * scale)
            return 0.5 * (lo + hi);

        const double mid = (opt.geometric && lo > 0.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0)
            return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    throw convergence_error("bisect: no convergence after " +
                            std::to_string(opt.max_iterations) + " iterations");
}

} // namespace modenergy::numeric
