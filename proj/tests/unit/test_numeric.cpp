#include <cmath>

#include <gtest/gtest.h>

#include "modenergy/numeric.hpp"

using namespace modenergy;

TEST(Bisect, FindsRootOfIncreasingAndDecreasing)
{
    EXPECT_NEAR(numeric::bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0), std::sqrt(2.0),
                1e-11);
    EXPECT_NEAR(numeric::bisect([](double x) { return 1.0 / (2.0 + x) - 1e-3; }, 0.0, 1e4), 998.0,
                1e-8);
}

TEST(Bisect, GeometricSplitOnWideBracket)
{
    numeric::BisectionOptions o;
    o.geometric = true;
    o.x_tolerance = 1e-13;
    const double r = numeric::bisect([](double x) { return std::log(x) - 40.0; }, 1.0, 1e30, o);
    EXPECT_NEAR(r / std::exp(40.0), 1.0, 1e-12);
}

TEST(Bisect, BracketKeepsSignChange)
{
    int steps = 0;
    numeric::bisect(
        [](double x) { return std::tanh(x - 0.3) - 0.1; }, -5.0, 5.0, {},
        [&](const numeric::BisectionStep& s) {
            ++steps;
            EXPECT_LT(s.lo, s.hi);
            EXPECT_NE(std::signbit(s.f_lo), std::signbit(s.f_hi));
        });
    EXPECT_GT(steps, 30);
}

TEST(Bisect, Errors)
{
    EXPECT_THROW(numeric::bisect([](double x) { return x * x + 1; }, -1.0, 1.0), invalid_input);
    EXPECT_THROW(numeric::bisect([](double x) { return x; }, 1.0, -1.0), invalid_input);
    numeric::BisectionOptions o;
    o.max_iterations = 5;
    EXPECT_THROW(numeric::bisect([](double x) { return x - 0.123; }, 0.0, 1.0, o),
                 convergence_error);
}

TEST(Bisect, ExactEndpointRoot)
{
    EXPECT_EQ(numeric::bisect([](double x) { return x - 1.0; }, 1.0, 3.0), 1.0);
}
