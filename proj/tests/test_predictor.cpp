#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "mpenergy/predictor.hpp"

using namespace mpenergy;

TEST_CASE("hand-evaluated recurrence step") {
    // From a=10, b=0: one sample of 12 at rho=0.125.
    HoltWinters hw(0.125);
    hw.update(10.0);
    hw.update(10.0);  // slope init lands at a=10, b=0
    CHECK(hw.level() == 10.0);
    CHECK(hw.trend() == 0.0);
    hw.update(12.0);
    CHECK(hw.level() == doctest::Approx(10.25).epsilon(1e-12));
    CHECK(hw.trend() == doctest::Approx(0.03125).epsilon(1e-12));
    CHECK(hw.forecast(1.0) == doctest::Approx(10.28125).epsilon(1e-12));
}

TEST_CASE("constant series is a fixed point under slope init") {
    HoltWinters hw(0.125);
    for (int i = 0; i < 50; ++i) {
        hw.update(5.0);
        if (hw.ready()) {
            CHECK(hw.level() == doctest::Approx(5.0).epsilon(1e-12));
            CHECK(hw.trend() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(hw.forecast(3.0) == doctest::Approx(5.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("literal init makes a constant series forecast c*(1+h)") {
    HoltWinters hw(0.125, HwInit::literal);
    hw.update(5.0);
    hw.update(5.0);  // a = 5, b = previous sample = 5
    CHECK(hw.trend() == 5.0);
    CHECK(hw.forecast(1.0) == doctest::Approx(10.0));
}

TEST_CASE("linear ramp converges to unit trend") {
    HoltWinters hw(0.125);
    double err = 0;
    for (int i = 1; i <= 400; ++i) {
        if (hw.ready()) err = std::abs(hw.forecast(1.0) - static_cast<double>(i));
        hw.update(static_cast<double>(i));
    }
    CHECK(hw.trend() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(err <= 1e-5);  // one-step error has died out
}

TEST_CASE("forecast flooring and readiness") {
    HoltWinters hw(0.25);
    CHECK_THROWS_AS(hw.forecast(1.0), std::logic_error);
    hw.update(0.1);
    CHECK_THROWS_AS(hw.forecast(1.0), std::logic_error);
    hw.update(0.1);
    CHECK(hw.forecast(2.0) == doctest::Approx(0.1));
    // Strong negative trend clamps at zero.
    HoltWinters falling(0.5);
    falling.update(10.0);
    falling.update(1.0);
    CHECK(falling.trend() < 0);
    CHECK(falling.forecast(10.0) == 0.0);
}

TEST_CASE("zero trend means flat forecasts at any horizon") {
    HoltWinters hw(0.125);
    hw.update(7.0);
    hw.update(7.0);
    for (double h : {1.0, 2.0, 5.0, 50.0}) CHECK(hw.forecast(h) == doctest::Approx(7.0));
}

TEST_CASE("rejects bad inputs") {
    CHECK_THROWS_AS(HoltWinters(0.0), std::domain_error);
    CHECK_THROWS_AS(HoltWinters(1.0), std::domain_error);
    HoltWinters hw(0.125);
    CHECK_THROWS_AS(hw.update(-1.0), std::domain_error);
}

TEST_CASE("identical sample sequences give bit-identical state") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> y(0.0, 25.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> seq;
        const int n = 2 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) seq.push_back(y(rng));
        HoltWinters a(0.125), b(0.125);
        for (double v : seq) {
            a.update(v);
            b.update(v);
        }
        CHECK(a.level() == b.level());
        CHECK(a.trend() == b.trend());
        CHECK(a.forecast(1.0) == b.forecast(1.0));
    }
}

TEST_CASE("one update moves the level by exactly rho times the forecast miss") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> y(0.0, 25.0);
    for (int trial = 0; trial < 1000; ++trial) {
        HoltWinters hw(0.125);
        const int warm = 2 + static_cast<int>(rng() % 20);
        for (int i = 0; i < warm; ++i) hw.update(y(rng));
        const double predicted = hw.level() + hw.trend();
        const double sample = y(rng);
        hw.update(sample);
        CHECK(std::abs(hw.level() - predicted) ==
              doctest::Approx(0.125 * std::abs(sample - predicted)).epsilon(1e-9));
    }
}
