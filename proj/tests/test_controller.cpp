#include <doctest.h>

#include <random>
#include <sstream>
#include <vector>

#include "mpenergy/controller.hpp"
#include "mpenergy/efficiency_map.hpp"
#include "oracle.hpp"

using namespace mpenergy;

namespace {
const ProfileSet kProfiles = default_profiles();

double tick_bytes(double mbps, double delta_ms = 200.0) {
    return mbps * 125.0 * delta_ms;  // Mbps -> bytes per interval
}
} // namespace

TEST_CASE("connection start over WiFi arms the delayed establishment") {
    EmptcpController ctl(ControllerParams{}, kProfiles);
    auto cmd = ctl.on_connection_start(0.0, Iface::wifi);
    CHECK_FALSE(cmd.has_value());
    CHECK(ctl.phase() == Phase::delaying_lte);
    // Deadline is t0 + tau: a tick just before 3000 ms must not fire.
    CHECK_FALSE(ctl.on_bytes(Iface::wifi, 1000.0, 2999.0).has_value());
    auto fired = ctl.on_bytes(Iface::wifi, 1000.0, 3000.0);
    REQUIRE(fired.has_value());
    CHECK(fired->type == CommandType::establish_lte);
}

TEST_CASE("connection start on a non-WiFi primary opens LTE at once") {
    EmptcpController ctl(ControllerParams{}, kProfiles);
    auto cmd = ctl.on_connection_start(0.0, Iface::lte);
    REQUIRE(cmd.has_value());
    CHECK(cmd->type == CommandType::establish_lte);
    CHECK(ctl.phase() == Phase::both_active);
}

TEST_CASE("byte threshold establishes exactly once") {
    EmptcpController ctl(ControllerParams{}, kProfiles);
    ctl.on_connection_start(0.0, Iface::wifi);
    std::optional<PathCommand> cmd;
    int establishments = 0;
    double sent = 0;
    for (double t = 100; t <= 2000 && establishments == 0; t += 100) {
        sent += 100 * 1024;
        cmd = ctl.on_bytes(Iface::wifi, 100 * 1024, t);
        if (cmd) {
            CHECK(cmd->type == CommandType::establish_lte);
            ++establishments;
            CHECK(sent >= (1 << 20));
            CHECK(t == doctest::Approx(1100.0));  // 11 * 100 KiB crosses 1 MiB
        }
    }
    CHECK(establishments == 1);
    // Later byte events are establishment-neutral.
    CHECK_FALSE(ctl.on_bytes(Iface::wifi, 1 << 22, 2500.0).has_value());
}

TEST_CASE("timer expiry establishes when WiFi crawls") {
    EmptcpController ctl(ControllerParams{}, kProfiles);
    ctl.on_connection_start(0.0, Iface::wifi);
    std::optional<PathCommand> cmd;
    for (double t = 200; t < 3000; t += 200) {
        cmd = ctl.on_tick(t, tick_bytes(0.5), 0.0);
        CHECK_FALSE(cmd.has_value());
    }
    cmd = ctl.on_tick(3000.0, tick_bytes(0.5), 0.0);
    REQUIRE(cmd.has_value());
    CHECK(cmd->type == CommandType::establish_lte);
    CHECK(ctl.phase() == Phase::both_active);
}

TEST_CASE("kappa zero establishes on the first byte event") {
    ControllerParams params;
    params.kappa_bytes = 0;
    EmptcpController ctl(params, kProfiles);
    ctl.on_connection_start(0.0, Iface::wifi);
    auto cmd = ctl.on_bytes(Iface::wifi, 1460.0, 1.0);
    REQUIRE(cmd.has_value());
    CHECK(cmd->type == CommandType::establish_lte);
}

TEST_CASE("a short transfer never opens LTE") {
    EmptcpController ctl(ControllerParams{}, kProfiles);
    ctl.on_connection_start(0.0, Iface::wifi);
    // 512 KiB at high speed: done at ~400 ms, under both triggers.
    CHECK_FALSE(ctl.on_bytes(Iface::wifi, 512 * 1024, 400.0).has_value());
    CHECK(ctl.phase() == Phase::delaying_lte);
    CHECK(ctl.decisions().empty());
}

TEST_CASE("high WiFi and modest LTE forecasts suspend the LTE subflow") {
    ControllerParams params;
    params.kappa_bytes = 0;
    EmptcpController ctl(params, kProfiles);
    ctl.on_connection_start(0.0, Iface::wifi);
    ctl.on_bytes(Iface::wifi, 1460.0, 1.0);
    CHECK(ctl.phase() == Phase::both_active);
    CHECK_FALSE(ctl.on_tick(200.0, tick_bytes(12.0), tick_bytes(5.0)).has_value());
    auto cmd = ctl.on_tick(400.0, tick_bytes(12.0), tick_bytes(5.0));
    REQUIRE(cmd.has_value());
    CHECK(cmd->type == CommandType::suspend_lte);
    CHECK(ctl.phase() == Phase::wifi_only);
    const auto& rec = ctl.decisions().back();
    CHECK(rec.b_wifi_forecast == doctest::Approx(12.0));
    CHECK(rec.b_lte_forecast == doctest::Approx(5.0));
    CHECK(oracle::wifi_only(rec.b_wifi_forecast, rec.b_lte_forecast));
}

TEST_CASE("a collapsing WiFi forecast resumes the LTE subflow") {
    ControllerParams params;
    params.kappa_bytes = 0;
    EmptcpController ctl(params, kProfiles);
    ctl.on_connection_start(0.0, Iface::wifi);
    ctl.on_bytes(Iface::wifi, 1460.0, 1.0);
    double t = 200.0;
    for (; t <= 1000.0; t += 200.0) ctl.on_tick(t, tick_bytes(12.0), tick_bytes(5.0));
    CHECK(ctl.phase() == Phase::wifi_only);

    std::optional<PathCommand> cmd;
    int guard = 0;
    while (!cmd && guard++ < 40) {
        cmd = ctl.on_tick(t, tick_bytes(0.5), 0.0);
        t += 200.0;
    }
    REQUIRE(cmd.has_value());
    CHECK(cmd->type == CommandType::resume_lte);
    CHECK(cmd->zero_lte_rtt);
    CHECK(cmd->disable_cwnd_reset);
    CHECK(ctl.phase() == Phase::both_active);
    const auto& rec = ctl.decisions().back();
    CHECK_FALSE(oracle::wifi_only(rec.b_wifi_forecast, rec.b_lte_forecast));
}

TEST_CASE("warm-up intervals without a usable subflow are not samples") {
    ControllerParams params;
    params.kappa_bytes = 0;
    EmptcpController ctl(params, kProfiles);
    ctl.on_connection_start(0.0, Iface::wifi);
    ctl.on_bytes(Iface::wifi, 1460.0, 1.0);
    // Slow WiFi, LTE radio still promoting. Interpreting those intervals as
    // zero-throughput samples would crash the estimate to the floor and
    // suspend the subflow that was just opened.
    CHECK_FALSE(ctl.on_tick(200.0, tick_bytes(0.8), std::nullopt).has_value());
    CHECK_FALSE(ctl.on_tick(400.0, tick_bytes(0.8), std::nullopt).has_value());
    CHECK(ctl.lte_estimate_mbps() == doctest::Approx(10.0));
    CHECK(ctl.phase() == Phase::both_active);
    // Real samples take over once the interval is clean.
    CHECK_FALSE(ctl.on_tick(600.0, tick_bytes(0.8), tick_bytes(12.0)).has_value());
    CHECK_FALSE(ctl.on_tick(800.0, tick_bytes(0.8), tick_bytes(12.0)).has_value());
    CHECK(ctl.lte_estimate_mbps() == doctest::Approx(12.0));
}

TEST_CASE("steady in-region forecasts produce no commands") {
    ControllerParams params;
    params.kappa_bytes = 0;
    EmptcpController ctl(params, kProfiles);
    ctl.on_connection_start(0.0, Iface::wifi);
    ctl.on_bytes(Iface::wifi, 1460.0, 1.0);
    double t = 200.0;
    for (; t <= 1200.0; t += 200.0) ctl.on_tick(t, tick_bytes(12.0), tick_bytes(5.0));
    const size_t n = ctl.decisions().size();
    for (; t <= 5000.0; t += 200.0)
        CHECK_FALSE(ctl.on_tick(t, tick_bytes(12.0), tick_bytes(5.0)).has_value());
    CHECK(ctl.decisions().size() == n);
}

TEST_CASE("persistent high WiFi settles into wifi_only and stays") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> wifi_base(10.5, 19.0), lte_base(0.5, 11.5);
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    for (int trial = 0; trial < 1000; ++trial) {
        const double wb = wifi_base(rng), lb = lte_base(rng);
        ControllerParams params;
        params.kappa_bytes = 0;
        EmptcpController ctl(params, kProfiles);
        ctl.on_connection_start(0.0, Iface::wifi);
        ctl.on_bytes(Iface::wifi, 1.0, 1.0);
        bool suspended_seen = false;
        for (double t = 200.0; t <= 6000.0; t += 200.0) {
            auto cmd = ctl.on_tick(t, tick_bytes(wb + jitter(rng)), tick_bytes(lb + jitter(rng)));
            if (cmd) {
                CHECK(cmd->type == CommandType::suspend_lte);
                suspended_seen = true;
            }
        }
        CHECK(suspended_seen);
        CHECK(ctl.phase() == Phase::wifi_only);
    }
}

TEST_CASE("persistent low WiFi with healthy LTE never suspends") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> wifi_base(0.3, 0.95), lte_base(2.5, 18.0);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    for (int trial = 0; trial < 1000; ++trial) {
        const double wb = wifi_base(rng), lb = lte_base(rng);
        EmptcpController ctl(ControllerParams{}, kProfiles);
        ctl.on_connection_start(0.0, Iface::wifi);
        bool established = false;
        for (double t = 200.0; t <= 6000.0; t += 200.0) {
            auto cmd = ctl.on_tick(t, tick_bytes(wb + jitter(rng)),
                                   established ? tick_bytes(lb + jitter(rng)) : 0.0);
            if (cmd) {
                CHECK(cmd->type == CommandType::establish_lte);
                CHECK(t <= 3000.0);  // no later than tau
                established = true;
            }
        }
        CHECK(established);
        CHECK(ctl.phase() == Phase::both_active);
    }
}

TEST_CASE("commands alternate: establish once, then suspend/resume strictly") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> mbps(0.0, 20.0);
    for (int trial = 0; trial < 1000; ++trial) {
        ControllerParams params;
        params.kappa_bytes = 64 * 1024;
        EmptcpController ctl(params, kProfiles);
        ctl.on_connection_start(0.0, Iface::wifi);
        double t = 0;
        for (int i = 0; i < 100; ++i) {
            t += 200.0;
            ctl.on_bytes(Iface::wifi, mbps(rng) * 25000.0, t - 100.0);
            ctl.on_tick(t, tick_bytes(mbps(rng)), tick_bytes(mbps(rng)));
        }
        int establishes = 0;
        CommandType last_toggle = CommandType::resume_lte;  // so suspend must come first
        for (const auto& d : ctl.decisions()) {
            if (d.command == CommandType::establish_lte) {
                ++establishes;
                CHECK(d.from == Phase::delaying_lte);
            } else {
                CHECK(establishes == 1);  // toggles only after establishment
                CHECK(d.command != last_toggle);
                last_toggle = d.command;
            }
        }
        CHECK(establishes <= 1);
    }
}

TEST_CASE("decision log format") {
    ControllerParams params;
    params.kappa_bytes = 0;
    EmptcpController ctl(params, kProfiles);
    ctl.on_connection_start(0.0, Iface::wifi);
    ctl.on_bytes(Iface::wifi, 1460.0, 1.0);
    ctl.on_tick(200.0, tick_bytes(12.0), tick_bytes(5.0));
    ctl.on_tick(400.0, tick_bytes(12.0), tick_bytes(5.0));
    std::ostringstream out;
    ctl.write_decision_log(out);
    const std::string log = out.str();
    CHECK(log.find("time_ms,phase_from,phase_to,command,b_wifi_forecast,b_lte_forecast\n") == 0);
    CHECK(log.find("1,delaying_lte,both_active,establish_lte,") != std::string::npos);
    CHECK(log.find("400,both_active,wifi_only,suspend_lte,12,5") != std::string::npos);
}
