#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mpenergy/energy_model.hpp"
#include "mpenergy/errors.hpp"
#include "mpenergy/radio_profile.hpp"
#include "oracle.hpp"

using namespace mpenergy;

namespace {
const ProfileSet kProfiles = default_profiles();
}

TEST_CASE("per_byte_cost at B=1 returns alpha") {
    CHECK(per_byte_cost(kProfiles.lte, Direction::down, 1.0) == doctest::Approx(10.0427).epsilon(1e-12));
    CHECK(per_byte_cost(kProfiles.wifi, Direction::down, 1.0) == doctest::Approx(4.6750).epsilon(1e-12));
    CHECK(per_byte_cost(kProfiles.hsdpa, Direction::up, 1.0) == doctest::Approx(12.5294).epsilon(1e-12));
}

TEST_CASE("per_byte_cost matches the reference evaluation") {
    // 10.0427 * 10^-0.8910, frozen from the extended-precision oracle.
    CHECK(per_byte_cost(kProfiles.lte, Direction::down, 10.0) ==
          doctest::Approx(1.29077483398157).epsilon(1e-9));
    CHECK_THROWS_AS(per_byte_cost(kProfiles.lte, Direction::down, 0.0), std::domain_error);
    CHECK_THROWS_AS(per_byte_cost(kProfiles.lte, Direction::down, -3.0), std::domain_error);
}

TEST_CASE("per_byte_cost is strictly decreasing in throughput for shipped profiles") {
    for (Iface ifc : {Iface::wifi, Iface::lte, Iface::hsdpa}) {
        for (Direction d : {Direction::down, Direction::up}) {
            double prev = per_byte_cost(kProfiles.get(ifc), d, 0.25);
            for (double b = 0.5; b <= 40.0; b += 0.25) {
                const double cur = per_byte_cost(kProfiles.get(ifc), d, b);
                CHECK(cur < prev);
                prev = cur;
            }
        }
    }
}

TEST_CASE("single_path_energy basics") {
    CHECK(single_path_energy(kProfiles.lte, Direction::down, 0, 5.0, false) == 0.0);
    // Zero bytes with the episode overhead: exactly the Table-1 constant.
    CHECK(single_path_energy(kProfiles.wifi, Direction::down, 0, 5.0, true) ==
          doctest::Approx(0.149).epsilon(1e-12));
    // 4 MiB at 10 Mbps over LTE, frozen oracle value.
    CHECK(single_path_energy(kProfiles.lte, Direction::down, 4.0 * (1 << 20), 10.0, true) ==
          doctest::Approx(8.32190204926825).epsilon(1e-9));
}

TEST_CASE("total transfer energy falls with throughput at fixed size") {
    double prev = single_path_energy(kProfiles.wifi, Direction::down, 1e6, 0.5, false);
    for (double b = 1.0; b <= 30.0; b += 0.5) {
        const double cur = single_path_energy(kProfiles.wifi, Direction::down, 1e6, b, false);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("overlap_ratio examples") {
    CHECK(overlap_ratio(5e6, 5e6, 8.0, 8.0) == 1.0);
    CHECK(overlap_ratio(3e6, 6e6, 4.0, 8.0) == 1.0);  // equal durations
    CHECK(overlap_ratio(2e6, 0.0, 8.0, 8.0) == 0.0);
    CHECK(overlap_ratio(2.0 * (1 << 20), 1.0 * (1 << 20), 8.0, 8.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(overlap_ratio(0, 0, 8.0, 8.0), std::domain_error);
    CHECK_THROWS_AS(overlap_ratio(1e6, 1e6, 0.0, 8.0), std::domain_error);
}

TEST_CASE("overlap_ratio symmetry, scale invariance, range") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> size(0.0, 5e7), bw(0.1, 30.0), scale(0.1, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double sw = size(rng), sl = size(rng), bwf = bw(rng), blf = bw(rng);
        if (sw == 0 && sl == 0) continue;
        const double th = overlap_ratio(sw, sl, bwf, blf);
        CHECK(th >= 0.0);
        CHECK(th <= 1.0);
        CHECK(overlap_ratio(sl, sw, blf, bwf) == doctest::Approx(th).epsilon(1e-12));
        const double k = scale(rng);
        CHECK(overlap_ratio(k * sw, k * sl, bwf, blf) == doctest::Approx(th).epsilon(1e-12));
        CHECK(overlap_ratio(sw, sl, k * bwf, k * blf) == doctest::Approx(th).epsilon(1e-12));
    }
}

TEST_CASE("mptcp_energy degenerates to the single path when one size is zero") {
    TransferInput in;
    in.s_wifi_bytes = 6e6;
    in.s_lte_bytes = 0;
    in.b_wifi_mbps = 9.0;
    in.b_lte_mbps = 12.0;
    in.gamma = kProfiles.gamma_down;
    TransferEstimate est = mptcp_energy(kProfiles, in);
    CHECK(est.theta == 0.0);
    CHECK(est.e_total_j ==
          doctest::Approx(single_path_energy(kProfiles.wifi, Direction::down, 6e6, 9.0, true))
              .epsilon(1e-12));
}

TEST_CASE("mptcp_energy 4 MiB proportional split example") {
    const double s = 4.0 * (1 << 20);
    TransferInput in;
    in.s_wifi_bytes = s * 5.0 / 15.0;
    in.s_lte_bytes = s * 10.0 / 15.0;
    in.b_wifi_mbps = 5.0;
    in.b_lte_mbps = 10.0;
    in.gamma = 0.8485;
    TransferEstimate est = mptcp_energy(kProfiles, in);
    CHECK(est.theta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.e_transfer_j == doctest::Approx(4.54937345665881).epsilon(1e-9));
    CHECK(est.e_total_j == doctest::Approx(7.60637345665881).epsilon(1e-9));
}

TEST_CASE("mptcp_energy with gamma=1 is the plain sum plus both overheads") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> size(1.0, 5e7), bw(0.1, 30.0);
    for (int i = 0; i < 1000; ++i) {
        TransferInput in;
        in.s_wifi_bytes = size(rng);
        in.s_lte_bytes = size(rng);
        in.b_wifi_mbps = bw(rng);
        in.b_lte_mbps = bw(rng);
        in.gamma = 1.0;
        const TransferEstimate est = mptcp_energy(kProfiles, in);
        const double plain =
            single_path_energy(kProfiles.wifi, Direction::down, in.s_wifi_bytes, in.b_wifi_mbps,
                               true) +
            single_path_energy(kProfiles.lte, Direction::down, in.s_lte_bytes, in.b_lte_mbps,
                               true);
        CHECK(est.e_total_j == doctest::Approx(plain).epsilon(1e-12));
    }
}

TEST_CASE("e_transfer is nonincreasing in gamma when paths overlap") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> size(1.0, 5e7), bw(0.1, 30.0), g(0.05, 1.0);
    for (int i = 0; i < 1000; ++i) {
        TransferInput in;
        in.s_wifi_bytes = size(rng);
        in.s_lte_bytes = size(rng);
        in.b_wifi_mbps = bw(rng);
        in.b_lte_mbps = bw(rng);
        double g1 = g(rng), g2 = g(rng);
        if (g1 > g2) std::swap(g1, g2);
        in.gamma = g1;
        const double lo = mptcp_energy(kProfiles, in).e_transfer_j;
        in.gamma = g2;
        const double hi = mptcp_energy(kProfiles, in).e_transfer_j;
        CHECK(lo <= hi + 1e-15);
    }
}

TEST_CASE("mptcp_energy matches the reference evaluation on randomized inputs") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> size(0.0, 6e7), bw(0.2, 25.0), g(0.1, 1.0);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        TransferInput in;
        in.s_wifi_bytes = size(rng);
        in.s_lte_bytes = size(rng);
        in.b_wifi_mbps = bw(rng);
        in.b_lte_mbps = bw(rng);
        in.gamma = g(rng);
        if (in.s_wifi_bytes == 0 && in.s_lte_bytes == 0) continue;
        const TransferEstimate est = mptcp_energy(kProfiles, in);
        const long double want = oracle::mptcp_total_j(in.s_wifi_bytes, in.s_lte_bytes,
                                                       in.b_wifi_mbps, in.b_lte_mbps, in.gamma,
                                                       true);
        CHECK(est.e_total_j ==
              doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
        ++checked;
    }
    CHECK(checked >= 150);
}

TEST_CASE("profile invariants are enforced by the loader") {
    RadioProfile p = kProfiles.wifi;
    CHECK(p.fixed_overhead_j() == doctest::Approx(0.149).epsilon(1e-12));
    p.beta_down = 0.2;
    CHECK_THROWS(p.validate());
    p = kProfiles.lte;
    p.tail_energy_j = -1;
    CHECK_THROWS(p.validate());
}

TEST_CASE("profile config loading") {
    std::istringstream overrides("lte.alpha_down = 9.5\n# comment\nwifi.tail_energy_j = 0.2\n");
    ProfileSet p = load_profiles(overrides);
    CHECK(p.lte.alpha_down == 9.5);
    CHECK(p.wifi.tail_energy_j == 0.2);
    CHECK(p.wifi.alpha_down == 4.6750);  // untouched fields keep defaults

    std::istringstream unknown("wifi.flux = 3\n");
    CHECK_THROWS_AS(load_profiles(unknown), parse_error);
    std::istringstream invalid("wifi.beta_down = 0.5\n");
    CHECK_THROWS_AS(load_profiles(invalid), parse_error);
    std::istringstream garbled("just some text\n");
    CHECK_THROWS_AS(load_profiles(garbled), parse_error);

    std::ostringstream out;
    write_profiles(out, p);
    std::istringstream back(out.str());
    ProfileSet q = load_profiles(back);
    CHECK(q.lte.alpha_down == p.lte.alpha_down);
    CHECK(q.gamma_down == p.gamma_down);
}
