#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "ddm/channel.hpp"
#include "ddm/mseq.hpp"

using ddm::ChannelProfile;
using ddm::ChannelRealization;
using ddm::Complex;
using ddm::DDGrid;

namespace {

ChannelRealization fig_channel() {
    ChannelRealization ch;
    ch.paths = {{Complex(0.8, 0.0), 1, 1}, {Complex(0.6, 0.0), 3, 14},
                {Complex(0.5, 0.0), 5, 7}};
    return ch;
}

// direct evaluation of the shift-and-sum coupling, independent of the
// library implementation
DDGrid naive_apply(const DDGrid& x, const ChannelRealization& ch) {
    const int n = static_cast<int>(x.rows());
    const int m = static_cast<int>(x.cols());
    DDGrid y = DDGrid::Zero(n, m);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
            for (const ddm::Path& p : ch.paths) {
                const int ks = ((k - p.doppler_tap) % n + n) % n;
                const int ls = ((l - p.delay_tap) % m + m) % m;
                y(k, l) += p.gain * x(ks, ls);
            }
        }
    }
    return y;
}

DDGrid random_grid(int n, int m, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    DDGrid g(n, m);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
            g(k, l) = Complex(gauss(rng), gauss(rng));
        }
    }
    return g;
}

}  // namespace

TEST_CASE("delta through the three-path reference channel") {
    DDGrid x = ddm::new_grid(32, 64);
    x(0, 0) = Complex(1.0, 0.0);
    const DDGrid y = ddm::apply_channel(x, fig_channel());
    CHECK(y(1, 1) == Complex(0.8, 0.0));
    CHECK(y(14, 3) == Complex(0.6, 0.0));
    CHECK(y(7, 5) == Complex(0.5, 0.0));
    CHECK(ddm::total_power(y) == doctest::Approx(0.64 + 0.36 + 0.25).epsilon(1e-12));
}

TEST_CASE("single unit path at the origin is the identity") {
    std::mt19937_64 rng(2);
    const DDGrid x = random_grid(8, 8, rng);
    ChannelRealization identity;
    identity.paths = {{Complex(1.0, 0.0), 0, 0}};
    CHECK((ddm::apply_channel(x, identity) - x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sequence row moves by the path's delay and Doppler offsets") {
    const ddm::BipolarSequence seq = ddm::generate_mseq({6, {6, 1}});
    DDGrid x = ddm::new_grid(32, 64);
    for (int l = 0; l < 63; ++l) {
        x(1, l) = Complex(seq(l), 0.0);
    }
    x(1, 63) = Complex(1.0, 0.0);
    const Complex h(0.3, -0.4);
    ChannelRealization ch;
    ch.paths = {{h, 3, 14}};
    const DDGrid y = ddm::apply_channel(x, ch);

    const Eigen::VectorXcd shifted = ddm::cyclic_shift(Eigen::VectorXcd(x.row(1)), 3);
    for (int l = 0; l < 64; ++l) {
        CHECK(y(15, l) == h * shifted(l));
    }
    CHECK(ddm::total_power(y.row(15)) ==
          doctest::Approx(std::norm(h) * 64.0).epsilon(1e-12));
}

TEST_CASE("coupling is linear in the transmitted grid") {
    std::mt19937_64 rng(4);
    const DDGrid x = random_grid(6, 5, rng);
    const DDGrid y = random_grid(6, 5, rng);
    ChannelRealization ch;
    ch.paths = {{Complex(0.2, 0.7), 2, 3}, {Complex(-0.5, 0.1), 4, 1}};
    const Complex a(1.5, -0.5);
    const Complex b(0.25, 2.0);
    const DDGrid lhs = ddm::apply_channel(a * x + b * y, ch);
    const DDGrid rhs = a * ddm::apply_channel(x, ch) + b * ddm::apply_channel(y, ch);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single path preserves power up to |h|^2 and composes to the identity") {
    std::mt19937_64 rng(6);
    const DDGrid x = random_grid(4, 4, rng);
    const Complex h(0.6, 0.8);  // |h| = 1
    ChannelRealization ch;
    ch.paths = {{h, 1, 1}};
    DDGrid y = ddm::apply_channel(x, ch);
    CHECK(ddm::total_power(y) == doctest::Approx(std::norm(h) * ddm::total_power(x)));
    // shifting four more-times wraps both axes mod 4 back to the start
    for (int i = 0; i < 3; ++i) {
        y = ddm::apply_channel(y, ch);
    }
    CHECK((y - std::pow(h, 4) * x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("matches the brute-force shift-and-sum on random small grids") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> tap(0, 3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const DDGrid x = random_grid(4, 4, rng);
        ChannelRealization ch;
        std::set<std::pair<int, int>> used;
        const int count = 1 + trial % 3;
        while (static_cast<int>(ch.paths.size()) < count) {
            const int tau = tap(rng);
            const int nu = tap(rng);
            if (used.emplace(tau, nu).second) {
                ch.paths.push_back({Complex(gauss(rng), gauss(rng)), tau, nu});
            }
        }
        const DDGrid got = ddm::apply_channel(x, ch);
        const DDGrid want = naive_apply(x, ch);
        CHECK((got - want).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("default profile draws six paired paths") {
    ChannelProfile profile;
    std::mt19937_64 rng(42);
    const ChannelRealization ch = ddm::draw_channel(profile, rng);
    REQUIRE(ch.paths.size() == 6);
    for (int i = 0; i < 6; ++i) {
        CHECK(ch.paths[i].delay_tap == i);
        CHECK(ch.paths[i].doppler_tap == i);
    }
    CHECK_NOTHROW(ch.validate(32, 64));
}

TEST_CASE("single-entry profile yields one path at the origin") {
    ChannelProfile profile;
    profile.delay_taps = {0};
    profile.doppler_taps = {0};
    std::mt19937_64 rng(1);
    const ChannelRealization ch = ddm::draw_channel(profile, rng);
    REQUIRE(ch.paths.size() == 1);
    CHECK(ch.paths[0].delay_tap == 0);
    CHECK(ch.paths[0].doppler_tap == 0);
    CHECK(std::abs(ch.paths[0].gain) > 0.0);
}

TEST_CASE("fixed seed reproduces the realization") {
    ChannelProfile profile;
    profile.pairing = ChannelProfile::Pairing::random_doppler;
    std::mt19937_64 rng_a(123);
    std::mt19937_64 rng_b(123);
    const ChannelRealization a = ddm::draw_channel(profile, rng_a);
    const ChannelRealization b = ddm::draw_channel(profile, rng_b);
    REQUIRE(a.paths.size() == b.paths.size());
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
        CHECK(a.paths[i].gain == b.paths[i].gain);
        CHECK(a.paths[i].delay_tap == b.paths[i].delay_tap);
        CHECK(a.paths[i].doppler_tap == b.paths[i].doppler_tap);
    }
}

TEST_CASE("expected total path power is 1") {
    ChannelProfile profile;
    std::mt19937_64 rng(17);
    double acc = 0.0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        const ChannelRealization ch = ddm::draw_channel(profile, rng);
        for (const ddm::Path& p : ch.paths) {
            acc += std::norm(p.gain);
        }
    }
    CHECK(acc / draws == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("invalid profiles are rejected") {
    ChannelProfile dup;
    dup.delay_taps = {0, 0};
    dup.doppler_taps = {1, 1};
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(ddm::draw_channel(dup, rng), std::invalid_argument);

    ChannelProfile mismatch;
    mismatch.delay_taps = {0, 1, 2};
    mismatch.doppler_taps = {0, 1};
    CHECK_THROWS_AS(ddm::draw_channel(mismatch, rng), std::invalid_argument);

    ChannelProfile impossible;
    impossible.delay_taps = {0, 0, 0};
    impossible.doppler_taps = {1, 2};
    impossible.pairing = ChannelProfile::Pairing::random_doppler;
    CHECK_THROWS_AS(ddm::draw_channel(impossible, rng), std::invalid_argument);

    ChannelProfile out_of_bounds;
    out_of_bounds.delay_taps = {70};
    out_of_bounds.doppler_taps = {0};
    CHECK_THROWS_AS(out_of_bounds.validate(32, 64), std::invalid_argument);
}

TEST_CASE("random-doppler mode keeps (delay, Doppler) pairs distinct") {
    ChannelProfile profile;
    profile.delay_taps = {2, 2, 2};
    profile.doppler_taps = {0, 1, 2};
    profile.pairing = ChannelProfile::Pairing::random_doppler;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const ChannelRealization ch = ddm::draw_channel(profile, rng);
        CHECK_NOTHROW(ch.validate(8, 8));
    }
}

TEST_CASE("awgn with zero variance is the identity and draws nothing") {
    std::mt19937_64 rng(3);
    const DDGrid x = random_grid(4, 4, rng);
    std::mt19937_64 noise_rng(99);
    const DDGrid y = ddm::add_awgn(x, {0.0}, noise_rng);
    CHECK((y - x).cwiseAbs().maxCoeff() == 0.0);
    std::mt19937_64 reference(99);
    CHECK(noise_rng() == reference());
}

TEST_CASE("awgn empirical power matches sigma^2 within 1%") {
    const DDGrid zero = ddm::new_grid(1000, 1000);
    std::mt19937_64 rng(7);
    const DDGrid noisy = ddm::add_awgn(zero, {1.0}, rng);
    CHECK(ddm::total_power(noisy) / 1e6 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("awgn is reproducible for a fixed seed") {
    const DDGrid zero = ddm::new_grid(8, 8);
    std::mt19937_64 rng_a(11);
    std::mt19937_64 rng_b(11);
    const DDGrid a = ddm::add_awgn(zero, {0.5}, rng_a);
    const DDGrid b = ddm::add_awgn(zero, {0.5}, rng_b);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("channel dump lists one line per path") {
    std::ostringstream os;
    ddm::write_channel(os, fig_channel());
    CHECK(os.str() ==
          "0, 0.80000000000000004, 0, 1, 1\n"
          "1, 0.59999999999999998, 0, 3, 14\n"
          "2, 0.5, 0, 5, 7\n");
}
