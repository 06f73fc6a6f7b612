#include "ddm/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <string>

namespace ddm {

namespace {

int wrap(int value, int modulus) {
    int r = value % modulus;
    return r < 0 ? r + modulus : r;
}

}  // namespace

void ChannelProfile::validate(int n_doppler, int m_delay) const {
    if (delay_taps.empty()) {
        throw std::invalid_argument("channel profile needs at least one delay tap");
    }
    if (doppler_taps.empty()) {
        throw std::invalid_argument("channel profile needs at least one Doppler tap");
    }
    for (int tau : delay_taps) {
        if (tau < 0 || tau >= m_delay) {
            throw std::invalid_argument("delay tap outside grid bounds");
        }
    }
    for (int nu : doppler_taps) {
        if (nu < 0 || nu >= n_doppler) {
            throw std::invalid_argument("Doppler tap outside grid bounds");
        }
    }
    if (pairing == Pairing::paired && doppler_taps.size() != delay_taps.size()) {
        throw std::invalid_argument("paired profile needs matching delay/Doppler list lengths");
    }
}

ChannelRealization draw_channel(const ChannelProfile& profile, std::mt19937_64& rng) {
    const std::size_t path_count = profile.delay_taps.size();
    if (path_count == 0) {
        throw std::invalid_argument("channel profile needs at least one delay tap");
    }

    // equal average power per path, sum E|h_p|^2 = 1
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 / static_cast<double>(path_count)));

    ChannelRealization ch;
    ch.paths.reserve(path_count);
    std::set<std::pair<int, int>> used;

    if (profile.pairing == ChannelProfile::Pairing::paired) {
        if (profile.doppler_taps.size() != path_count) {
            throw std::invalid_argument(
                "paired profile needs matching delay/Doppler list lengths");
        }
        for (std::size_t i = 0; i < path_count; ++i) {
            if (!used.emplace(profile.delay_taps[i], profile.doppler_taps[i]).second) {
                throw std::invalid_argument("paired profile has duplicate (delay, Doppler) pairs");
            }
        }
        for (std::size_t i = 0; i < path_count; ++i) {
            const Complex gain(gauss(rng), gauss(rng));
            ch.paths.push_back({gain, profile.delay_taps[i], profile.doppler_taps[i]});
        }
        return ch;
    }

    // random-doppler mode: a delay tap repeated more often than there are
    // Doppler choices can never yield distinct pairs
    for (int tau : profile.delay_taps) {
        const auto repeats = std::count(profile.delay_taps.begin(), profile.delay_taps.end(), tau);
        if (static_cast<std::size_t>(repeats) > profile.doppler_taps.size()) {
            throw std::invalid_argument("profile cannot produce distinct (delay, Doppler) pairs");
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, profile.doppler_taps.size() - 1);
    for (int tau : profile.delay_taps) {
        int nu = profile.doppler_taps[pick(rng)];
        while (used.count({tau, nu}) != 0) {
            nu = profile.doppler_taps[pick(rng)];
        }
        used.emplace(tau, nu);
        const Complex gain(gauss(rng), gauss(rng));
        ch.paths.push_back({gain, tau, nu});
    }
    return ch;
}

DDGrid apply_channel(const DDGrid& grid, const ChannelRealization& ch) {
    const int n = static_cast<int>(grid.rows());
    const int m = static_cast<int>(grid.cols());
    ch.validate(n, m);

    DDGrid out = DDGrid::Zero(n, m);
    std::vector<int> src_col(m);
    for (const Path& p : ch.paths) {
        for (int l = 0; l < m; ++l) {
            src_col[l] = wrap(l - p.delay_tap, m);
        }
        for (int k = 0; k < n; ++k) {
            const int src_row = wrap(k - p.doppler_tap, n);
            for (int l = 0; l < m; ++l) {
                out(k, l) += p.gain * grid(src_row, src_col[l]);
            }
        }
    }
    return out;
}

DDGrid add_awgn(const DDGrid& grid, const NoiseSpec& noise, std::mt19937_64& rng) {
    if (noise.sigma_sq < 0.0) {
        throw std::invalid_argument("noise variance must be non-negative");
    }
    if (noise.sigma_sq == 0.0) {
        return grid;
    }
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise.sigma_sq / 2.0));
    DDGrid out = grid;
    for (Eigen::Index k = 0; k < out.rows(); ++k) {
        for (Eigen::Index l = 0; l < out.cols(); ++l) {
            out(k, l) += Complex(gauss(rng), gauss(rng));
        }
    }
    return out;
}

void write_channel(std::ostream& os, const ChannelRealization& ch) {
    char buf[128];
    for (std::size_t i = 0; i < ch.paths.size(); ++i) {
        const Path& p = ch.paths[i];
        std::snprintf(buf, sizeof(buf), "%zu, %.17g, %.17g, %d, %d\n", i, p.gain.real(),
                      p.gain.imag(), p.delay_tap, p.doppler_tap);
        os << buf;
    }
}

}  // namespace ddm
