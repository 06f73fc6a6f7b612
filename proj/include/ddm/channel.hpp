#pragma once

#include <iosfwd>
#include <random>
#include <vector>

#include "ddm/frame.hpp"

namespace ddm {

/**
 * Random channel description for the limited-Doppler-shift model: every
 * path falls on an integer (delay, Doppler) grid point.
 *
 * One path is generated per delay-tap entry. In `paired` mode path i takes
 * doppler_taps[i]; in `random_doppler` mode each path draws its Doppler
 * uniformly from the profile (re-drawing on (delay, Doppler) collisions).
 * Gains are i.i.d. complex Gaussian scaled so the expected total path power
 * sum E|h_p|^2 equals 1.
 */
struct ChannelProfile {
    enum class Pairing { paired, random_doppler };

    std::vector<int> delay_taps = {0, 1, 2, 3, 4, 5};
    std::vector<int> doppler_taps = {0, 1, 2, 3, 4, 5};
    Pairing pairing = Pairing::paired;

    void validate(int n_doppler, int m_delay) const;
};

/// Per-cell complex noise variance sigma^2 (sigma^2/2 per real component).
struct NoiseSpec {
    double sigma_sq = 0.0;
};

/// Draw one channel realization from the profile. Deterministic given the
/// generator state. Throws std::invalid_argument for profiles that cannot
/// produce distinct (delay, Doppler) pairs.
ChannelRealization draw_channel(const ChannelProfile& profile, std::mt19937_64& rng);

/// Doubly-cyclic delay-Doppler coupling:
///   Y[k][l] = sum_p h_p * X[(k - nu_p) mod N][(l - tau_p) mod M].
/// Linear in X; each single path is a power-|h|^2-scaled permutation.
DDGrid apply_channel(const DDGrid& grid, const ChannelRealization& ch);

/// Add i.i.d. circularly-symmetric complex Gaussian noise of per-cell
/// variance sigma_sq. sigma_sq == 0 returns the grid unchanged (and draws
/// nothing from the generator).
DDGrid add_awgn(const DDGrid& grid, const NoiseSpec& noise, std::mt19937_64& rng);

/// Text dump, one line per path: "p, re(h), im(h), tau, nu".
void write_channel(std::ostream& os, const ChannelRealization& ch);

}  // namespace ddm
