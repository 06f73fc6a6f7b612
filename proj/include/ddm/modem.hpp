#pragma once

#include <Eigen/Dense>

#include "ddm/frame.hpp"

namespace ddm {

/// Vectorized time-domain frame. samples[n*M + l] is the delay-time sample
/// at time slot n, delay tap l; the frame shape is kept for the inverse.
struct TimeSamples {
    Eigen::VectorXcd samples;
    Eigen::Index n_doppler = 0;
    Eigen::Index m_delay = 0;
};

/// Unitary N-point inverse-DFT matrix used on each delay-tap column:
/// F(n, k) = exp(+j 2 pi k n / N) / sqrt(N).
Eigen::MatrixXcd doppler_idft_matrix(Eigen::Index n);

/**
 * Delay-Doppler grid to time samples.
 *
 * Each delay-tap column is taken to delay-time by the unitary inverse DFT
 * over the Doppler axis, then the N x M delay-time block is vectorized
 * row-major (time slot outer, delay tap inner). Power is preserved.
 */
TimeSamples dd_to_time(const DDGrid& grid);

/// Exact inverse of dd_to_time. Throws std::invalid_argument when the sample
/// count does not match the declared frame shape.
DDGrid time_to_dd(const TimeSamples& ts);

/// Text IQ export, one line per sample: "index,re,im".
void write_iq(std::ostream& os, const TimeSamples& ts);

}  // namespace ddm
