#pragma once

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddm/mseq.hpp"

namespace ddm {

using Complex = std::complex<double>;

/// Delay-Doppler resource grid. Row index k is the Doppler tap (N rows),
/// column index l is the delay tap (M columns); entries are dimensionless
/// baseband amplitudes.
using DDGrid = Eigen::MatrixXcd;

/// All-zero grid of the requested shape. Throws std::invalid_argument for
/// non-positive dimensions.
DDGrid new_grid(Eigen::Index n_doppler, Eigen::Index m_delay);

/// Total power sum |cells|^2 of any grid-shaped expression.
template <typename Derived>
double total_power(const Eigen::MatrixBase<Derived>& grid) {
    return grid.squaredNorm();
}

/// One propagation path: complex gain, delay offset in taps, Doppler offset
/// in taps.
struct Path {
    Complex gain;
    int delay_tap = 0;
    int doppler_tap = 0;
};

/// A resolvable multipath channel: at least one path, all (delay, Doppler)
/// pairs pairwise distinct.
struct ChannelRealization {
    std::vector<Path> paths;

    /// Throws std::invalid_argument if the realization violates its
    /// invariants or falls outside an n_doppler x m_delay grid.
    void validate(int n_doppler, int m_delay) const;
};

/**
 * Frame geometry and pilot parameters.
 *
 * The pilot row sits at Doppler index `pilot_doppler`; `guard_half_width`
 * zeroed rows flank it on each side (cyclically). Path identification scans
 * Doppler offsets 0..doppler_search_max above the pilot row, and the scan
 * must stay inside the guard so shifted data rows cannot contaminate it.
 */
struct FrameConfig {
    int n_doppler = 32;
    int m_delay = 64;
    int pilot_doppler = 1;
    int guard_half_width = 10;
    double data_symbol_energy = 1.0;
    LfsrSpec sequence_spec{};
    int doppler_search_max = 10;

    /// Number of data symbols a frame carries: (N - (2G+1)) * M.
    Eigen::Index data_cell_count() const;

    void validate() const;
};

/// Plain-text grid dump: header "N=<n> M=<m>", then one line per Doppler
/// row with cells formatted "re+imj" and separated by commas.
void write_grid(std::ostream& os, const DDGrid& grid);
std::string format_grid(const DDGrid& grid);

}  // namespace ddm
