#pragma once

#include <random>

#include "ddm/frame.hpp"
#include "ddm/mseq.hpp"

namespace ddm {

enum class PilotKind { sequence, pulse };

/// Placement and scaling of the pilot inside a frame.
struct PilotLayout {
    PilotKind kind = PilotKind::sequence;
    int pilot_doppler = 1;
    int guard_half_width = 10;
    int pulse_delay = -1;       // pulse kind only
    double boost_factor = 1.0;  // amplitude scale applied to pilot entries
};

enum class CellRole { pilot, guard, data };

/// Classify cell (k, l); the three roles partition the grid.
CellRole cell_role(const PilotLayout& layout, int n_doppler, int k, int l);

/// A built transmit frame plus the bookkeeping the estimator and the
/// metrics need: the exact pilot row as transmitted and the data rows.
struct FrameBundle {
    DDGrid grid;
    PilotLayout layout;
    Eigen::VectorXcd pilot_reference;  // full pilot row k0, boost included
    std::vector<int> data_rows;        // ascending Doppler indices
};

/// Per-entry pilot amplitude scale under the guard-power-borrowing policy:
/// the (2G+1)*M-cell pilot-region budget concentrated on M pilot entries
/// gives per-entry power (2G+1)*E_d, i.e. amplitude sqrt((2G+1)*E_d).
double boost_factor(const FrameConfig& config);

/**
 * Sequence-pilot frame: row k0 carries the boosted sequence across all M
 * delay taps, G guard rows on each side are zero, the remaining rows carry
 * `data` in row-major order.
 *
 * A sequence of length M-1 is completed with a dummy entry of value +boost
 * at delay M-1, keeping the per-delay-tap power balance intact. Sequence
 * lengths other than M or M-1, or a data vector that does not exactly fill
 * the data rows, throw std::invalid_argument.
 */
FrameBundle build_sequence_pilot_frame(const FrameConfig& config,
                                       const BipolarSequence& seq,
                                       const Eigen::VectorXcd& data);

/// Pulse-pilot baseline with the same resource overhead and power: a single
/// pulse of power (2G+1)*M*E_d at (k0, pulse_delay), zero guard block, data
/// elsewhere. pulse_delay < 0 selects the default floor(M/2).
FrameBundle build_pulse_pilot_frame(const FrameConfig& config,
                                    const Eigen::VectorXcd& data,
                                    int pulse_delay = -1);

/// Data rows only, pilot region zeroed: the pilot-free PAPR baseline.
DDGrid build_data_only_frame(const FrameConfig& config, const Eigen::VectorXcd& data);

/// i.i.d. uniform QPSK symbols of per-symbol energy `energy` (phases at
/// 45/135/225/315 degrees).
Eigen::VectorXcd generate_qpsk_data(Eigen::Index count, double energy, std::mt19937_64& rng);

}  // namespace ddm
