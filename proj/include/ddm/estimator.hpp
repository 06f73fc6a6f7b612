#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "ddm/channel.hpp"
#include "ddm/frame.hpp"

namespace ddm {

/// All M cyclic shifts of the transmitted pilot row, one per matrix row;
/// row 0 is the pilot row itself, row i its i-cyclic-shift.
struct DetectionMatrix {
    Eigen::MatrixXcd rows;
};

DetectionMatrix build_detection_matrix(const Eigen::VectorXcd& pilot_row);

/// Noise-referenced correlation threshold: beta = eta * sqrt(E_row * sigma^2),
/// the eta-sigma point of the noise-only correlation magnitude. Noiseless
/// input gives beta = 0 (any nonzero correlation detects).
double default_threshold(const NoiseSpec& noise, double pilot_row_energy, double eta = 4.0);

/// One received Doppler row handed to path identification, keyed by its
/// offset above the pilot row.
struct DopplerRow {
    int doppler_offset = 0;
    Eigen::VectorXcd samples;
};

/// Stage-1 output: a delay shift, the Doppler offset of the row it was found
/// in, and the correlation magnitude that triggered it.
struct Detection {
    int delay_tap = 0;
    int doppler_offset = 0;
    double score = 0.0;
};

/**
 * Path identification: correlate every detection-matrix row against each
 * received Doppler row (conjugate correlation v_l = p_l^H r) and emit one
 * detection per entry with |v_l| > beta.
 *
 * Throws std::invalid_argument for an empty region or rows whose length
 * does not match the detection matrix.
 */
std::vector<Detection> identify_paths(const std::vector<DopplerRow>& region_rows,
                                      const DetectionMatrix& pd, double beta);

/// Thrown by estimate_single when a pilot entry is exactly zero.
class DivisionDegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by estimate_joint when the shifted-pilot system is rank deficient.
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Stage-2a, single path in a Doppler row: point-wise division of the row by
/// the shifted pilot, averaged over the M entries.
Complex estimate_single(const Eigen::VectorXcd& y_row, const Eigen::VectorXcd& pilot_shifted);

/// Stage-2b, multiple co-Doppler paths: least-squares solution of
/// y = X h with X = [x_C(l_1), ..., x_C(l_P)], the cyclic shifts of the
/// pilot row at the identified delays.
Eigen::VectorXcd estimate_joint(const Eigen::VectorXcd& y_row, const std::vector<int>& shifts,
                                const Eigen::VectorXcd& pilot_row);

/// One estimated path. For sequence estimates the score is the stage-1
/// correlation magnitude; for the pulse detector it is the cell power that
/// crossed the threshold.
struct PathEstimate {
    int delay_tap = 0;
    int doppler_tap = 0;
    Complex gain_hat{0.0, 0.0};
    double correlation_score = 0.0;
};

struct EstimationReport {
    std::vector<PathEstimate> estimates;
    std::vector<int> detected_doppler_rows;  // absolute row indices scanned
    double threshold_used = 0.0;
};

/// Pulse-pilot baseline: scan rows k0..k0+doppler_search_max and turn every
/// cell with |y|^2 > beta_power into a path estimate at offsets
/// ((l - l0) mod M, (k - k0) mod N) with gain y / pulse_amplitude.
std::vector<PathEstimate> pulse_power_detector(const DDGrid& received, Complex pulse_amplitude,
                                               int pilot_doppler, int pulse_delay,
                                               double beta_power, int doppler_search_max);

/**
 * Detection policy knobs for the full sequence-pilot estimator.
 *
 * `eta` feeds default_threshold. `sidelobe_rejection` additionally requires
 * each per-row detection to reach that fraction of the row's strongest
 * correlation. The dummy entry that pads the sequence to M delay taps makes
 * cross-correlations as large as 12/64 of the peak (measured for the
 * degree-6 sequence), so the default 0.25 rejects those sidelobes at any
 * gain while never touching the peak itself; it also keeps the noiseless
 * beta = 0 case from flooding stage 2 with every shift.
 */
struct SequenceEstimatorOptions {
    double eta = 4.0;
    double sidelobe_rejection = 0.25;
};

/**
 * Both stages of the sequence-pilot channel estimator.
 *
 * Stage 1 scans rows k0..k0+doppler_search_max with identify_paths against
 * the detection matrix of `pilot_reference`, then applies the sidelobe
 * rejection per row. Stage 2 estimates gains by point-wise division when a
 * row holds one delay and jointly by least squares when it holds several.
 */
EstimationReport estimate_sequence_frame(const DDGrid& received, const FrameConfig& config,
                                         const Eigen::VectorXcd& pilot_reference,
                                         const NoiseSpec& noise,
                                         const SequenceEstimatorOptions& options = {});

/// Pulse-pilot counterpart of estimate_sequence_frame.
EstimationReport estimate_pulse_frame(const DDGrid& received, const FrameConfig& config,
                                      Complex pulse_amplitude, int pulse_delay,
                                      double beta_power);

/// CSV export, one line per estimate: "k,l,re(h_hat),im(h_hat),score".
void write_estimates_csv(std::ostream& os, const EstimationReport& report);

}  // namespace ddm
