#pragma once

#include <stdexcept>
#include <vector>

#include "ddm/estimator.hpp"
#include "ddm/frame.hpp"
#include "ddm/modem.hpp"

namespace ddm {

/// Empirical complementary CDF of per-frame PAPR values.
struct CcdfCurve {
    Eigen::VectorXd thresholds_db;  // ascending
    Eigen::VectorXd exceed_prob;    // P(PAPR > threshold), non-increasing
};

class UndefinedPaprError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Peak-to-average power ratio over all N*M samples:
/// 10*log10(max|s|^2 / mean|s|^2). All-zero input has no PAPR.
double papr_db(const TimeSamples& ts);

/// exceed_prob[i] = fraction of values strictly greater than thresholds[i].
/// Thresholds must be ascending; values must be non-empty.
CcdfCurve ccdf(const std::vector<double>& values_db, const Eigen::VectorXd& thresholds_db);

/// Grid-level normalized MSE: true gains and estimated gains are placed on
/// N x M delay-Doppler grids (zero where no path / no estimate) and compared
/// as sum|Hhat - H|^2 / sum|H|^2, so missed paths and false alarms both
/// penalize.
double nmse(const ChannelRealization& truth, const std::vector<PathEstimate>& estimates,
            int n_doppler, int m_delay);

/// X^H X for the matrix of shifted pilot columns at the given delays.
Eigen::MatrixXcd gram_matrix(const std::vector<int>& shifts, const Eigen::VectorXcd& pilot_row);

/// Exact spectrum of the M-sequence Gram matrix (diagonal M, off-diagonal
/// -1, unit-power entries): eigenvalue M+1-P once and M+1 with multiplicity
/// P-1, returned ascending. The multiset sums to the trace M*P.
Eigen::VectorXd gram_eigenvalues(int p_paths, int m_len);

/// Inputs of the closed-form error model: sequence length M, co-Doppler
/// path count P, noise variance sigma^2.
struct ErrorModelInputs {
    int m_len = 63;
    int p_paths = 1;
    double sigma_sq = 1.0;
};

/// Closed-form mean per-coefficient estimation error power
///   eps^2 = (M*P - (P-1)^2) / (M*P*(M-P+1)) * sigma^2.
double prop1_epsilon_sq(const ErrorModelInputs& inputs);

/// Exact trace-based oracle for the same quantity, computed from the exact
/// Gram spectrum: (sigma^2/P) * (1/(M+1-P) + (P-1)/(M+1)). Coincides with
/// prop1_epsilon_sq at P = 1 and differs by under 2% for P <= 6, M = 63.
double exact_epsilon_sq(const ErrorModelInputs& inputs);

/// Equivalent-SNR comparison against the pulse pilot at equal total power:
/// deviation d = (P-1)/(P*(M-P+1)) and SNR_seq = SNR_pulse / (1 + d).
struct SnrComparison {
    double snr_seq = 0.0;
    double deviation = 0.0;
};

SnrComparison snr_comparison(int m_len, int p_paths, double snr_pulse);

}  // namespace ddm
