#include "ddm/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "ddm/mseq.hpp"

namespace ddm {

namespace {

int wrap(int value, int modulus) {
    int r = value % modulus;
    return r < 0 ? r + modulus : r;
}

Eigen::MatrixXcd shifted_pilot_columns(const std::vector<int>& shifts,
                                       const Eigen::VectorXcd& pilot_row) {
    const Eigen::Index m = pilot_row.size();
    const Eigen::Index p = static_cast<Eigen::Index>(shifts.size());
    if (p == 0 || p > m) {
        throw std::invalid_argument("shift count must lie in [1, M]");
    }
    std::set<int> distinct(shifts.begin(), shifts.end());
    if (distinct.size() != shifts.size()) {
        throw std::invalid_argument("delay shifts must be distinct");
    }
    Eigen::MatrixXcd x(m, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        x.col(j) = cyclic_shift(pilot_row, shifts[static_cast<std::size_t>(j)]);
    }
    return x;
}

}  // namespace

DetectionMatrix build_detection_matrix(const Eigen::VectorXcd& pilot_row) {
    const Eigen::Index m = pilot_row.size();
    if (m < 1) {
        throw std::invalid_argument("pilot row must be non-empty");
    }
    DetectionMatrix pd;
    pd.rows.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        pd.rows.row(i) = cyclic_shift(pilot_row, i).transpose();
    }
    return pd;
}

double default_threshold(const NoiseSpec& noise, double pilot_row_energy, double eta) {
    if (noise.sigma_sq < 0.0 || pilot_row_energy < 0.0 || eta < 0.0) {
        throw std::invalid_argument("threshold inputs must be non-negative");
    }
    return eta * std::sqrt(pilot_row_energy * noise.sigma_sq);
}

std::vector<Detection> identify_paths(const std::vector<DopplerRow>& region_rows,
                                      const DetectionMatrix& pd, double beta) {
    if (region_rows.empty()) {
        throw std::invalid_argument("detection region is empty");
    }
    const Eigen::Index m = pd.rows.rows();
    std::vector<Detection> detections;
    for (const DopplerRow& row : region_rows) {
        if (row.samples.size() != m) {
            throw std::invalid_argument("row length does not match detection matrix");
        }
        const Eigen::VectorXcd v = pd.rows.conjugate() * row.samples;
        for (Eigen::Index l = 0; l < m; ++l) {
            const double score = std::abs(v(l));
            if (score > beta) {
                detections.push_back({static_cast<int>(l), row.doppler_offset, score});
            }
        }
    }
    return detections;
}

Complex estimate_single(const Eigen::VectorXcd& y_row, const Eigen::VectorXcd& pilot_shifted) {
    if (y_row.size() != pilot_shifted.size() || y_row.size() == 0) {
        throw std::invalid_argument("row and pilot must have equal nonzero length");
    }
    for (Eigen::Index i = 0; i < pilot_shifted.size(); ++i) {
        if (pilot_shifted(i) == Complex(0.0, 0.0)) {
            throw DivisionDegenerateError("pilot entry is zero, point-wise division undefined");
        }
    }
    return (y_row.array() / pilot_shifted.array()).mean();
}

Eigen::VectorXcd estimate_joint(const Eigen::VectorXcd& y_row, const std::vector<int>& shifts,
                                const Eigen::VectorXcd& pilot_row) {
    if (y_row.size() != pilot_row.size()) {
        throw std::invalid_argument("row and pilot must have equal length");
    }
    const Eigen::MatrixXcd x = shifted_pilot_columns(shifts, pilot_row);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(x);
    if (qr.rank() < x.cols()) {
        throw SingularSystemError("shifted pilot system is rank deficient");
    }
    return qr.solve(y_row);
}

std::vector<PathEstimate> pulse_power_detector(const DDGrid& received, Complex pulse_amplitude,
                                               int pilot_doppler, int pulse_delay,
                                               double beta_power, int doppler_search_max) {
    const int n = static_cast<int>(received.rows());
    const int m = static_cast<int>(received.cols());
    if (pilot_doppler < 0 || pilot_doppler >= n || pulse_delay < 0 || pulse_delay >= m) {
        throw std::invalid_argument("pulse position outside grid");
    }
    if (std::abs(pulse_amplitude) == 0.0) {
        throw std::invalid_argument("pulse amplitude must be nonzero");
    }
    std::vector<PathEstimate> estimates;
    for (int nu = 0; nu <= doppler_search_max; ++nu) {
        const int k = wrap(pilot_doppler + nu, n);
        for (int l = 0; l < m; ++l) {
            const double power = std::norm(received(k, l));
            if (power > beta_power) {
                estimates.push_back({wrap(l - pulse_delay, m), nu,
                                     received(k, l) / pulse_amplitude, power});
            }
        }
    }
    return estimates;
}

EstimationReport estimate_sequence_frame(const DDGrid& received, const FrameConfig& config,
                                         const Eigen::VectorXcd& pilot_reference,
                                         const NoiseSpec& noise,
                                         const SequenceEstimatorOptions& options) {
    config.validate();
    if (received.rows() != config.n_doppler || received.cols() != config.m_delay) {
        throw std::invalid_argument("received grid does not match frame config");
    }

    const DetectionMatrix pd = build_detection_matrix(pilot_reference);
    EstimationReport report;
    report.threshold_used =
        default_threshold(noise, pilot_reference.squaredNorm(), options.eta);

    std::vector<DopplerRow> region;
    region.reserve(config.doppler_search_max + 1);
    for (int nu = 0; nu <= config.doppler_search_max; ++nu) {
        const int k = wrap(config.pilot_doppler + nu, config.n_doppler);
        report.detected_doppler_rows.push_back(k);
        region.push_back({nu, received.row(k).transpose()});
    }

    const std::vector<Detection> raw = identify_paths(region, pd, report.threshold_used);

    for (const DopplerRow& row : region) {
        std::vector<const Detection*> in_row;
        double row_peak = 0.0;
        for (const Detection& d : raw) {
            if (d.doppler_offset == row.doppler_offset) {
                in_row.push_back(&d);
                row_peak = std::max(row_peak, d.score);
            }
        }
        // reject dummy-induced correlation sidelobes relative to the row peak
        std::vector<const Detection*> kept;
        for (const Detection* d : in_row) {
            if (d->score >= options.sidelobe_rejection * row_peak) {
                kept.push_back(d);
            }
        }
        if (kept.empty()) {
            continue;
        }
        if (kept.size() == 1) {
            const Detection* d = kept.front();
            const Complex gain =
                estimate_single(row.samples, cyclic_shift(pilot_reference, d->delay_tap));
            report.estimates.push_back({d->delay_tap, d->doppler_offset, gain, d->score});
        } else {
            std::vector<int> shifts;
            shifts.reserve(kept.size());
            for (const Detection* d : kept) {
                shifts.push_back(d->delay_tap);
            }
            const Eigen::VectorXcd gains = estimate_joint(row.samples, shifts, pilot_reference);
            for (std::size_t j = 0; j < kept.size(); ++j) {
                report.estimates.push_back({kept[j]->delay_tap, kept[j]->doppler_offset,
                                            gains(static_cast<Eigen::Index>(j)),
                                            kept[j]->score});
            }
        }
    }
    return report;
}

EstimationReport estimate_pulse_frame(const DDGrid& received, const FrameConfig& config,
                                      Complex pulse_amplitude, int pulse_delay,
                                      double beta_power) {
    config.validate();
    if (received.rows() != config.n_doppler || received.cols() != config.m_delay) {
        throw std::invalid_argument("received grid does not match frame config");
    }
    EstimationReport report;
    report.threshold_used = beta_power;
    for (int nu = 0; nu <= config.doppler_search_max; ++nu) {
        report.detected_doppler_rows.push_back(
            wrap(config.pilot_doppler + nu, config.n_doppler));
    }
    report.estimates = pulse_power_detector(received, pulse_amplitude, config.pilot_doppler,
                                            pulse_delay, beta_power, config.doppler_search_max);
    return report;
}

void write_estimates_csv(std::ostream& os, const EstimationReport& report) {
    os << "k,l,re_h_hat,im_h_hat,score\n";
    char buf[160];
    for (const PathEstimate& e : report.estimates) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g\n", e.doppler_tap, e.delay_tap,
                      e.gain_hat.real(), e.gain_hat.imag(), e.correlation_score);
        os << buf;
    }
}

}  // namespace ddm
