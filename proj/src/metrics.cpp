#include "ddm/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ddm {

double papr_db(const TimeSamples& ts) {
    if (ts.samples.size() == 0) {
        throw UndefinedPaprError("no samples");
    }
    const Eigen::ArrayXd power = ts.samples.array().abs2();
    const double peak = power.maxCoeff();
    if (peak == 0.0) {
        throw UndefinedPaprError("all-zero sample stream has no PAPR");
    }
    return 10.0 * std::log10(peak / power.mean());
}

CcdfCurve ccdf(const std::vector<double>& values_db, const Eigen::VectorXd& thresholds_db) {
    if (values_db.empty()) {
        throw std::invalid_argument("ccdf needs at least one value");
    }
    for (Eigen::Index i = 1; i < thresholds_db.size(); ++i) {
        if (thresholds_db(i) <= thresholds_db(i - 1)) {
            throw std::invalid_argument("ccdf thresholds must be strictly ascending");
        }
    }
    CcdfCurve curve{thresholds_db, Eigen::VectorXd(thresholds_db.size())};
    const double count = static_cast<double>(values_db.size());
    for (Eigen::Index i = 0; i < thresholds_db.size(); ++i) {
        const auto above = std::count_if(values_db.begin(), values_db.end(),
                                         [&](double v) { return v > thresholds_db(i); });
        curve.exceed_prob(i) = static_cast<double>(above) / count;
    }
    return curve;
}

double nmse(const ChannelRealization& truth, const std::vector<PathEstimate>& estimates,
            int n_doppler, int m_delay) {
    truth.validate(n_doppler, m_delay);
    DDGrid h = DDGrid::Zero(n_doppler, m_delay);
    DDGrid h_hat = DDGrid::Zero(n_doppler, m_delay);
    for (const Path& p : truth.paths) {
        h(p.doppler_tap, p.delay_tap) += p.gain;
    }
    for (const PathEstimate& e : estimates) {
        if (e.doppler_tap < 0 || e.doppler_tap >= n_doppler || e.delay_tap < 0 ||
            e.delay_tap >= m_delay) {
            throw std::invalid_argument("estimate taps outside grid bounds");
        }
        h_hat(e.doppler_tap, e.delay_tap) += e.gain_hat;
    }
    const double denom = h.squaredNorm();
    if (denom == 0.0) {
        throw std::invalid_argument("true channel grid has zero power");
    }
    return (h_hat - h).squaredNorm() / denom;
}

Eigen::MatrixXcd gram_matrix(const std::vector<int>& shifts, const Eigen::VectorXcd& pilot_row) {
    const Eigen::Index m = pilot_row.size();
    const Eigen::Index p = static_cast<Eigen::Index>(shifts.size());
    if (p == 0 || p > m) {
        throw std::invalid_argument("shift count must lie in [1, M]");
    }
    Eigen::MatrixXcd x(m, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        x.col(j) = cyclic_shift(pilot_row, shifts[static_cast<std::size_t>(j)]);
    }
    return x.adjoint() * x;
}

Eigen::VectorXd gram_eigenvalues(int p_paths, int m_len) {
    if (p_paths < 1 || p_paths > m_len) {
        throw std::invalid_argument("need 1 <= P <= M");
    }
    Eigen::VectorXd eigenvalues(p_paths);
    eigenvalues(0) = static_cast<double>(m_len + 1 - p_paths);
    for (int i = 1; i < p_paths; ++i) {
        eigenvalues(i) = static_cast<double>(m_len + 1);
    }
    return eigenvalues;
}

namespace {

void check_inputs(const ErrorModelInputs& in) {
    if (in.p_paths < 1 || in.p_paths > in.m_len) {
        throw std::invalid_argument("need 1 <= P <= M");
    }
    if (in.sigma_sq < 0.0) {
        throw std::invalid_argument("noise variance must be non-negative");
    }
}

}  // namespace

double prop1_epsilon_sq(const ErrorModelInputs& in) {
    check_inputs(in);
    const double m = in.m_len;
    const double p = in.p_paths;
    return (m * p - (p - 1.0) * (p - 1.0)) / (m * p * (m - p + 1.0)) * in.sigma_sq;
}

double exact_epsilon_sq(const ErrorModelInputs& in) {
    check_inputs(in);
    const double m = in.m_len;
    const double p = in.p_paths;
    return in.sigma_sq / p * (1.0 / (m + 1.0 - p) + (p - 1.0) / (m + 1.0));
}

SnrComparison snr_comparison(int m_len, int p_paths, double snr_pulse) {
    if (p_paths < 1 || p_paths > m_len) {
        throw std::invalid_argument("need 1 <= P <= M");
    }
    if (snr_pulse <= 0.0) {
        throw std::invalid_argument("pulse SNR must be positive");
    }
    const double deviation = (p_paths - 1.0) / (static_cast<double>(p_paths) *
                                                (m_len - p_paths + 1.0));
    return {snr_pulse / (1.0 + deviation), deviation};
}

}  // namespace ddm
