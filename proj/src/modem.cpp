#include "ddm/modem.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace ddm {

Eigen::MatrixXcd doppler_idft_matrix(Eigen::Index n) {
    Eigen::MatrixXcd f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (Eigen::Index slot = 0; slot < n; ++slot) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double angle = step * static_cast<double>((slot * k) % n);
            f(slot, k) = scale * Complex(std::cos(angle), std::sin(angle));
        }
    }
    return f;
}

TimeSamples dd_to_time(const DDGrid& grid) {
    const Eigen::Index n = grid.rows();
    const Eigen::Index m = grid.cols();
    const Eigen::MatrixXcd delay_time = doppler_idft_matrix(n) * grid;

    TimeSamples ts{Eigen::VectorXcd(n * m), n, m};
    // vectorize row-major: sample index n*M + l
    Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        ts.samples.data(), n, m) = delay_time;
    return ts;
}

DDGrid time_to_dd(const TimeSamples& ts) {
    const Eigen::Index n = ts.n_doppler;
    const Eigen::Index m = ts.m_delay;
    if (n < 1 || m < 1 || ts.samples.size() != n * m) {
        throw std::invalid_argument("time samples do not match the declared frame shape");
    }
    const auto delay_time =
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            ts.samples.data(), n, m);
    return doppler_idft_matrix(n).adjoint() * delay_time;
}

void write_iq(std::ostream& os, const TimeSamples& ts) {
    os << "index,re,im\n";
    char buf[80];
    for (Eigen::Index i = 0; i < ts.samples.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g\n", static_cast<long long>(i),
                      ts.samples(i).real(), ts.samples(i).imag());
        os << buf;
    }
}

}  // namespace ddm
