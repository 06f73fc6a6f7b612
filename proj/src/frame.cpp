#include "ddm/frame.hpp"

#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace ddm {

DDGrid new_grid(Eigen::Index n_doppler, Eigen::Index m_delay) {
    if (n_doppler < 1 || m_delay < 1) {
        throw std::invalid_argument("grid dimensions must be positive");
    }
    return DDGrid::Zero(n_doppler, m_delay);
}

void ChannelRealization::validate(int n_doppler, int m_delay) const {
    if (paths.empty()) {
        throw std::invalid_argument("channel realization must hold at least one path");
    }
    std::set<std::pair<int, int>> seen;
    for (const Path& p : paths) {
        if (p.delay_tap < 0 || p.delay_tap >= m_delay || p.doppler_tap < 0 ||
            p.doppler_tap >= n_doppler) {
            throw std::invalid_argument("path taps outside grid bounds");
        }
        if (!seen.emplace(p.delay_tap, p.doppler_tap).second) {
            throw std::invalid_argument("duplicate (delay, Doppler) pair in channel realization");
        }
    }
}

Eigen::Index FrameConfig::data_cell_count() const {
    return static_cast<Eigen::Index>(n_doppler - (2 * guard_half_width + 1)) * m_delay;
}

void FrameConfig::validate() const {
    if (n_doppler < 1 || m_delay < 1) {
        throw std::invalid_argument("frame dimensions must be positive");
    }
    if (pilot_doppler < 0 || pilot_doppler >= n_doppler) {
        throw std::invalid_argument("pilot row outside frame");
    }
    if (guard_half_width < 0 || 2 * guard_half_width + 1 > n_doppler) {
        throw std::invalid_argument("pilot region does not fit in frame");
    }
    if (data_symbol_energy <= 0.0) {
        throw std::invalid_argument("data symbol energy must be positive");
    }
    if (doppler_search_max < 0 || doppler_search_max > guard_half_width) {
        throw std::invalid_argument("doppler_search_max must lie in [0, guard_half_width]");
    }
}

void write_grid(std::ostream& os, const DDGrid& grid) {
    os << "N=" << grid.rows() << " M=" << grid.cols() << '\n';
    char buf[64];
    for (Eigen::Index k = 0; k < grid.rows(); ++k) {
        for (Eigen::Index l = 0; l < grid.cols(); ++l) {
            const Complex c = grid(k, l);
            std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", c.real(), c.imag());
            os << buf;
            if (l + 1 < grid.cols()) {
                os << ',';
            }
        }
        os << '\n';
    }
}

std::string format_grid(const DDGrid& grid) {
    std::ostringstream oss;
    write_grid(oss, grid);
    return oss.str();
}

}  // namespace ddm
