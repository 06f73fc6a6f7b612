#include "ddm/pilot.hpp"

#include <cassert>
#include <cmath>

namespace ddm {

namespace {

int wrap(int value, int modulus) {
    int r = value % modulus;
    return r < 0 ? r + modulus : r;
}

std::vector<int> data_row_indices(const FrameConfig& config) {
    std::vector<bool> pilot_region(config.n_doppler, false);
    for (int d = -config.guard_half_width; d <= config.guard_half_width; ++d) {
        pilot_region[wrap(config.pilot_doppler + d, config.n_doppler)] = true;
    }
    std::vector<int> rows;
    for (int k = 0; k < config.n_doppler; ++k) {
        if (!pilot_region[k]) {
            rows.push_back(k);
        }
    }
    return rows;
}

void fill_data_rows(DDGrid& grid, const std::vector<int>& rows, const Eigen::VectorXcd& data) {
    Eigen::Index idx = 0;
    for (int k : rows) {
        for (Eigen::Index l = 0; l < grid.cols(); ++l) {
            grid(k, l) = data(idx++);
        }
    }
}

void check_data_size(const FrameConfig& config, const Eigen::VectorXcd& data) {
    if (data.size() != config.data_cell_count()) {
        throw std::invalid_argument("data vector must hold exactly (N - (2G+1)) * M symbols");
    }
}

}  // namespace

CellRole cell_role(const PilotLayout& layout, int n_doppler, int k, int l) {
    const int offset = wrap(k - layout.pilot_doppler, n_doppler);
    const bool in_region =
        offset <= layout.guard_half_width || offset >= n_doppler - layout.guard_half_width;
    if (!in_region) {
        return CellRole::data;
    }
    if (k == layout.pilot_doppler &&
        (layout.kind == PilotKind::sequence || l == layout.pulse_delay)) {
        return CellRole::pilot;
    }
    return CellRole::guard;
}

double boost_factor(const FrameConfig& config) {
    return std::sqrt((2.0 * config.guard_half_width + 1.0) * config.data_symbol_energy);
}

FrameBundle build_sequence_pilot_frame(const FrameConfig& config, const BipolarSequence& seq,
                                       const Eigen::VectorXcd& data) {
    config.validate();
    check_data_size(config, data);
    const Eigen::Index m = config.m_delay;
    if (seq.size() != m && seq.size() != m - 1) {
        throw std::invalid_argument("sequence length must be M or M-1");
    }

    const double boost = boost_factor(config);
    Eigen::VectorXcd row(m);
    for (Eigen::Index l = 0; l < seq.size(); ++l) {
        row(l) = Complex(boost * seq(l), 0.0);
    }
    if (seq.size() == m - 1) {
        row(m - 1) = Complex(boost, 0.0);  // dummy entry, same boosted magnitude
    }

    FrameBundle bundle;
    bundle.layout = {PilotKind::sequence, config.pilot_doppler, config.guard_half_width, -1, boost};
    bundle.pilot_reference = row;
    bundle.data_rows = data_row_indices(config);
    bundle.grid = DDGrid::Zero(config.n_doppler, m);
    bundle.grid.row(config.pilot_doppler) = row.transpose();
    fill_data_rows(bundle.grid, bundle.data_rows, data);

    // power parity with the pulse design: pilot region carries (2G+1)*M*E_d
    assert(std::abs(row.squaredNorm() - (2.0 * config.guard_half_width + 1.0) * m *
                                            config.data_symbol_energy) <
           1e-9 * row.squaredNorm());
    return bundle;
}

FrameBundle build_pulse_pilot_frame(const FrameConfig& config, const Eigen::VectorXcd& data,
                                    int pulse_delay) {
    config.validate();
    check_data_size(config, data);
    const Eigen::Index m = config.m_delay;
    if (pulse_delay < 0) {
        pulse_delay = static_cast<int>(m / 2);
    }
    if (pulse_delay >= m) {
        throw std::invalid_argument("pulse delay outside frame");
    }

    // the full pilot-region budget in one entry
    const double amplitude =
        std::sqrt((2.0 * config.guard_half_width + 1.0) * static_cast<double>(m) *
                  config.data_symbol_energy);
    Eigen::VectorXcd row = Eigen::VectorXcd::Zero(m);
    row(pulse_delay) = Complex(amplitude, 0.0);

    FrameBundle bundle;
    bundle.layout = {PilotKind::pulse, config.pilot_doppler, config.guard_half_width, pulse_delay,
                     amplitude};
    bundle.pilot_reference = row;
    bundle.data_rows = data_row_indices(config);
    bundle.grid = DDGrid::Zero(config.n_doppler, m);
    bundle.grid.row(config.pilot_doppler) = row.transpose();
    fill_data_rows(bundle.grid, bundle.data_rows, data);

    assert(std::abs(row.squaredNorm() - (2.0 * config.guard_half_width + 1.0) * m *
                                            config.data_symbol_energy) <
           1e-9 * row.squaredNorm());
    return bundle;
}

DDGrid build_data_only_frame(const FrameConfig& config, const Eigen::VectorXcd& data) {
    config.validate();
    check_data_size(config, data);
    DDGrid grid = DDGrid::Zero(config.n_doppler, config.m_delay);
    fill_data_rows(grid, data_row_indices(config), data);
    return grid;
}

Eigen::VectorXcd generate_qpsk_data(Eigen::Index count, double energy, std::mt19937_64& rng) {
    if (count < 0) {
        throw std::invalid_argument("symbol count must be non-negative");
    }
    if (energy <= 0.0) {
        throw std::invalid_argument("symbol energy must be positive");
    }
    const double amp = std::sqrt(energy / 2.0);
    static constexpr double kI[4] = {1.0, -1.0, -1.0, 1.0};
    static constexpr double kQ[4] = {1.0, 1.0, -1.0, -1.0};
    std::uniform_int_distribution<int> pick(0, 3);
    Eigen::VectorXcd out(count);
    for (Eigen::Index i = 0; i < count; ++i) {
        const int s = pick(rng);
        out(i) = Complex(amp * kI[s], amp * kQ[s]);
    }
    return out;
}

}  // namespace ddm
