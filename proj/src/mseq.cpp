#include "ddm/mseq.hpp"

#include <algorithm>
#include <string>

namespace ddm {

namespace {

constexpr int kMaxDegree = 24;  // period check walks the full 2^d cycle

// Feedback mask over the state window (bit i = s_{n+i}): the recurrence
// s_{n+d} = s_n XOR sum_{a in taps, a < d} s_{n+a} follows from the
// polynomial x^d + sum x^a + 1.
std::uint64_t feedback_mask(const LfsrSpec& spec) {
    std::uint64_t mask = 1;  // constant term
    for (int tap : spec.taps) {
        if (tap <= 0 || tap > spec.degree) {
            throw std::invalid_argument("lfsr tap " + std::to_string(tap) +
                                        " outside [1, degree]");
        }
        if (tap < spec.degree) {
            mask |= std::uint64_t{1} << tap;
        }
    }
    return mask;
}

std::uint64_t step(std::uint64_t state, std::uint64_t fb_mask, int degree) {
    const std::uint64_t fb = static_cast<std::uint64_t>(__builtin_parityll(state & fb_mask));
    return (state >> 1) | (fb << (degree - 1));
}

}  // namespace

BipolarSequence generate_mseq(const LfsrSpec& spec) {
    if (spec.degree < 2 || spec.degree > kMaxDegree) {
        throw std::invalid_argument("lfsr degree must be in [2, " +
                                    std::to_string(kMaxDegree) + "]");
    }
    const std::uint64_t fb_mask = feedback_mask(spec);
    const std::uint64_t state_mask = (std::uint64_t{1} << spec.degree) - 1;
    const std::uint64_t initial = spec.initial_state & state_mask;
    if (initial == 0) {
        throw std::invalid_argument("lfsr initial state must be nonzero");
    }

    const std::uint64_t full_period = state_mask;  // 2^d - 1
    std::uint64_t state = initial;
    std::uint64_t period = 0;
    do {
        state = step(state, fb_mask, spec.degree);
        ++period;
    } while (state != initial && period <= full_period);
    if (period != full_period) {
        throw NonPrimitivePolynomialError("polynomial is not primitive: state cycle has period " +
                                          std::to_string(period) + ", expected " +
                                          std::to_string(full_period));
    }

    BipolarSequence seq(static_cast<Eigen::Index>(full_period));
    state = initial;
    for (Eigen::Index i = 0; i < seq.size(); ++i) {
        seq(i) = (state & 1) ? -1.0 : 1.0;
        state = step(state, fb_mask, spec.degree);
    }
    return seq;
}

Eigen::VectorXd periodic_correlation(const BipolarSequence& a, const BipolarSequence& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("periodic_correlation: length mismatch");
    }
    const Eigen::Index len = a.size();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(len);
    for (Eigen::Index lag = 0; lag < len; ++lag) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < len; ++j) {
            Eigen::Index idx = j + lag;
            if (idx >= len) {
                idx -= len;
            }
            acc += a(j) * b(idx);
        }
        out(lag) = acc;
    }
    return out;
}

}  // namespace ddm
