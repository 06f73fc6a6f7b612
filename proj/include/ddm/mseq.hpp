#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ddm {

/// Bipolar pseudo-noise sequence: every entry is exactly +1.0 or -1.0.
/// For an M-sequence of LFSR degree d the period is L = 2^d - 1.
using BipolarSequence = Eigen::VectorXd;

/**
 * Fibonacci LFSR description.
 *
 * `taps` lists the exponents of the feedback polynomial that carry a unit
 * coefficient, e.g. degree=6, taps={6,1} encodes x^6 + x + 1 (the constant
 * term is implied). The degree entry itself is optional in the list.
 * `initial_state` is masked to `degree` bits before use; the default
 * all-ones pattern seeds every register stage with 1.
 */
struct LfsrSpec {
    int degree = 6;
    std::vector<int> taps = {6, 1};
    std::uint64_t initial_state = ~std::uint64_t{0};
};

/// Thrown when the requested feedback polynomial does not generate a
/// maximal-length cycle (measured state period < 2^degree - 1).
class NonPrimitivePolynomialError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Generate the maximal-length sequence of the given LFSR.
 *
 * Output bits are mapped 0 -> +1, 1 -> -1. The state-cycle period is
 * measured before emitting anything; a short cycle raises
 * NonPrimitivePolynomialError, so a successful return guarantees the full
 * period 2^degree - 1.
 */
BipolarSequence generate_mseq(const LfsrSpec& spec);

/// Cyclic rotation: out[j] = in[(j - shift) mod L]. Negative shifts and
/// shifts beyond L wrap; shift 0 (or any multiple of L) is the identity.
template <typename Derived>
typename Derived::PlainObject cyclic_shift(const Eigen::MatrixBase<Derived>& seq,
                                           Eigen::Index shift) {
    const Eigen::Index len = seq.size();
    typename Derived::PlainObject out(len);
    if (len == 0) {
        return out;
    }
    Eigen::Index s = shift % len;
    if (s < 0) {
        s += len;
    }
    for (Eigen::Index j = 0; j < len; ++j) {
        Eigen::Index src = j - s;
        if (src < 0) {
            src += len;
        }
        out(j) = seq(src);
    }
    return out;
}

/// Periodic cross-correlation: out[i] = sum_j a[j] * b[(j + i) mod L].
/// For bipolar inputs every entry is an exact (integer-valued) sum.
/// Throws std::invalid_argument on length mismatch.
Eigen::VectorXd periodic_correlation(const BipolarSequence& a, const BipolarSequence& b);

}  // namespace ddm
