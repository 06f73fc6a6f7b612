#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "ddm/mseq.hpp"

using ddm::BipolarSequence;
using ddm::LfsrSpec;

namespace {

// independent reference LFSR: explicit bit vector, polynomial recurrence
// s_{n+d} = s_n ^ xor_{a in taps, a<d} s_{n+a}
std::vector<int> naive_lfsr_bits(int degree, const std::vector<int>& taps) {
    std::vector<int> window(degree, 1);
    std::vector<int> out;
    const int length = (1 << degree) - 1;
    for (int i = 0; i < length; ++i) {
        out.push_back(window[0]);
        int next = window[0];
        for (int a : taps) {
            if (a < degree) {
                next ^= window[a];
            }
        }
        window.erase(window.begin());
        window.push_back(next);
    }
    return out;
}

// direct O(L^2) correlation, independent of the library routine
std::vector<double> naive_correlation(const BipolarSequence& a, const BipolarSequence& b) {
    const int len = static_cast<int>(a.size());
    std::vector<double> out(len, 0.0);
    for (int lag = 0; lag < len; ++lag) {
        for (int j = 0; j < len; ++j) {
            out[lag] += a(j) * b((j + lag) % len);
        }
    }
    return out;
}

const std::vector<LfsrSpec> kPrimitiveSpecs = {
    {3, {3, 1}}, {3, {3, 2}},
    {4, {4, 1}}, {4, {4, 3}},
    {5, {5, 2}}, {5, {5, 3}}, {5, {5, 1, 2, 3}}, {5, {5, 1, 2, 4}},
    {5, {5, 1, 3, 4}}, {5, {5, 2, 3, 4}},
    {6, {6, 1}}, {6, {6, 5}},
};

}  // namespace

TEST_CASE("degree-6 sequence has length 63 and matches the reference LFSR") {
    const BipolarSequence seq = ddm::generate_mseq({6, {6, 1}});
    REQUIRE(seq.size() == 63);
    const std::vector<int> bits = naive_lfsr_bits(6, {6, 1});
    for (int i = 0; i < 63; ++i) {
        CHECK(seq(i) == (bits[i] ? -1.0 : 1.0));
    }
}

TEST_CASE("degree-3 sequence has full period 7") {
    const BipolarSequence seq = ddm::generate_mseq({3, {3, 1}});
    REQUIRE(seq.size() == 7);
    // brute-force check: no shorter period divides the sequence
    for (int candidate : {1, 7}) {
        bool periodic = true;
        for (int j = 0; j < 7; ++j) {
            if (seq(j) != seq((j + candidate) % 7)) {
                periodic = false;
                break;
            }
        }
        CHECK(periodic == (candidate == 7));
    }
}

TEST_CASE("non-primitive polynomial x^4+x^2+1 is rejected") {
    CHECK_THROWS_AS(ddm::generate_mseq({4, {4, 2}}), ddm::NonPrimitivePolynomialError);
}

TEST_CASE("invalid lfsr specs are rejected") {
    CHECK_THROWS_AS(ddm::generate_mseq({1, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(ddm::generate_mseq({6, {7, 1}}), std::invalid_argument);
    LfsrSpec zero_state{6, {6, 1}, 0};
    CHECK_THROWS_AS(ddm::generate_mseq(zero_state), std::invalid_argument);
}

TEST_CASE("any nonzero seed yields a cyclic shift of the same sequence") {
    const BipolarSequence base = ddm::generate_mseq({6, {6, 1}});
    const BipolarSequence seeded = ddm::generate_mseq({6, {6, 1}, 0b100101});
    bool found = false;
    for (int i = 0; i < 63 && !found; ++i) {
        found = (ddm::cyclic_shift(base, i) - seeded).cwiseAbs().maxCoeff() == 0.0;
    }
    CHECK(found);
}

TEST_CASE("balance: (L+1)/2 entries of one sign, (L-1)/2 of the other") {
    for (const LfsrSpec& spec : kPrimitiveSpecs) {
        const BipolarSequence seq = ddm::generate_mseq(spec);
        const int length = static_cast<int>(seq.size());
        int plus = 0;
        for (int i = 0; i < length; ++i) {
            plus += seq(i) > 0 ? 1 : 0;
        }
        const int minus = length - plus;
        CAPTURE(spec.degree);
        CHECK(std::max(plus, minus) == (length + 1) / 2);
        CHECK(std::min(plus, minus) == (length - 1) / 2);
    }
}

TEST_CASE("two-valued autocorrelation for every primitive polynomial of degree 3..6") {
    for (const LfsrSpec& spec : kPrimitiveSpecs) {
        const BipolarSequence seq = ddm::generate_mseq(spec);
        const Eigen::VectorXd ac = ddm::periodic_correlation(seq, seq);
        CAPTURE(spec.degree);
        CHECK(ac(0) == static_cast<double>(seq.size()));
        for (int lag = 1; lag < seq.size(); ++lag) {
            CHECK(ac(lag) == -1.0);
        }
    }
}

TEST_CASE("degree-3 autocorrelation matches the brute-force oracle") {
    const BipolarSequence seq = ddm::generate_mseq({3, {3, 1}});
    const Eigen::VectorXd ac = ddm::periodic_correlation(seq, seq);
    const std::vector<double> oracle = naive_correlation(seq, seq);
    const std::vector<double> frozen = {7.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0};
    for (int lag = 0; lag < 7; ++lag) {
        CHECK(ac(lag) == oracle[lag]);
        CHECK(ac(lag) == frozen[lag]);
    }
}

TEST_CASE("correlation rejects mismatched lengths") {
    const BipolarSequence a = ddm::generate_mseq({3, {3, 1}});
    const BipolarSequence b = ddm::generate_mseq({4, {4, 1}});
    CHECK_THROWS_AS(ddm::periodic_correlation(a, b), std::invalid_argument);
}

TEST_CASE("cyclic_shift basics") {
    Eigen::Vector3d v(1.0, 2.0, 3.0);
    CHECK(ddm::cyclic_shift(v, 0) == v);
    const Eigen::Vector3d rot = ddm::cyclic_shift(v, 1);
    CHECK(rot(0) == 3.0);
    CHECK(rot(1) == 1.0);
    CHECK(rot(2) == 2.0);
    CHECK(ddm::cyclic_shift(v, 3) == v);
}

TEST_CASE("cyclic_shift is a group action and inverse shifts cancel") {
    const BipolarSequence seq = ddm::generate_mseq({6, {6, 1}});
    CHECK(ddm::cyclic_shift(ddm::cyclic_shift(seq, 5), -5) == seq);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(-130, 130);
    for (int trial = 0; trial < 50; ++trial) {
        const int i = pick(rng);
        const int j = pick(rng);
        const BipolarSequence lhs = ddm::cyclic_shift(ddm::cyclic_shift(seq, i), j);
        const BipolarSequence rhs = ddm::cyclic_shift(seq, i + j);
        CHECK(lhs == rhs);
    }
}
