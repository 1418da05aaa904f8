// Copyright 2026 The qclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcl/errors.hpp"
#include "qcl/qstate.hpp"
#include "qcl/rng.hpp"
#include "test_helpers.hpp"

namespace qcl {
namespace {

using testing::diag_state;
using testing::qubit_dims;

PureState plus() {
    CVector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return PureState::qubits(v);
}

TEST(Tensor, BasisStates) {
    const PureState s = tensor(PureState::basis({2}, 0), PureState::basis({2}, 1));
    ASSERT_EQ(s.dim(), 4u);
    EXPECT_EQ(s.amplitudes()(1), Complex(1.0));
    EXPECT_EQ(s.amplitudes().cwiseAbs().sum(), 1.0);
}

TEST(Tensor, MixedAndUniform) {
    const DensityMatrix half = DensityMatrix::maximally_mixed_qubits(1);
    EXPECT_LT(max_abs_diff(tensor(half, half).entries(), DensityMatrix::maximally_mixed_qubits(2).entries()), 1e-15);
    const PureState pp = tensor(plus(), plus());
    for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(pp.amplitudes()(i).real(), 0.5, 1e-15);
    EXPECT_EQ(pp.dims(), (Dims{2, 2}));
}

TEST(PartialTrace, BellPairReducesToMixed) {
    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const int keep[] = {1};
    const DensityMatrix r = partial_trace(PureState::qubits(bell), keep);
    EXPECT_LT(max_abs_diff(r.entries(), DensityMatrix::maximally_mixed_qubits(1).entries()), 1e-15);
}

TEST(PartialTrace, ProductFactorizes) {
    Rng rng(3);
    const DensityMatrix rho = random_density_matrix(qubit_dims(2), 3, rng);
    const DensityMatrix prod = tensor(PureState::basis({2}, 0).density(), rho);
    const int keep[] = {1, 2};
    EXPECT_LT(max_abs_diff(partial_trace(prod, keep).entries(), rho.entries()), 1e-14);
}

TEST(PartialTrace, MatchesLoopOracleOnMixedDims) {
    Rng rng(11);
    const Dims dims = {2, 3, 2};
    const DensityMatrix rho = random_density_matrix(dims, 4, rng);
    for (const std::vector<int>& keep : {std::vector<int>{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
        const DensityMatrix r = partial_trace(rho, keep);
        EXPECT_LT(max_abs_diff(r.entries(), oracle::partial_trace(rho.entries(), dims, keep)), 1e-14);
    }
}

TEST(PartialTrace, RejectsBadIndices) {
    const DensityMatrix rho = DensityMatrix::maximally_mixed_qubits(2);
    const int bad[] = {2};
    EXPECT_THROW(partial_trace(rho, bad), DimensionError);
    const int duplicate[] = {0, 0};
    EXPECT_THROW(partial_trace(rho, duplicate), DimensionError);
}

TEST(Fidelity, TrivialCases) {
    Rng rng(1);
    const DensityMatrix rho = random_density_matrix(qubit_dims(2), 2, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
    EXPECT_NEAR(fidelity(PureState::basis({2}, 0).density(), PureState::basis({2}, 1).density()), 0.0, 1e-12);
}

TEST(Fidelity, RankTwoAgainstMixed) {
    // rho0 = (|00><00| + |01><01|)/2 against I/4: (2 sqrt(1/8))^2 = 1/2.
    const DensityMatrix rho0 = diag_state({0.5, 0.5, 0.0, 0.0}, qubit_dims(2));
    EXPECT_NEAR(fidelity(rho0, DensityMatrix::maximally_mixed_qubits(2)), 0.5, 1e-12);
}

TEST(Fidelity, MatchesBothOracles) {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t r1 = 1 + trial % 4, r2 = 1 + (trial / 4) % 4;
        const DensityMatrix a = random_density_matrix(qubit_dims(2), r1, rng);
        const DensityMatrix b = random_density_matrix(qubit_dims(2), r2, rng);
        const double f = fidelity(a, b);
        EXPECT_NEAR(f, oracle::fidelity_svd(a.entries(), b.entries()), 1e-7) << trial;
        if (r1 == 4 && r2 == 4) {
            EXPECT_NEAR(f, oracle::fidelity_nested(a.entries(), b.entries()), 1e-8) << trial;
        }
    }
}

TEST(TraceDistance, Values) {
    EXPECT_NEAR(trace_distance(PureState::basis({2}, 0).density(), PureState::basis({2}, 1).density()), 1.0, 1e-15);
    const DensityMatrix mix = DensityMatrix::maximally_mixed_qubits(4);
    EXPECT_NEAR(trace_distance(mix, mix), 0.0, 1e-15);
    RVector d = RVector::Zero(16);
    for (int i : {0, 4, 8, 12}) d(i) = 0.25;
    const DensityMatrix four(d.cast<Complex>().asDiagonal().toDenseMatrix(), qubit_dims(4));
    EXPECT_NEAR(trace_distance(four, mix), 0.75, 1e-14);
    Rng rng(5);
    const DensityMatrix a = random_density_matrix(qubit_dims(3), 3, rng);
    const DensityMatrix b = random_density_matrix(qubit_dims(3), 5, rng);
    EXPECT_NEAR(trace_distance(a, b), oracle::trace_distance(a.entries(), b.entries()), 1e-12);
}

TEST(MatSqrt, Cases) {
    EXPECT_LT(max_abs_diff(mat_sqrt_psd(DensityMatrix::maximally_mixed_qubits(2)).entries(),
                           0.5 * CMatrix::Identity(4, 4)), 1e-15);
    const DensityMatrix p0 = PureState::basis({2}, 0).density();
    EXPECT_LT(max_abs_diff(mat_sqrt_psd(p0).entries(), p0.entries()), 1e-15);
    const DensityMatrix d = diag_state({0.64, 0.36}, {2});
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(0, 0) = 0.8;
    expect(1, 1) = 0.6;
    EXPECT_LT(max_abs_diff(mat_sqrt_psd(d).entries(), expect), 1e-15);
}

TEST(MatSqrt, RejectsNegativeEigenvalue) {
    CMatrix m = CMatrix::Identity(2, 2);
    m(0, 0) = 1.01;
    m(1, 1) = -0.01;
    EXPECT_THROW(psd_sqrt(m), NotPsdError);
    EXPECT_THROW(DensityMatrix(m, {2}), NotPsdError);
}

TEST(HaarState, NormalizedAndFirstMoment) {
    Rng rng(2024);
    CMatrix mean = CMatrix::Zero(4, 4);
    double p0 = 0.0;
    const int samples = 100000;
    Rng rng8(99);
    for (int i = 0; i < samples; ++i) {
        const PureState s = haar_state(4, rng);
        ASSERT_NEAR(s.amplitudes().norm(), 1.0, 1e-9);
        mean += s.amplitudes() * s.amplitudes().adjoint();
        p0 += std::norm(haar_state(8, rng8).amplitudes()(0));
    }
    mean /= samples;
    EXPECT_LT(max_abs_diff(mean, 0.25 * CMatrix::Identity(4, 4)), 0.02);
    EXPECT_NEAR(p0 / samples, 0.125, 0.01);
}

TEST(PauliMask, SingleQubitActions) {
    const PureState one = apply_pauli_mask(PauliMask(1, 0, 1), PureState::basis({2}, 0));
    EXPECT_EQ(one.amplitudes()(1), Complex(1.0));
    const PureState minus = apply_pauli_mask(PauliMask(0, 1, 1), plus());
    EXPECT_NEAR(minus.amplitudes()(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(minus.amplitudes()(1).real(), -1.0 / std::sqrt(2.0), 1e-15);
    const PureState xz = apply_pauli_mask(PauliMask(1, 1, 1), PureState::basis({2}, 0));
    EXPECT_EQ(xz.amplitudes()(1), Complex(1.0));
}

TEST(PauliMask, MatchesKroneckerOracle) {
    Rng rng(8);
    const int m = 3;
    const PureState psi = haar_qubit_state(m, rng);
    for (std::uint64_t x = 0; x < 8; ++x) {
        for (std::uint64_t z = 0; z < 8; ++z) {
            const CVector expect = oracle::pauli_matrix(x, z, m) * psi.amplitudes();
            const CVector got = apply_pauli_mask(PauliMask(x, z, m), psi).amplitudes();
            ASSERT_LT((got - expect).cwiseAbs().maxCoeff(), 1e-15) << x << "," << z;
            const PureState back = apply_pauli_mask_adjoint(PauliMask(x, z, m), PureState::qubits(got));
            ASSERT_LT((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
            // Applying the mask twice only returns the input up to (-1)^{x.z}.
            const PureState twice = apply_pauli_mask(PauliMask(x, z, m), PureState::qubits(got));
            const double sign = PauliMask(x, z, m).xz_parity() ? -1.0 : 1.0;
            ASSERT_LT((twice.amplitudes() - sign * psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
        }
    }
}

TEST(PauliMask, FromStringsAndWidth) {
    EXPECT_EQ(PauliMask::from_strings("10", "01"), PauliMask(2, 1, 2));
    EXPECT_THROW(PauliMask(4, 0, 2), DimensionError);
    EXPECT_THROW(apply_pauli_mask(PauliMask(0, 0, 2), PureState::basis({2}, 0)), DimensionError);
}

TEST(Qotp, FixedCases) {
    EXPECT_LT(max_abs_diff(qotp_average(PureState::basis({2}, 0).density()).entries(),
                           DensityMatrix::maximally_mixed_qubits(1).entries()), 1e-15);
    const DensityMatrix half = DensityMatrix::maximally_mixed_qubits(1);
    EXPECT_LT(max_abs_diff(qotp_average(half).entries(), half.entries()), 1e-15);
}

TEST(Qotp, RandomStatesAgreeWithDenseOracle) {
    Rng rng(12);
    for (int m = 1; m <= 3; ++m) {
        for (int i = 0; i < 20; ++i) {
            const DensityMatrix rho = random_density_matrix(qubit_dims(m), 1 + i % (1 << m), rng);
            const CMatrix avg = qotp_average(rho).entries();
            ASSERT_LT(max_abs_diff(avg, DensityMatrix::maximally_mixed_qubits(m).entries()), 1e-10);
            ASSERT_LT(max_abs_diff(avg, oracle::qotp_average(rho.entries(), m)), 1e-12);
        }
    }
}

TEST(SwapTest, Values) {
    const DensityMatrix p0 = PureState::basis({2}, 0).density();
    const DensityMatrix p1 = PureState::basis({2}, 1).density();
    EXPECT_NEAR(swap_test_prob(p0, p0), 1.0, 1e-15);
    EXPECT_NEAR(swap_test_prob(p0, p1), 0.5, 1e-15);
    const DensityMatrix half = DensityMatrix::maximally_mixed_qubits(1);
    EXPECT_NEAR(swap_test_prob(half, half), 0.75, 1e-15);
}

TEST(SymMoment, SmallCases) {
    const CMatrix p = symmetric_projector(2, 2);
    EXPECT_NEAR(p.trace().real(), 3.0, 1e-14);
    CMatrix swap = CMatrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    const CMatrix expect = (CMatrix::Identity(4, 4) + swap) / 6.0;
    EXPECT_LT(max_abs_diff(sym_moment(2, 2).entries(), expect), 1e-15);
    EXPECT_LT(max_abs_diff(sym_moment(2, 1).entries(), 0.5 * CMatrix::Identity(2, 2)), 1e-15);
}

TEST(SymMoment, ProjectorMatchesTypeClassBasis) {
    for (auto [d, t] : std::vector<std::pair<std::size_t, int>>{{2, 2}, {2, 3}, {3, 2}, {4, 2}, {2, 4}, {3, 3}}) {
        const CMatrix p = symmetric_projector(d, t);
        EXPECT_LT(max_abs_diff(p, oracle::symmetric_projector(d, t)), 1e-13) << d << "," << t;
        EXPECT_EQ(p.trace().real(), binomial(d + t - 1, t));
    }
}

TEST(SymMoment, MonteCarloWithinTolerance) {
    const MomentEstimate est = haar_moment_estimate(4, 2, 100000, 17);
    EXPECT_LT(max_abs_diff(est.mean, sym_moment(4, 2).entries()), 0.02);
    EXPECT_EQ(est.samples, 100000u);
}

TEST(SymMoment, EstimatorCaps) {
    EXPECT_THROW(haar_moment_estimate(16, 3, 10, 0), CapExceededError);
    EXPECT_THROW(haar_moment_estimate(2, 5, 10, 0), DimensionError);
}

TEST(Purity, Values) {
    EXPECT_NEAR(purity(PureState::basis({2, 2}, 3).density()), 1.0, 1e-15);
    EXPECT_NEAR(purity(DensityMatrix::maximally_mixed_qubits(3)), 0.125, 1e-15);
    const DensityMatrix four = diag_state({0.25, 0, 0.25, 0, 0.25, 0, 0.25, 0}, qubit_dims(3));
    EXPECT_NEAR(purity(four), 0.25, 1e-15);
}

TEST(DensityMatrixCtor, Validation) {
    EXPECT_ANY_THROW(DensityMatrix(CMatrix::Identity(2, 2), {2}));
    EXPECT_THROW(DensityMatrix(0.25 * CMatrix::Identity(4, 4), {2}), DimensionError);
    CVector v = CVector::Ones(2);
    EXPECT_ANY_THROW(PureState::qubits(v));
}

}  // namespace
}  // namespace qcl
