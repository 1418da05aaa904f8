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
#include "qcl/generators.hpp"
#include "test_helpers.hpp"

namespace qcl {
namespace {

using testing::all_families;

TEST(Generator, BasisEmbedPlacesKeyInHighBits) {
    const GeneratorSpec spec{Family::BasisEmbed, 2, 4, false};
    const GeneratorOutput out = generate(spec, Key::from_string("10"));
    EXPECT_EQ(out.output.amplitudes()(0b1000), Complex(1.0));
    EXPECT_NEAR(out.output.amplitudes().norm(), 1.0, 1e-15);
    EXPECT_FALSE(out.ancilla.has_value());
}

TEST(Generator, BinaryPhaseHasFlatModulus) {
    const GeneratorSpec spec{Family::BinaryPhase, 3, 6, false};
    for (std::uint64_t k = 0; k < 8; ++k) {
        const CVector a = output_amplitudes(spec, k);
        for (Eigen::Index x = 0; x < a.size(); ++x) {
            ASSERT_NEAR(std::abs(a(x)), 0.125, 1e-15);
        }
    }
}

TEST(Generator, Deterministic) {
    for (Family f : all_families()) {
        const GeneratorSpec spec{f, 3, 5, true};
        const GeneratorOutput a = generate(spec, Key(5, 3));
        const GeneratorOutput b = generate(spec, Key(5, 3));
        EXPECT_EQ(a.output.amplitudes(), b.output.amplitudes());
        ASSERT_TRUE(a.ancilla && b.ancilla);
        EXPECT_EQ(a.ancilla->amplitudes(), b.ancilla->amplitudes());
        EXPECT_NEAR(a.ancilla->amplitudes().norm(), 1.0, 1e-12);
    }
}

TEST(Generator, Validation) {
    EXPECT_THROW(generate(GeneratorSpec{Family::BasisEmbed, 3, 2, false}, Key(0, 3)), ConfigError);
    EXPECT_THROW(generate(GeneratorSpec{Family::BinaryPhase, 2, 4, false}, Key(0, 3)), DimensionError);
    EXPECT_THROW(GeneratorSpec({Family::BinaryPhase, 0, 4, false}).validate(), ConfigError);
    EXPECT_THROW(GeneratorSpec({Family::BinaryPhase, 2, 2, false}).require_expanding(), ConfigError);
    EXPECT_THROW(parse_family("nope"), ConfigError);
    for (Family f : all_families()) EXPECT_EQ(parse_family(family_name(f)), f);
}

TEST(Key, StringRoundTrip) {
    EXPECT_EQ(Key::from_string("0110").bits(), 6u);
    EXPECT_EQ(Key(6, 4).to_string(), "0110");
    EXPECT_ANY_THROW(Key::from_string("01a"));
}

TEST(Ensemble, BasisEmbedDiagonal) {
    const GeneratorSpec spec{Family::BasisEmbed, 2, 4, false};
    const DensityMatrix rho = ensemble_density(spec);
    CMatrix expect = CMatrix::Zero(16, 16);
    for (int k = 0; k < 4; ++k) expect(k << 2, k << 2) = 0.25;
    EXPECT_LT(max_abs_diff(rho.entries(), expect), 1e-15);
    EXPECT_NEAR(purity(rho), 0.25, 1e-15);
    EXPECT_NEAR(fidelity(rho, DensityMatrix::maximally_mixed_qubits(4)), 0.25, 1e-12);
}

TEST(Ensemble, OrthonormalFamilyClosedForm) {
    // For an orthonormal family, F(rho_0, I/2^m) = 2^{n-m} and TD = 1 - 2^{n-m}.
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 2}, {2, 4}, {2, 6}, {3, 6}}) {
        const GeneratorSpec spec{Family::BasisEmbed, n, m, false};
        const double bound = std::ldexp(1.0, n - m);
        EXPECT_NEAR(fidelity(ensemble_density(spec), DensityMatrix::maximally_mixed_qubits(m)), bound, 1e-10);
        EXPECT_NEAR(single_copy_advantage(spec), 1.0 - bound, 1e-12);
    }
}

TEST(SingleCopyAdvantage, Values) {
    EXPECT_NEAR(single_copy_advantage({Family::BasisEmbed, 2, 4, false}), 0.75, 1e-12);
    const GeneratorSpec phase{Family::BinaryPhase, 3, 6, false};
    const double v = single_copy_advantage(phase);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
    EXPECT_NEAR(v, oracle::trace_distance(ensemble_density(phase).entries(),
                                          DensityMatrix::maximally_mixed_qubits(6).entries()), 1e-12);
    EXPECT_EQ(v, single_copy_advantage(phase));
}

TEST(SwapTest, PureOutputsAcceptWithCertainty) {
    for (Family f : all_families()) {
        const SwapTestAttack a = swap_test_attack({f, 2, 4, false}, 2000, 4);
        EXPECT_EQ(a.generator_acceptance, 1.0);
        const double expected = 0.5 * (1.0 + 1.0 / 16.0);
        EXPECT_LE(std::abs(a.haar_pair_acceptance - expected), 3.0 * a.haar_pair_stderr);
    }
    const std::vector<DensityMatrix> mixed = {DensityMatrix::maximally_mixed_qubits(1)};
    EXPECT_NEAR(swap_test_acceptance(mixed), 0.75, 1e-15);
}

}  // namespace
}  // namespace qcl
