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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcl/errors.hpp"
#include "qcl/sdcid.hpp"
#include "test_helpers.hpp"

namespace qcl {
namespace {

TEST(Sdcid, BranchMarginals) {
    for (Family f : testing::all_families()) {
        const GeneratorSpec spec{f, 2, 5, false};
        const SdcidOutput o0 = sdcid_from_prs(spec, 0);
        const SdcidOutput o1 = sdcid_from_prs(spec, 1);
        EXPECT_LT(max_abs_diff(o1.reduced().entries(), DensityMatrix::maximally_mixed_qubits(5).entries()), 1e-10);
        EXPECT_LT(max_abs_diff(o0.reduced().entries(), ensemble_density(spec).entries()), 1e-10);
        std::vector<int> dims(static_cast<std::size_t>(o0.a_qubits() + o0.b_qubits()), 2);
        std::vector<int> keep;
        for (int q = o0.a_qubits(); q < o0.a_qubits() + o0.b_qubits(); ++q) keep.push_back(q);
        const CVector v = o0.joint.amplitudes();
        EXPECT_LT(max_abs_diff(o0.reduced().entries(), oracle::partial_trace(v * v.adjoint(), dims, keep)), 1e-13);
    }
}

TEST(Sdcid, PrsConstructionValues) {
    const GeneratorSpec spec{Family::BasisEmbed, 2, 6, false};
    const SdcidOutput o0 = sdcid_from_prs(spec, 0);
    const SdcidOutput o1 = sdcid_from_prs(spec, 1);
    const SdcidVerdict v = sdcid_check(o0, o1, 0.1);
    EXPECT_NEAR(v.fidelity, 0.0625, 1e-10);
    EXPECT_TRUE(v.fidelity_below_threshold);
    const PurityLemmaRecord p = purity_lemma_check(o0, o1);
    EXPECT_NEAR(p.purity0, 0.25, 1e-14);
    EXPECT_NEAR(p.purity1, 1.0 / 64.0, 1e-14);
    EXPECT_NEAR(p.overlap, 1.0 / 64.0, 1e-14);
    EXPECT_TRUE(p.overlap_below_fidelity);
    EXPECT_TRUE(p.swap_gap_below_distance);
}

TEST(Sdcid, DegenerateBranches) {
    const GeneratorSpec spec{Family::BinaryPhase, 1, 3, false};
    const SdcidOutput o0 = sdcid_from_prs(spec, 0);
    const SdcidVerdict same = sdcid_check(o0, o0, 0.1);
    EXPECT_NEAR(same.fidelity, 1.0, 1e-9);
    EXPECT_FALSE(same.fidelity_below_threshold);
    const DensityMatrix a = PureState::basis({2, 2}, 0).density();
    const DensityMatrix b = PureState::basis({2, 2}, 3).density();
    EXPECT_NEAR(purity_lemma_check(a, b).fidelity, 0.0, 1e-12);
    const DensityMatrix mix = DensityMatrix::maximally_mixed_qubits(2);
    const PurityLemmaRecord r = purity_lemma_check(mix, mix);
    EXPECT_NEAR(r.purity0, 0.25, 1e-15);
    EXPECT_NEAR(r.purity1, 0.25, 1e-15);
    EXPECT_NEAR(r.overlap, 0.25, 1e-15);
    const PurityLemmaRecord pure = purity_lemma_check(a, a);
    EXPECT_NEAR(pure.purity0, 1.0, 1e-15);
    EXPECT_NEAR(pure.fidelity, 1.0, 1e-9);
}

TEST(Sdcid, Errors) {
    EXPECT_THROW(sdcid_from_prs({Family::BasisEmbed, 2, 4, false}, 2), DimensionError);
    EXPECT_THROW(sdcid_from_prs({Family::BasisEmbed, 2, 2, false}, 0), ConfigError);
    EXPECT_THROW(sdcid_from_prs({Family::BasisEmbed, 6, 10, false}, 0), CapExceededError);
}

}  // namespace
}  // namespace qcl
