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

#include "qcl/sdcid.hpp"

#include <bit>
#include <cmath>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

int log2_dim(int dim) { return std::countr_zero(static_cast<unsigned>(dim)); }

}  // namespace

int SdcidOutput::a_qubits() const { return log2_dim(joint.dims()[0]); }
int SdcidOutput::b_qubits() const { return log2_dim(joint.dims()[1]); }

DensityMatrix SdcidOutput::reduced() const {
    const int keep[] = {1};
    return partial_trace(joint, keep);
}

SdcidOutput sdcid_from_prs(const GeneratorSpec& spec, int branch) {
    spec.require_expanding();
    if (branch != 0 && branch != 1) {
        throw DimensionError("sdcid_from_prs: branch must be 0 or 1");
    }
    const int a_qubits = branch == 0 ? spec.n + spec.ancilla_qubits() : spec.m;
    if (a_qubits + spec.m > 14) {
        throw CapExceededError("sdcid_from_prs: more than 2^14 joint amplitudes");
    }
    const auto b_dim = static_cast<Eigen::Index>(spec.output_dim());
    const Eigen::Index a_dim = Eigen::Index{1} << a_qubits;
    CVector joint = CVector::Zero(a_dim * b_dim);

    if (branch == 1) {
        const double amplitude = 1.0 / std::sqrt(static_cast<double>(b_dim));
        for (Eigen::Index r = 0; r < b_dim; ++r) {
            joint[r * b_dim + r] = amplitude;
        }
    } else {
        const double amplitude = 1.0 / std::sqrt(static_cast<double>(spec.key_count()));
        for (std::uint64_t k = 0; k < spec.key_count(); ++k) {
            const CVector phi = output_amplitudes(spec, k);
            if (!spec.ancilla) {
                joint.segment(static_cast<Eigen::Index>(k) * b_dim, b_dim) = amplitude * phi;
                continue;
            }
            const CVector eta = ancilla_amplitudes(spec, k);
            for (Eigen::Index a = 0; a < 2; ++a) {
                const auto row = static_cast<Eigen::Index>(k << 1) | a;
                joint.segment(row * b_dim, b_dim) = amplitude * eta[a] * phi;
            }
        }
    }
    return SdcidOutput{PureState(std::move(joint),
                                 Dims{static_cast<int>(a_dim), static_cast<int>(b_dim)},
                                 {"A", "B"}),
                       branch};
}

SdcidVerdict sdcid_check(const SdcidOutput& out0, const SdcidOutput& out1, double threshold) {
    if (out0.joint.dims()[1] != out1.joint.dims()[1]) {
        throw DimensionError("sdcid_check: the B registers differ");
    }
    const DensityMatrix rho0 = out0.reduced();
    const DensityMatrix rho1 = out1.reduced();
    SdcidVerdict out;
    out.fidelity = fidelity(rho0, rho1);
    out.trace_distance = trace_distance(rho0, rho1);
    out.purity0 = purity(rho0);
    out.purity1 = purity(rho1);
    out.threshold = threshold;
    out.fidelity_below_threshold = out.fidelity < threshold;
    return out;
}

PurityLemmaRecord purity_lemma_check(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    PurityLemmaRecord out;
    out.purity0 = purity(rho0);
    out.purity1 = purity(rho1);
    out.overlap = overlap(rho0, rho1);
    out.fidelity = fidelity(rho0, rho1);
    out.trace_distance = trace_distance(rho0, rho1);
    out.overlap_below_fidelity = out.overlap <= out.fidelity + 1e-9;
    out.swap_gap_below_distance =
        std::abs(out.purity0 - out.overlap) <= 2.0 * out.trace_distance + 1e-9;
    return out;
}

PurityLemmaRecord purity_lemma_check(const SdcidOutput& out0, const SdcidOutput& out1) {
    if (out0.joint.dims()[1] != out1.joint.dims()[1]) {
        throw DimensionError("purity_lemma_check: the B registers differ");
    }
    return purity_lemma_check(out0.reduced(), out1.reduced());
}

}  // namespace qcl
