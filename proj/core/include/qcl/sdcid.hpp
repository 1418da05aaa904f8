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

#pragma once

#include "qcl/generators.hpp"
#include "qcl/qstate.hpp"

namespace qcl {

/// Branch state |Psi_b>_{AB}. The joint state has two subsystems, A then B,
/// with dims {2^a, 2^m}; rho_b is its B marginal.
struct SdcidOutput {
    PureState joint;
    int branch = 0;

    int a_qubits() const;
    int b_qubits() const;
    DensityMatrix reduced() const;
};

/// Branch 0 runs the generator coherently over all keys:
/// 2^{-n/2} sum_k (|k> (x) |eta_k>)_A (x) |phi_k>_B.
/// Branch 1 is the maximally entangled state 2^{-m/2} sum_r |r>_A |r>_B.
/// Requires m > n and at most 2^14 joint amplitudes.
SdcidOutput sdcid_from_prs(const GeneratorSpec& spec, int branch);

struct SdcidVerdict {
    double fidelity = 0.0;
    double trace_distance = 0.0;  ///< best distinguishing advantage, no efficiency claim
    double purity0 = 0.0;
    double purity1 = 0.0;
    double threshold = 0.0;
    bool fidelity_below_threshold = false;
};

/// Throws DimensionError when the B registers differ.
SdcidVerdict sdcid_check(const SdcidOutput& out0, const SdcidOutput& out1, double threshold);

struct PurityLemmaRecord {
    double purity0 = 0.0;  ///< Tr(rho_0^2)
    double purity1 = 0.0;  ///< Tr(rho_1^2)
    double overlap = 0.0;  ///< Tr(rho_0 rho_1)
    double fidelity = 0.0;
    double trace_distance = 0.0;
    bool overlap_below_fidelity = false;  ///< Tr(rho_0 rho_1) <= F + 1e-9
    bool swap_gap_below_distance = false; ///< |Tr(rho_0^2) - Tr(rho_0 rho_1)| <= 2 TD + 1e-9
};

PurityLemmaRecord purity_lemma_check(const DensityMatrix& rho0, const DensityMatrix& rho1);
PurityLemmaRecord purity_lemma_check(const SdcidOutput& out0, const SdcidOutput& out1);

}  // namespace qcl
