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

/**
 * @file    commitment.hpp
 * @brief   Non-interactive quantum bit commitment built from a state generator.
 *
 * To commit to b the sender prepares
 *
 *     |psi_b> = 2^{-(2m+n)/2} sum_{x,z,k} |x,z,k>_R (x) (X^x Z^z)^b |phi_k>_C
 *
 * and sends C; revealing sends b and R, and the receiver projects onto
 * |psi_b>. The R register is only ever used as a set of orthonormal labels,
 * so states are stored per label (StructuredCommitState) and the
 * 2^{3m+n}-amplitude dense vector is never formed.
 */

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcl/generators.hpp"
#include "qcl/qstate.hpp"
#include "qcl/rng.hpp"

namespace qcl {

/// One R basis label with its amplitude and (unnormalised) C vector.
struct CommitEntry {
    std::uint64_t r_label = 0;
    Complex amplitude = 1.0;
    CVector c_state;
};

/// Pure state on R (x) C, sparse over an orthonormal R label basis:
/// sum_l amplitude_l |l>_R (x) |c_l>_C.
class StructuredCommitState {
  public:
    /// Validates strictly increasing labels below 2^r_qubits, C vectors of
    /// length 2^c_qubits, and unit norm within 1e-9.
    StructuredCommitState(int r_qubits, int c_qubits, std::vector<CommitEntry> entries);

    int r_qubits() const { return r_qubits_; }
    int c_qubits() const { return c_qubits_; }
    const std::vector<CommitEntry>& entries() const { return entries_; }

    double norm_squared() const;
    /// <this|other>; both states must have the same register sizes.
    Complex inner_product(const StructuredCommitState& other) const;
    /// <this| (I_R (x) op) |other>.
    Complex inner_product(const StructuredCommitState& other, const CMatrix& c_operator) const;

    /// Tr_R |psi><psi|.
    DensityMatrix c_marginal() const;
    /// Tr_C |psi><psi|. Requires r_qubits <= 12.
    DensityMatrix r_marginal() const;
    /// Dense vector on R (x) C, R first. Refuses more than 2^14 amplitudes.
    PureState to_dense() const;

  private:
    int r_qubits_;
    int c_qubits_;
    std::vector<CommitEntry> entries_;
};

/// The honest commitment |psi_b>. With an ancilla-bearing generator the
/// ancilla qubit joins R as its least significant qubit. Requires m > n,
/// m <= 8, n <= 6 and at most 2^24 stored C amplitudes in total.
StructuredCommitState build_commit_state(const GeneratorSpec& spec, int bit);

/// A commitment scheme in generic form: two honest states over the same
/// R and C registers, with the hiding states rho_b = Tr_R |psi_b><psi_b|
/// computed once.
class CommitmentScheme {
  public:
    static CommitmentScheme from_generator(const GeneratorSpec& spec);
    static CommitmentScheme from_states(StructuredCommitState psi0, StructuredCommitState psi1);

    const StructuredCommitState& honest_state(int bit) const;
    const DensityMatrix& hiding_state(int bit) const;
    int r_qubits() const { return states_[0].r_qubits(); }
    int c_qubits() const { return states_[0].c_qubits(); }
    const std::optional<GeneratorSpec>& spec() const { return spec_; }

  private:
    CommitmentScheme(std::array<StructuredCommitState, 2> states,
                     std::optional<GeneratorSpec> spec);
    std::array<StructuredCommitState, 2> states_;
    std::array<DensityMatrix, 2> hiding_;
    std::optional<GeneratorSpec> spec_;
};

struct HidingStates {
    DensityMatrix rho0;
    DensityMatrix rho1;
};

/// rho_b = Tr_R |psi_b><psi_b| from the structured states.
HidingStates hiding_states(const GeneratorSpec& spec);

/// Receiver acceptance <psi_b| rho |psi_b> for the pure RC state `state`.
double honest_reveal_verify(const StructuredCommitState& state, int claimed_bit,
                            const GeneratorSpec& spec);
double honest_reveal_verify(const StructuredCommitState& state, int claimed_bit,
                            const CommitmentScheme& scheme);

struct BindingBound {
    double fidelity = 0.0;   ///< F(rho_0, rho_1)
    double bound = 0.0;      ///< 2^(n-m)
    double sum_bound = 0.0;  ///< 1 + sqrt(F(rho_0, rho_1))
    bool holds = false;      ///< fidelity <= bound + 1e-8
};

BindingBound binding_bound(const GeneratorSpec& spec);

/// Cheating-sender target: the commitment sigma_C it sends, and the largest
/// environment (purifying register) it may use; 0 means 2^m.
struct AttackSpec {
    DensityMatrix target;
    std::size_t environment_cap = 0;
};

/// Optimal cheating sender for a fixed commitment sigma_C.
///
/// The sender holds |Psi>_{ERC} = sum_i sqrt(s_i) |i>_E |0>_R |e_i>_C with
/// sigma_C = sum_i s_i |e_i><e_i|. To open b it applies the unitary on E (x) R
/// that maps |i>_E |0>_R to |0>_E (x) sum_l W_b[l, i] |l>_R, where W_b comes
/// from the SVD of the cross-Gram matrix G_b[l, i] = conj(a_l) sqrt(s_i) <c_l|e_i>.
struct UhlmannAttack {
    std::array<double, 2> success{};           ///< achieved p_b = |<psi_b|Phi_b>|^2
    std::array<double, 2> fidelity{};          ///< F(rho_b, sigma_C) for comparison
    std::array<CMatrix, 2> isometry;           ///< W_b: labels x rank, orthonormal columns
    std::vector<StructuredCommitState> opened; ///< Phi_b on R (x) C, E back in |0>
    std::size_t rank = 0;
};

/// Throws NotPsdError for a non-PSD target and CapExceededError when the
/// target rank exceeds the environment cap or the number of R labels.
UhlmannAttack uhlmann_attack(const CommitmentScheme& scheme, const AttackSpec& attack);
UhlmannAttack uhlmann_attack(const GeneratorSpec& spec, const AttackSpec& attack);

struct SweepRow {
    double p0 = 0.0;
    double p1 = 0.0;
    double sum = 0.0;
    double bound = 0.0;  ///< 1 + sqrt(F(rho_0, rho_1))
    bool holds = false;  ///< sum <= bound + 1e-7
};

std::vector<SweepRow> sum_binding_sweep(const CommitmentScheme& scheme,
                                        std::span<const DensityMatrix> candidates);

/// Two-outcome measurement on C.
struct BinaryMeasurement {
    HermitianObservable pi0;
    HermitianObservable pi1;
};

enum class ZeroEigenspace { ToPi0, ToPi1 };

/// Helstrom measurement for rho_0 vs rho_1: Pi_0 projects onto the
/// non-negative eigenspace of rho_0 - rho_1 (|lambda| <= 1e-12 counts as zero
/// and follows `tie_break`), Pi_1 = I - Pi_0.
BinaryMeasurement helstrom_measurement(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                       ZeroEigenspace tie_break = ZeroEigenspace::ToPi0);
BinaryMeasurement helstrom_extractor(const GeneratorSpec& spec);

/// 1/2 Tr(Pi_0 rho_0) + 1/2 Tr(Pi_1 rho_1): success on a uniformly random bit.
double discrimination_success(const BinaryMeasurement& measurement, const DensityMatrix& rho0,
                              const DensityMatrix& rho1);

/// What a sender does in one round of the binding experiments: the RC state
/// the receiver verifies (after the sender's R-side operation), the bit it
/// reveals, and a classical summary of its private register.
struct SenderRound {
    int summary = 0;
    int reveal_bit = 0;
    StructuredCommitState reveal_state;
};

class SenderStrategy {
  public:
    virtual ~SenderStrategy() = default;
    virtual std::string name() const = 0;
    /// Must not depend on anything but the scheme and `rng`.
    virtual SenderRound play(const CommitmentScheme& scheme, Rng& rng) const = 0;
};

/// Commits to a uniform bit (or a fixed one) and opens it honestly.
class HonestSender final : public SenderStrategy {
  public:
    explicit HonestSender(std::optional<int> fixed_bit = std::nullopt) : fixed_bit_(fixed_bit) {}
    std::string name() const override { return "honest"; }
    SenderRound play(const CommitmentScheme& scheme, Rng& rng) const override;

  private:
    std::optional<int> fixed_bit_;
};

/// Commits honestly to `commit_bit` but reveals `open_bit`.
class InconsistentSender final : public SenderStrategy {
  public:
    InconsistentSender(int commit_bit, int open_bit) : commit_bit_(commit_bit), open_bit_(open_bit) {}
    std::string name() const override { return "inconsistent"; }
    SenderRound play(const CommitmentScheme& scheme, Rng& rng) const override;

  private:
    int commit_bit_;
    int open_bit_;
};

/// Sends sigma_C, then decides the bit uniformly and runs the optimal opening.
class UhlmannSender final : public SenderStrategy {
  public:
    UhlmannSender(const CommitmentScheme& scheme, const AttackSpec& attack);
    std::string name() const override { return "uhlmann"; }
    SenderRound play(const CommitmentScheme& scheme, Rng& rng) const override;
    const UhlmannAttack& attack() const { return attack_; }

  private:
    UhlmannAttack attack_;
};

struct RealIdealResult {
    double distance = 0.0;            ///< empirical total variation over (summary, outcome)
    double distance_stderr = 0.0;
    double extraction_failure = 0.0;  ///< 1 - Helstrom success on a uniform honest bit
    double real_reject_rate = 0.0;
    double ideal_reject_rate = 0.0;
    std::size_t trials = 0;
};

/// Real experiment: commit, reveal, record (summary, b or bottom).
/// Ideal experiment: the extractor measures C first; the outcome is kept only
/// when the receiver accepts and the revealed bit equals the extracted one.
/// Trial i uses derive_seed(base_seed, i).
RealIdealResult real_vs_ideal_experiment(const CommitmentScheme& scheme,
                                         const SenderStrategy& sender, std::size_t trials,
                                         std::uint64_t base_seed);

/// Commitment whose R register is one-time padded and sent along with C.
struct MaskedCommitment {
    StructuredCommitState masked;
    PauliMask opening;
};

/// (X^x Z^z)_R (x) I_C, as a relabelling with signs.
StructuredCommitState mask_r_register(const StructuredCommitState& state, const PauliMask& mask);
/// (X^x Z^z)^dagger_R (x) I_C; exact inverse of mask_r_register.
StructuredCommitState unmask_r_register(const StructuredCommitState& state, const PauliMask& mask);

/// Samples a uniform mask over R and applies it.
MaskedCommitment classical_opening_wrap(const StructuredCommitState& state, Rng& rng);

/// Receiver side with a classical opening: undo the mask, then run the
/// honest verification.
double verify_classical_opening(const CommitmentScheme& scheme, const MaskedCommitment& commitment,
                                int claimed_bit);

/// Receiver-masked variant: R holds only the key (and ancilla),
/// |psi_b> = 2^{-n/2} sum_k |k>_R (x) (X^x Z^z)^b |phi_k>_C for the receiver's mask.
StructuredCommitState interactive_variant_commit(const GeneratorSpec& spec, int bit,
                                                 const PauliMask& receiver_mask);

}  // namespace qcl
