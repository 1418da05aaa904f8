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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qcl/qstate.hpp"

namespace qcl {

/// Keyed state-generator families.
///
/// None of these is cryptographically secure. The keyed functions behind
/// `BinaryPhase` and `PrgEmbed` are fixed public splitmix64-style mixers that
/// stand in for a PRF/PRG at desk scale; the experiments measure the
/// information-theoretic quantities (fidelities, trace distances, overlaps)
/// and never claim computational hardness.
enum class Family {
    BasisEmbed,   ///< |k>|0^{m-n}>, an orthonormal family and a deliberately weak control
    BinaryPhase,  ///< 2^{-m/2} sum_x (-1)^{f_k(x)} |x>
    PrgEmbed,     ///< |G(k)> for an expanding keyed mixer G: {0,1}^n -> {0,1}^m
};

std::string_view family_name(Family family);
/// Accepts "basis-embed", "binary-phase", "prg-embed"; throws ConfigError otherwise.
Family parse_family(std::string_view name);

/// n-bit key. Bit (n - 1 - j) of `bits()` is key bit j, matching the qubit
/// convention, so |k> of basis-embed has amplitude index k << (m - n).
class Key {
  public:
    Key(std::uint64_t bits, int length);
    static Key from_string(std::string_view bits);

    std::uint64_t bits() const { return bits_; }
    int length() const { return length_; }
    std::string to_string() const;

    friend bool operator==(const Key&, const Key&) = default;

  private:
    std::uint64_t bits_;
    int length_;
};

struct GeneratorSpec {
    Family family = Family::BasisEmbed;
    int n = 1;
    int m = 2;
    /// Emit a one-qubit ancilla |eta_k> next to |phi_k>.
    bool ancilla = false;

    /// n, m in [1, 20]; throws ConfigError.
    void validate() const;
    /// Commitment and SDCID use additionally need m > n.
    void require_expanding() const;

    int ancilla_qubits() const { return ancilla ? 1 : 0; }
    std::uint64_t key_count() const { return std::uint64_t{1} << n; }
    std::uint64_t output_dim() const { return std::uint64_t{1} << m; }
};

struct GeneratorOutput {
    PureState output;
    std::optional<PureState> ancilla;
};

/// |phi_k> (and |eta_k> when the spec asks for an ancilla). Deterministic in k.
/// Throws DimensionError when the key length differs from spec.n.
GeneratorOutput generate(const GeneratorSpec& spec, const Key& key);

/// Amplitudes of |phi_k> without building a PureState; hot path for enumeration.
CVector output_amplitudes(const GeneratorSpec& spec, std::uint64_t key_bits);
/// Amplitudes of |eta_k>, or an empty vector when the spec has no ancilla.
CVector ancilla_amplitudes(const GeneratorSpec& spec, std::uint64_t key_bits);

/// rho_0 = 2^{-n} sum_k |phi_k><phi_k| by exact enumeration (n, m <= 10).
DensityMatrix ensemble_density(const GeneratorSpec& spec);

/// TD(rho_0, I/2^m): the best single-copy distinguishing advantage any
/// measurement can reach against the maximally mixed state.
double single_copy_advantage(const GeneratorSpec& spec);

/// SWAP-test acceptance on two copies drawn from a uniform mixture of the
/// given outputs: (1 + mean_k Tr(rho_k^2)) / 2.
double swap_test_acceptance(std::span<const DensityMatrix> outputs);

struct SwapTestAttack {
    /// Analytic acceptance on two copies of generator outputs; 1 for pure outputs.
    double generator_acceptance = 0.0;
    /// Monte-Carlo acceptance on pairs of independent Haar states.
    double haar_pair_acceptance = 0.0;
    double haar_pair_stderr = 0.0;
    std::size_t trials = 0;
};

/// Two-copy SWAP-test attack. Trial i draws its Haar pair from
/// derive_seed(base_seed, i), so the estimate does not depend on threading.
SwapTestAttack swap_test_attack(const GeneratorSpec& spec, std::size_t trials,
                                std::uint64_t base_seed);

}  // namespace qcl
