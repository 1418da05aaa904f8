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

#include "qcl/generators.hpp"

#include <cmath>
#include <numbers>

#include "qcl/errors.hpp"
#include "qcl/parallel.hpp"
#include "qcl/rng.hpp"
#include "qcl/stats.hpp"

namespace qcl {

namespace {

// Mixer constants. Arbitrary odd 64-bit words; changing them changes every
// binary-phase and prg-embed state.
constexpr std::uint64_t kPhaseKeySalt = 0xA0761D6478BD642FULL;
constexpr std::uint64_t kPhaseInputSalt = 0xE7037ED1A0B428DBULL;
constexpr std::uint64_t kPrgSalt = 0x8EBC6AF09C88C6E3ULL;
constexpr std::uint64_t kAncillaSalt = 0x589965CC75374CC3ULL;

int phase_bit(std::uint64_t key_word, std::uint64_t x) {
    return static_cast<int>(mix64(key_word ^ mix64(x + kPhaseInputSalt)) >> 63);
}

std::uint64_t prg_output(std::uint64_t key_bits, int m) {
    return mix64(mix64(key_bits ^ kPrgSalt) + key_bits) >> (64 - m);
}

}  // namespace

std::string_view family_name(Family family) {
    switch (family) {
        case Family::BasisEmbed:
            return "basis-embed";
        case Family::BinaryPhase:
            return "binary-phase";
        case Family::PrgEmbed:
            return "prg-embed";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::BasisEmbed, Family::BinaryPhase, Family::PrgEmbed}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    throw ConfigError("unknown generator family '" + std::string(name) +
                      "' (expected basis-embed, binary-phase or prg-embed)");
}

Key::Key(std::uint64_t bits, int length) : bits_(bits), length_(length) {
    if (length < 1 || length > 63 || bits >= (std::uint64_t{1} << length)) {
        throw DimensionError("Key: bits do not fit the key length");
    }
}

Key Key::from_string(std::string_view bits) {
    std::uint64_t value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw DimensionError("Key: bit strings may only contain 0 and 1");
        }
        value = (value << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Key(value, static_cast<int>(bits.size()));
}

std::string Key::to_string() const {
    std::string out(static_cast<std::size_t>(length_), '0');
    for (int j = 0; j < length_; ++j) {
        if ((bits_ >> (length_ - 1 - j)) & 1U) {
            out[static_cast<std::size_t>(j)] = '1';
        }
    }
    return out;
}

void GeneratorSpec::validate() const {
    if (n < 1 || n > 20) {
        throw ConfigError("generator: n must be in [1, 20]");
    }
    if (m < 1 || m > 20) {
        throw ConfigError("generator: m must be in [1, 20]");
    }
    if (family == Family::BasisEmbed && m < n) {
        throw ConfigError("basis-embed needs m >= n");
    }
}

void GeneratorSpec::require_expanding() const {
    validate();
    if (m <= n) {
        throw ConfigError("m must exceed n (got n=" + std::to_string(n) +
                          ", m=" + std::to_string(m) + ")");
    }
}

CVector output_amplitudes(const GeneratorSpec& spec, std::uint64_t key_bits) {
    const auto dim = static_cast<Eigen::Index>(spec.output_dim());
    CVector amplitudes = CVector::Zero(dim);
    switch (spec.family) {
        case Family::BasisEmbed:
            amplitudes[static_cast<Eigen::Index>(key_bits << (spec.m - spec.n))] = 1.0;
            break;
        case Family::BinaryPhase: {
            const std::uint64_t key_word = mix64(key_bits ^ kPhaseKeySalt);
            const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
            for (Eigen::Index x = 0; x < dim; ++x) {
                amplitudes[x] =
                    phase_bit(key_word, static_cast<std::uint64_t>(x)) ? -scale : scale;
            }
            break;
        }
        case Family::PrgEmbed:
            amplitudes[static_cast<Eigen::Index>(prg_output(key_bits, spec.m))] = 1.0;
            break;
    }
    return amplitudes;
}

CVector ancilla_amplitudes(const GeneratorSpec& spec, std::uint64_t key_bits) {
    if (!spec.ancilla) {
        return CVector();
    }
    const double unit =
        static_cast<double>(mix64(key_bits ^ kAncillaSalt) >> 11) * 0x1.0p-53;
    const double angle = 0.5 * std::numbers::pi * unit;
    CVector eta(2);
    eta << std::cos(angle), std::sin(angle);
    return eta;
}

GeneratorOutput generate(const GeneratorSpec& spec, const Key& key) {
    spec.validate();
    if (key.length() != spec.n) {
        throw DimensionError("generate: key has " + std::to_string(key.length()) +
                             " bits, spec expects " + std::to_string(spec.n));
    }
    GeneratorOutput out{PureState(output_amplitudes(spec, key.bits()),
                                  Dims(static_cast<std::size_t>(spec.m), 2)),
                        std::nullopt};
    if (spec.ancilla) {
        out.ancilla = PureState(ancilla_amplitudes(spec, key.bits()), Dims{2});
    }
    return out;
}

DensityMatrix ensemble_density(const GeneratorSpec& spec) {
    spec.validate();
    if (spec.n > 10 || spec.m > 10) {
        throw CapExceededError("ensemble_density: enumeration is capped at n, m <= 10");
    }
    const auto keys = static_cast<Eigen::Index>(spec.key_count());
    CMatrix outputs(static_cast<Eigen::Index>(spec.output_dim()), keys);
    for (Eigen::Index k = 0; k < keys; ++k) {
        outputs.col(k) = output_amplitudes(spec, static_cast<std::uint64_t>(k));
    }
    CMatrix rho = outputs * outputs.adjoint() / static_cast<double>(keys);
    return DensityMatrix::unchecked(std::move(rho), Dims(static_cast<std::size_t>(spec.m), 2));
}

double single_copy_advantage(const GeneratorSpec& spec) {
    return trace_distance(ensemble_density(spec), DensityMatrix::maximally_mixed_qubits(spec.m));
}

double swap_test_acceptance(std::span<const DensityMatrix> outputs) {
    if (outputs.empty()) {
        throw DimensionError("swap_test_acceptance: no outputs given");
    }
    double mean_purity = 0.0;
    for (const auto& rho : outputs) {
        mean_purity += purity(rho);
    }
    mean_purity /= static_cast<double>(outputs.size());
    return 0.5 * (1.0 + mean_purity);
}

SwapTestAttack swap_test_attack(const GeneratorSpec& spec, std::size_t trials,
                                std::uint64_t base_seed) {
    spec.validate();
    if (trials < 1) {
        throw ConfigError("swap_test_attack: at least one trial is required");
    }
    SwapTestAttack result;
    result.trials = trials;
    // Every output is a pure vector, so each Tr(rho_k^2) is exactly 1 and the
    // footnote formula needs no sampling.
    result.generator_acceptance = 0.5 * (1.0 + 1.0);

    const std::size_t dim = spec.output_dim();
    const auto accept = parallel_map<double>(trials, [&](std::size_t i) {
        Rng rng(derive_seed(base_seed, i));
        const PureState a = haar_state(dim, rng);
        const PureState b = haar_state(dim, rng);
        return 0.5 * (1.0 + std::norm(a.amplitudes().dot(b.amplitudes())));
    });
    const Estimate haar = estimate(accept);
    result.haar_pair_acceptance = haar.mean;
    result.haar_pair_stderr = haar.std_error;
    return result;
}

}  // namespace qcl
