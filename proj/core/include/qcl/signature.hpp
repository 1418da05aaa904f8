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
 * @file    signature.hpp
 * @brief   One-way state generator experiments and the one-time signature
 *          scheme with quantum public keys.
 *
 * Keys are sk = (k_0, k_1), public keys pk_b = |phi_{k_b}>, a signature on the
 * one-bit message m is sk_m, and verification projects pk_m onto |phi_sigma>.
 * Acceptance probabilities are computed exactly; Bernoulli sampling exists
 * for end-to-end runs.
 */

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcl/generators.hpp"
#include "qcl/qstate.hpp"
#include "qcl/rng.hpp"
#include "qcl/stats.hpp"

namespace qcl {

/// Copies of an unknown state that can only be measured, each copy once.
class StateCopies {
  public:
    StateCopies(PureState state, std::size_t count);

    std::size_t remaining() const { return remaining_; }
    int num_qubits() const { return static_cast<int>(state_.dims().size()); }

    /// Measures one copy in the computational basis. Throws ProtocolError
    /// when no copy is left.
    std::uint64_t measure_computational(Rng& rng);
    /// Measures one copy with {P, I - P}; true on the P outcome.
    bool measure_projector(const CVector& target, Rng& rng);

  private:
    void consume();
    PureState state_;
    std::size_t remaining_;
};

// ---------------------------------------------------------------------------
// One-wayness

/// Strategy in the one-wayness game: given copies of the challenge, name a key.
class OwsgAdversary {
  public:
    virtual ~OwsgAdversary() = default;
    virtual std::string name() const = 0;
    /// `planted` is the challenger's key and is only read by the oracle
    /// strategy; it is empty when the challenge is a Haar state.
    virtual std::optional<Key> guess(const GeneratorSpec& spec, StateCopies& copies,
                                     const std::optional<Key>& planted, Rng& rng) const = 0;
};

/// Built-in strategies: random-guess, fixed-guess, basis-measure, oracle, never.
std::unique_ptr<OwsgAdversary> make_owsg_adversary(std::string_view name);
std::vector<std::string> owsg_adversary_names();

struct OwsgExperimentConfig {
    std::size_t t = 1;
    std::size_t trials = 1000;
    std::string adversary = "random-guess";
    std::uint64_t seed = 0;
};

/// Mean exact acceptance |<phi_sigma|challenge>|^2 over trials; a missing
/// guess scores 0.
struct OwsgResult {
    Estimate success;
    std::string adversary;
};

/// Challenge |phi_k>^{(x)t} for a uniform key k.
OwsgResult owsg_experiment(const GeneratorSpec& spec, const OwsgExperimentConfig& cfg);
/// Challenge |psi>^{(x)t} for a Haar state psi.
OwsgResult haar_challenge_experiment(const GeneratorSpec& spec, const OwsgExperimentConfig& cfg);

/// sum_sigma <phi_sigma| I/2^m |phi_sigma>, enumerated over all keys.
double haar_baseline(const GeneratorSpec& spec);
/// Exact success of the random-guess strategy: 2^{-2n} sum_{sigma,k} |<phi_sigma|phi_k>|^2.
double random_guess_success(const GeneratorSpec& spec);

// ---------------------------------------------------------------------------
// Signature scheme

struct SignatureKeys {
    std::array<Key, 2> sk;
    std::array<GeneratorOutput, 2> pk;

    /// Regenerates pk_b from sk_b.
    GeneratorOutput public_key(const GeneratorSpec& spec, int message) const;
};

SignatureKeys keygen(const GeneratorSpec& spec, Rng& rng);
Key sign(const SignatureKeys& keys, int message);
/// |<phi_sigma|pk_m>|^2. With an ancilla the verifier's U_sigma^dagger acts on
/// pk (x) |eta_sigma>, which gives the same overlap.
double verify(const GeneratorSpec& spec, const GeneratorOutput& pk, int message, const Key& sigma);
bool verify_sampled(const GeneratorSpec& spec, const GeneratorOutput& pk, int message,
                    const Key& sigma, Rng& rng);

/// The forger's view of one game. Calls must follow the order
/// public_keys* -> choose_message -> signature* -> forge; anything else
/// throws ProtocolError.
class ForgeryChannel {
  public:
    ForgeryChannel(std::array<PureState, 2> public_keys, std::size_t copies_per_slot,
                   std::array<Key, 2> secret_keys, bool leak_secret_keys);

    StateCopies& public_keys(int slot);
    void choose_message(int message);
    const Key& signature() const;
    /// Forgery on message m xor 1. An empty key abstains.
    void forge(std::optional<Key> sigma);

    /// Only set for strategies that declare themselves oracles.
    const std::optional<std::array<Key, 2>>& leaked_secret_keys() const { return leak_; }

    std::optional<int> message() const { return message_; }
    const std::optional<Key>& forgery() const { return forgery_; }
    bool forged() const { return forged_; }
    std::size_t copies_per_slot() const { return copies_per_slot_; }

  private:
    enum class Phase { Query, Chosen, Done };
    Phase phase_ = Phase::Query;
    std::array<StateCopies, 2> copies_;
    std::size_t copies_per_slot_;
    std::array<Key, 2> secret_;
    std::optional<std::array<Key, 2>> leak_;
    std::optional<int> message_;
    std::optional<Key> forgery_;
    bool forged_ = false;
};

/// One-time forger. A fresh instance plays each trial.
class ForgeryAdversary {
  public:
    virtual ~ForgeryAdversary() = default;
    virtual std::string name() const = 0;
    /// Public-key copies wanted from slot 0 and slot 1.
    virtual std::array<std::size_t, 2> query_counts() const { return {0, 0}; }
    virtual bool oracle() const { return false; }
    virtual void play(const GeneratorSpec& spec, ForgeryChannel& channel, Rng& rng) = 0;
};

/// Built-in forgers: random-guess, fixed-guess, basis-measure, oracle, never, replay.
std::unique_ptr<ForgeryAdversary> make_forgery_adversary(std::string_view name);
std::vector<std::string> forgery_adversary_names();

struct GameResult {
    Estimate forgery;            ///< exact per-trial Pr[Exp = 1]
    std::size_t copies_per_slot = 0;
    double key_collision = 0.0;  ///< 2^-n, the chance that k_0 = k_1
};

/// Trial i runs the game on derive_seed(seed, i). Public-key copies are issued
/// max(s_0, s_1) per slot.
GameResult one_time_security_game(const GeneratorSpec& spec, std::string_view adversary,
                                  std::size_t trials, std::uint64_t seed);

struct ReductionResult {
    Estimate wrapped;   ///< Pr[C' -> 1]
    Estimate game;      ///< Pr[Exp = 1] from an independent run
    double lhs = 0.0;   ///< Pr[C' -> 1]
    double rhs = 0.0;   ///< Pr[Exp = 1] / 2
    double combined_stderr = 0.0;
    bool within_3sigma = false;
    double abort_rate = 0.0;
};

/// Runs the forger inside the one-wayness wrapper: the challenge fills slot r,
/// a fresh key k' fills the other, and the wrapper aborts when the forger
/// picks m = r. The game side uses an independent seed stream.
ReductionResult reduction_experiment(const GeneratorSpec& spec, std::string_view adversary,
                                     std::size_t trials, std::uint64_t seed);

}  // namespace qcl
