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

#include "qcl/signature.hpp"

#include <cmath>
#include <limits>

#include "qcl/errors.hpp"
#include "qcl/parallel.hpp"

namespace qcl {

namespace {

// Keeps the reduction's game-side stream apart from the wrapper's.
constexpr std::uint64_t kGameStreamSalt = 0x6A09E667F3BCC909ULL;

void require_message(int message) {
    if (message != 0 && message != 1) {
        throw DimensionError("message must be 0 or 1");
    }
}

void check_enumerable(const GeneratorSpec& spec) {
    spec.validate();
    if (spec.n + spec.m > 22) {
        throw CapExceededError("key enumeration is capped at n + m <= 22");
    }
}

void check_trials(std::size_t trials) {
    if (trials < 1) {
        throw ConfigError("at least one trial is required");
    }
}

Key random_key(const GeneratorSpec& spec, Rng& rng) {
    return Key(rng.below(spec.key_count()), spec.n);
}

PureState output_state(const GeneratorSpec& spec, std::uint64_t key) {
    return PureState::qubits(output_amplitudes(spec, key));
}

double overlap_with_key(const GeneratorSpec& spec, const std::optional<Key>& sigma,
                        const CVector& state) {
    if (!sigma) {
        return 0.0;
    }
    if (sigma->length() != spec.n) {
        throw DimensionError("guessed key has the wrong length");
    }
    return std::norm(output_amplitudes(spec, sigma->bits()).dot(state));
}

// Most likely key given computational-basis outcomes; ties go to the smallest key.
Key max_likelihood_key(const GeneratorSpec& spec, const std::vector<std::uint64_t>& outcomes) {
    std::uint64_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k < spec.key_count(); ++k) {
        const CVector phi = output_amplitudes(spec, k);
        double score = 0.0;
        for (std::uint64_t x : outcomes) {
            score += std::log(std::norm(phi[static_cast<Eigen::Index>(x)]));
        }
        if (score > best_score) {
            best_score = score;
            best = k;
        }
    }
    return Key(best, spec.n);
}

Key measure_and_decode(const GeneratorSpec& spec, StateCopies& copies, Rng& rng) {
    std::vector<std::uint64_t> outcomes;
    while (copies.remaining() > 0) {
        outcomes.push_back(copies.measure_computational(rng));
    }
    return max_likelihood_key(spec, outcomes);
}

// ----- one-wayness strategies

class RandomGuessOwsg final : public OwsgAdversary {
  public:
    std::string name() const override { return "random-guess"; }
    std::optional<Key> guess(const GeneratorSpec& spec, StateCopies&, const std::optional<Key>&,
                             Rng& rng) const override {
        return random_key(spec, rng);
    }
};

class FixedGuessOwsg final : public OwsgAdversary {
  public:
    std::string name() const override { return "fixed-guess"; }
    std::optional<Key> guess(const GeneratorSpec& spec, StateCopies&, const std::optional<Key>&,
                             Rng&) const override {
        return Key(0, spec.n);
    }
};

class BasisMeasureOwsg final : public OwsgAdversary {
  public:
    std::string name() const override { return "basis-measure"; }
    std::optional<Key> guess(const GeneratorSpec& spec, StateCopies& copies,
                             const std::optional<Key>&, Rng& rng) const override {
        return measure_and_decode(spec, copies, rng);
    }
};

class OracleOwsg final : public OwsgAdversary {
  public:
    std::string name() const override { return "oracle"; }
    std::optional<Key> guess(const GeneratorSpec& spec, StateCopies&,
                             const std::optional<Key>& planted, Rng&) const override {
        return planted ? *planted : Key(0, spec.n);
    }
};

class NeverOwsg final : public OwsgAdversary {
  public:
    std::string name() const override { return "never"; }
    std::optional<Key> guess(const GeneratorSpec&, StateCopies&, const std::optional<Key>&,
                             Rng&) const override {
        return std::nullopt;
    }
};

// ----- forgers

class RandomGuessForger final : public ForgeryAdversary {
  public:
    std::string name() const override { return "random-guess"; }
    void play(const GeneratorSpec& spec, ForgeryChannel& channel, Rng& rng) override {
        channel.choose_message(rng.bit());
        channel.forge(random_key(spec, rng));
    }
};

class FixedGuessForger final : public ForgeryAdversary {
  public:
    std::string name() const override { return "fixed-guess"; }
    void play(const GeneratorSpec& spec, ForgeryChannel& channel, Rng&) override {
        channel.choose_message(0);
        channel.forge(Key(0, spec.n));
    }
};

class BasisMeasureForger final : public ForgeryAdversary {
  public:
    std::string name() const override { return "basis-measure"; }
    std::array<std::size_t, 2> query_counts() const override { return {1, 1}; }
    void play(const GeneratorSpec& spec, ForgeryChannel& channel, Rng& rng) override {
        const int message = rng.bit();
        const Key decoded = measure_and_decode(spec, channel.public_keys(message ^ 1), rng);
        channel.choose_message(message);
        channel.forge(decoded);
    }
};

class OracleForger final : public ForgeryAdversary {
  public:
    std::string name() const override { return "oracle"; }
    bool oracle() const override { return true; }
    void play(const GeneratorSpec&, ForgeryChannel& channel, Rng& rng) override {
        const int message = rng.bit();
        channel.choose_message(message);
        channel.forge((*channel.leaked_secret_keys())[static_cast<std::size_t>(message ^ 1)]);
    }
};

class NeverForger final : public ForgeryAdversary {
  public:
    std::string name() const override { return "never"; }
    void play(const GeneratorSpec&, ForgeryChannel& channel, Rng& rng) override {
        channel.choose_message(rng.bit());
        channel.forge(std::nullopt);
    }
};

// Resubmits the signature it was given, now as a forgery on the other message.
class ReplayForger final : public ForgeryAdversary {
  public:
    std::string name() const override { return "replay"; }
    void play(const GeneratorSpec&, ForgeryChannel& channel, Rng& rng) override {
        channel.choose_message(rng.bit());
        channel.forge(channel.signature());
    }
};

std::size_t issued_copies(const ForgeryAdversary& adversary) {
    const auto counts = adversary.query_counts();
    return std::max(counts[0], counts[1]);
}

}  // namespace

// ---------------------------------------------------------------------------
// StateCopies

StateCopies::StateCopies(PureState state, std::size_t count)
    : state_(std::move(state)), remaining_(count) {}

void StateCopies::consume() {
    if (remaining_ == 0) {
        throw ProtocolError("no unmeasured copies left");
    }
    --remaining_;
}

std::uint64_t StateCopies::measure_computational(Rng& rng) {
    consume();
    const CVector& amplitudes = state_.amplitudes();
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
        cumulative += std::norm(amplitudes[i]);
        if (u < cumulative) {
            return static_cast<std::uint64_t>(i);
        }
    }
    // Roundoff in the running sum; fall back to the last index with weight.
    for (Eigen::Index i = amplitudes.size() - 1; i > 0; --i) {
        if (std::norm(amplitudes[i]) > 0.0) {
            return static_cast<std::uint64_t>(i);
        }
    }
    return 0;
}

bool StateCopies::measure_projector(const CVector& target, Rng& rng) {
    if (target.size() != state_.amplitudes().size()) {
        throw DimensionError("measure_projector: target has the wrong dimension");
    }
    consume();
    return rng.uniform() < std::norm(target.normalized().dot(state_.amplitudes()));
}

// ---------------------------------------------------------------------------
// One-wayness

std::unique_ptr<OwsgAdversary> make_owsg_adversary(std::string_view name) {
    if (name == "random-guess") return std::make_unique<RandomGuessOwsg>();
    if (name == "fixed-guess") return std::make_unique<FixedGuessOwsg>();
    if (name == "basis-measure") return std::make_unique<BasisMeasureOwsg>();
    if (name == "oracle") return std::make_unique<OracleOwsg>();
    if (name == "never") return std::make_unique<NeverOwsg>();
    throw ConfigError("unknown adversary '" + std::string(name) + "'");
}

std::vector<std::string> owsg_adversary_names() {
    return {"random-guess", "fixed-guess", "basis-measure", "oracle", "never"};
}

OwsgResult owsg_experiment(const GeneratorSpec& spec, const OwsgExperimentConfig& cfg) {
    check_enumerable(spec);
    check_trials(cfg.trials);
    const auto adversary = make_owsg_adversary(cfg.adversary);
    const auto scores = parallel_map<double>(cfg.trials, [&](std::size_t i) {
        Rng rng(derive_seed(cfg.seed, i));
        const Key k = random_key(spec, rng);
        const CVector phi = output_amplitudes(spec, k.bits());
        StateCopies copies(PureState::qubits(phi), cfg.t);
        return overlap_with_key(spec, adversary->guess(spec, copies, k, rng), phi);
    });
    return OwsgResult{estimate(scores), adversary->name()};
}

OwsgResult haar_challenge_experiment(const GeneratorSpec& spec, const OwsgExperimentConfig& cfg) {
    check_enumerable(spec);
    check_trials(cfg.trials);
    const auto adversary = make_owsg_adversary(cfg.adversary);
    const auto scores = parallel_map<double>(cfg.trials, [&](std::size_t i) {
        Rng rng(derive_seed(cfg.seed, i));
        PureState psi = haar_qubit_state(spec.m, rng);
        const CVector amplitudes = psi.amplitudes();
        StateCopies copies(std::move(psi), cfg.t);
        return overlap_with_key(spec, adversary->guess(spec, copies, std::nullopt, rng),
                                amplitudes);
    });
    return OwsgResult{estimate(scores), adversary->name()};
}

double haar_baseline(const GeneratorSpec& spec) {
    check_enumerable(spec);
    const double inv_dim = 1.0 / static_cast<double>(spec.output_dim());
    double total = 0.0;
    for (std::uint64_t k = 0; k < spec.key_count(); ++k) {
        const CVector phi = output_amplitudes(spec, k);
        total += (phi.adjoint() * (inv_dim * phi)).value().real();
    }
    return total;
}

double random_guess_success(const GeneratorSpec& spec) {
    check_enumerable(spec);
    const auto keys = static_cast<Eigen::Index>(spec.key_count());
    CMatrix outputs(static_cast<Eigen::Index>(spec.output_dim()), keys);
    for (Eigen::Index k = 0; k < keys; ++k) {
        outputs.col(k) = output_amplitudes(spec, static_cast<std::uint64_t>(k));
    }
    const CMatrix gram = outputs.adjoint() * outputs;
    return gram.cwiseAbs2().sum() / static_cast<double>(keys * keys);
}

// ---------------------------------------------------------------------------
// Signature scheme

GeneratorOutput SignatureKeys::public_key(const GeneratorSpec& spec, int message) const {
    require_message(message);
    return generate(spec, sk[static_cast<std::size_t>(message)]);
}

SignatureKeys keygen(const GeneratorSpec& spec, Rng& rng) {
    spec.validate();
    const Key k0 = random_key(spec, rng);
    const Key k1 = random_key(spec, rng);
    return SignatureKeys{{k0, k1}, {generate(spec, k0), generate(spec, k1)}};
}

Key sign(const SignatureKeys& keys, int message) {
    require_message(message);
    return keys.sk[static_cast<std::size_t>(message)];
}

double verify(const GeneratorSpec& spec, const GeneratorOutput& pk, int message,
              const Key& sigma) {
    require_message(message);
    if (sigma.length() != spec.n) {
        throw DimensionError("verify: signature has " + std::to_string(sigma.length()) +
                             " bits, expected " + std::to_string(spec.n));
    }
    if (pk.output.dim() != spec.output_dim()) {
        throw DimensionError("verify: public key has the wrong dimension");
    }
    return std::norm(output_amplitudes(spec, sigma.bits()).dot(pk.output.amplitudes()));
}

bool verify_sampled(const GeneratorSpec& spec, const GeneratorOutput& pk, int message,
                    const Key& sigma, Rng& rng) {
    return rng.uniform() < verify(spec, pk, message, sigma);
}

ForgeryChannel::ForgeryChannel(std::array<PureState, 2> public_keys, std::size_t copies_per_slot,
                               std::array<Key, 2> secret_keys, bool leak_secret_keys)
    : copies_{StateCopies(std::move(public_keys[0]), copies_per_slot),
              StateCopies(std::move(public_keys[1]), copies_per_slot)},
      copies_per_slot_(copies_per_slot),
      secret_(secret_keys) {
    if (leak_secret_keys) {
        leak_ = secret_keys;
    }
}

StateCopies& ForgeryChannel::public_keys(int slot) {
    require_message(slot);
    if (phase_ != Phase::Query) {
        throw ProtocolError("public keys can only be queried before the message is chosen");
    }
    return copies_[static_cast<std::size_t>(slot)];
}

void ForgeryChannel::choose_message(int message) {
    require_message(message);
    if (phase_ != Phase::Query) {
        throw ProtocolError("the message can only be chosen once");
    }
    message_ = message;
    phase_ = Phase::Chosen;
}

const Key& ForgeryChannel::signature() const {
    if (phase_ != Phase::Chosen) {
        throw ProtocolError("the signature is only available after choosing the message");
    }
    return secret_[static_cast<std::size_t>(*message_)];
}

void ForgeryChannel::forge(std::optional<Key> sigma) {
    if (phase_ != Phase::Chosen) {
        throw ProtocolError("a forgery must follow the message choice and come only once");
    }
    forgery_ = std::move(sigma);
    forged_ = true;
    phase_ = Phase::Done;
}

std::unique_ptr<ForgeryAdversary> make_forgery_adversary(std::string_view name) {
    if (name == "random-guess") return std::make_unique<RandomGuessForger>();
    if (name == "fixed-guess") return std::make_unique<FixedGuessForger>();
    if (name == "basis-measure") return std::make_unique<BasisMeasureForger>();
    if (name == "oracle") return std::make_unique<OracleForger>();
    if (name == "never") return std::make_unique<NeverForger>();
    if (name == "replay") return std::make_unique<ReplayForger>();
    throw ConfigError("unknown adversary '" + std::string(name) + "'");
}

std::vector<std::string> forgery_adversary_names() {
    return {"random-guess", "fixed-guess", "basis-measure", "oracle", "never", "replay"};
}

namespace {

void require_finished(const ForgeryChannel& channel) {
    if (!channel.forged()) {
        throw ProtocolError("the adversary ended the game without a forgery");
    }
}

// Pr[Exp = 1] for one game played on `seed`.
double play_game(const GeneratorSpec& spec, std::string_view name, std::uint64_t seed,
                 std::size_t& copies) {
    Rng rng(seed);
    const SignatureKeys keys = keygen(spec, rng);
    auto adversary = make_forgery_adversary(name);
    copies = issued_copies(*adversary);
    ForgeryChannel channel({keys.pk[0].output, keys.pk[1].output}, copies, keys.sk,
                           adversary->oracle());
    adversary->play(spec, channel, rng);
    require_finished(channel);
    const int other = *channel.message() ^ 1;
    if (!channel.forgery()) {
        return 0.0;
    }
    return verify(spec, keys.public_key(spec, other), other, *channel.forgery());
}

// Pr[C' -> 1] for one run of the wrapper on `seed`.
double play_wrapped(const GeneratorSpec& spec, std::string_view name, std::uint64_t seed,
                    bool& aborted) {
    Rng rng(seed);
    const Key k = random_key(spec, rng);  // challenger's key
    auto adversary = make_forgery_adversary(name);
    const std::size_t copies = issued_copies(*adversary);

    const int r = rng.bit();
    const Key k_prime = random_key(spec, rng);
    std::array<Key, 2> slots{k, k};
    slots[static_cast<std::size_t>(r ^ 1)] = k_prime;
    // Slot r of the secret key is unknown to the wrapper; the channel only
    // reveals slot m, and the wrapper aborts before that when m = r.
    ForgeryChannel channel({output_state(spec, slots[0].bits()), output_state(spec, slots[1].bits())},
                           copies, slots, adversary->oracle());

    adversary->play(spec, channel, rng);
    require_finished(channel);
    aborted = *channel.message() == r;
    if (aborted || !channel.forgery()) {
        return 0.0;
    }
    return overlap_with_key(spec, channel.forgery(), output_amplitudes(spec, k.bits()));
}

}  // namespace

GameResult one_time_security_game(const GeneratorSpec& spec, std::string_view adversary,
                                  std::size_t trials, std::uint64_t seed) {
    check_enumerable(spec);
    check_trials(trials);
    make_forgery_adversary(adversary);  // reject unknown names before spawning work
    std::vector<std::size_t> copies(trials);
    const auto scores = parallel_map<double>(trials, [&](std::size_t i) {
        return play_game(spec, adversary, derive_seed(seed, i), copies[i]);
    });
    GameResult out;
    out.forgery = estimate(scores);
    out.copies_per_slot = copies.front();
    out.key_collision = 1.0 / static_cast<double>(spec.key_count());
    return out;
}

ReductionResult reduction_experiment(const GeneratorSpec& spec, std::string_view adversary,
                                     std::size_t trials, std::uint64_t seed) {
    check_enumerable(spec);
    check_trials(trials);
    make_forgery_adversary(adversary);
    std::vector<char> aborted(trials, 0);
    const auto wrapped = parallel_map<double>(trials, [&](std::size_t i) {
        bool abort = false;
        const double score = play_wrapped(spec, adversary, derive_seed(seed, i), abort);
        aborted[i] = abort ? 1 : 0;
        return score;
    });
    const GameResult game = one_time_security_game(spec, adversary, trials, mix64(seed ^ kGameStreamSalt));

    ReductionResult out;
    out.wrapped = estimate(wrapped);
    out.game = game.forgery;
    out.lhs = out.wrapped.mean;
    out.rhs = 0.5 * out.game.mean;
    out.combined_stderr = std::sqrt(out.wrapped.std_error * out.wrapped.std_error +
                                    0.25 * out.game.std_error * out.game.std_error);
    out.within_3sigma = std::abs(out.lhs - out.rhs) <= 3.0 * out.combined_stderr + 1e-12;
    double aborts = 0.0;
    for (char a : aborted) {
        aborts += a;
    }
    out.abort_rate = aborts / static_cast<double>(trials);
    return out;
}

}  // namespace qcl
