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
#include <map>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcl/errors.hpp"
#include "qcl/signature.hpp"
#include "test_helpers.hpp"

namespace qcl {
namespace {

using testing::all_families;

TEST(StateCopies, ConsumesCopies) {
    StateCopies copies(PureState::basis({2, 2}, 2), 2);
    Rng rng(1);
    EXPECT_EQ(copies.measure_computational(rng), 2u);
    EXPECT_TRUE(copies.measure_projector(CVector::Unit(4, 2), rng));
    EXPECT_EQ(copies.remaining(), 0u);
    EXPECT_THROW(copies.measure_computational(rng), ProtocolError);
}

TEST(Owsg, ControlAdversaries) {
    const GeneratorSpec spec{Family::BasisEmbed, 2, 4, false};
    EXPECT_EQ(owsg_experiment(spec, {1, 500, "basis-measure", 3}).success.mean, 1.0);
    EXPECT_EQ(owsg_experiment(spec, {1, 500, "oracle", 3}).success.mean, 1.0);
    EXPECT_EQ(owsg_experiment(spec, {1, 500, "never", 3}).success.mean, 0.0);
    EXPECT_THROW(owsg_experiment(spec, {1, 10, "bogus", 3}), ConfigError);
}

TEST(Owsg, RandomGuessExactValue) {
    for (Family f : all_families()) {
        for (int n = 1; n <= 4; ++n) {
            const GeneratorSpec spec{f, n, n + 2, false};
            EXPECT_NEAR(random_guess_success(spec), oracle::random_guess_success(spec), 1e-13);
        }
        const GeneratorSpec spec{f, 2, 4, false};
        const OwsgResult r = owsg_experiment(spec, {1, 4000, "random-guess", 8});
        EXPECT_LE(std::abs(r.success.mean - random_guess_success(spec)), 3.0 * r.success.std_error + 1e-12);
    }
    EXPECT_NEAR(random_guess_success({Family::BasisEmbed, 3, 5, false}), 0.125, 1e-15);
}

TEST(HaarBaseline, Values) {
    EXPECT_NEAR(haar_baseline({Family::BinaryPhase, 2, 4, false}), 0.25, 1e-10);
    EXPECT_NEAR(haar_baseline({Family::PrgEmbed, 2, 6, false}), 0.0625, 1e-10);
    EXPECT_NEAR(haar_baseline({Family::BasisEmbed, 3, 3, false}), 1.0, 1e-10);
}

TEST(HaarChallenge, BoundAndFixedGuess) {
    for (std::size_t t : {0, 1, 4}) {
        for (const auto& name : owsg_adversary_names()) {
            const GeneratorSpec spec{Family::BasisEmbed, 2, 6, false};
            const OwsgResult r = haar_challenge_experiment(spec, {t, 2000, name, 5});
            ASSERT_LE(r.success.mean, 0.0625 + 3.0 * r.success.std_error) << name << " t=" << t;
        }
    }
    const OwsgResult fixed = haar_challenge_experiment({Family::BinaryPhase, 2, 4, false}, {1, 10000, "fixed-guess", 6});
    EXPECT_LE(std::abs(fixed.success.mean - 1.0 / 16.0), 3.0 * fixed.success.std_error);
}

TEST(Keygen, DeterministicAndRegenerable) {
    const GeneratorSpec spec{Family::BinaryPhase, 3, 5, false};
    Rng a(77), b(77);
    const SignatureKeys ka = keygen(spec, a);
    const SignatureKeys kb = keygen(spec, b);
    EXPECT_EQ(ka.sk, kb.sk);
    for (int msg = 0; msg < 2; ++msg) {
        EXPECT_EQ(ka.pk[msg].output.amplitudes(), generate(spec, ka.sk[msg]).output.amplitudes());
        EXPECT_EQ(sign(ka, msg), ka.sk[msg]);
        EXPECT_EQ(sign(ka, msg), sign(ka, msg));
    }
}

TEST(Keygen, KeysAreUniform) {
    // Chi-square over 8 cells with 7 degrees of freedom; 24.32 is the 0.001 quantile.
    const GeneratorSpec spec{Family::BasisEmbed, 3, 4, false};
    Rng rng(2);
    std::array<std::array<int, 8>, 2> counts{};
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        const SignatureKeys k = keygen(spec, rng);
        ++counts[0][k.sk[0].bits()];
        ++counts[1][k.sk[1].bits()];
    }
    for (const auto& c : counts) {
        double chi = 0.0;
        for (int v : c) chi += (v - samples / 8.0) * (v - samples / 8.0) / (samples / 8.0);
        EXPECT_LT(chi, 24.32);
    }
}

TEST(Verify, CorrectnessAndWrongKeys) {
    Rng rng(12);
    for (Family f : all_families()) {
        const GeneratorSpec spec{f, 2, 4, false};
        for (int i = 0; i < 100; ++i) {
            const SignatureKeys keys = keygen(spec, rng);
            for (int msg = 0; msg < 2; ++msg) {
                ASSERT_EQ(verify(spec, keys.public_key(spec, msg), msg, sign(keys, msg)), 1.0);
                ASSERT_TRUE(verify_sampled(spec, keys.public_key(spec, msg), msg, sign(keys, msg), rng));
            }
        }
    }
    const GeneratorSpec basis{Family::BasisEmbed, 2, 4, false};
    const GeneratorOutput pk = generate(basis, Key(1, 2));
    EXPECT_EQ(verify(basis, pk, 0, Key(2, 2)), 0.0);
    const GeneratorSpec phase{Family::BinaryPhase, 2, 4, false};
    const GeneratorOutput ppk = generate(phase, Key(1, 2));
    const double v = verify(phase, ppk, 0, Key(3, 2));
    EXPECT_NEAR(v, std::norm(output_amplitudes(phase, 3).dot(output_amplitudes(phase, 1))), 1e-15);
    EXPECT_THROW(verify(basis, pk, 0, Key(1, 3)), DimensionError);
}

TEST(ForgeryChannel, EnforcesOrder) {
    const GeneratorSpec spec{Family::BasisEmbed, 2, 4, false};
    ForgeryChannel ch({generate(spec, Key(0, 2)).output, generate(spec, Key(1, 2)).output}, 1,
                      {Key(0, 2), Key(1, 2)}, false);
    EXPECT_THROW(ch.signature(), ProtocolError);
    EXPECT_THROW(ch.forge(Key(0, 2)), ProtocolError);
    ch.public_keys(0);
    ch.choose_message(1);
    EXPECT_THROW(ch.choose_message(0), ProtocolError);
    EXPECT_THROW(ch.public_keys(0), ProtocolError);
    EXPECT_EQ(ch.signature(), Key(1, 2));
    ch.forge(Key(0, 2));
    EXPECT_THROW(ch.forge(Key(0, 2)), ProtocolError);
    EXPECT_FALSE(ch.leaked_secret_keys().has_value());
}

TEST(OneTimeGame, ControlForgers) {
    const GeneratorSpec spec{Family::BasisEmbed, 2, 4, false};
    EXPECT_EQ(one_time_security_game(spec, "basis-measure", 1000, 1).forgery.mean, 1.0);
    EXPECT_EQ(one_time_security_game(spec, "oracle", 1000, 1).forgery.mean, 1.0);
    EXPECT_EQ(one_time_security_game(spec, "never", 1000, 1).forgery.mean, 0.0);
    // Replaying sk_m succeeds only when k_0 = k_1.
    const GameResult replay = one_time_security_game(spec, "replay", 10000, 1);
    EXPECT_EQ(replay.key_collision, 0.25);
    EXPECT_LE(std::abs(replay.forgery.mean - 0.25), 3.0 * std::sqrt(0.25 * 0.75 / 10000.0));
    EXPECT_THROW(one_time_security_game(spec, "nope", 10, 1), ConfigError);
}

TEST(Reduction, IdentityHoldsForBuiltIns) {
    const GeneratorSpec spec{Family::BasisEmbed, 2, 4, false};
    for (const auto& name : forgery_adversary_names()) {
        const ReductionResult r = reduction_experiment(spec, name, 5000, 21);
        EXPECT_TRUE(r.within_3sigma) << name << " lhs " << r.lhs << " rhs " << r.rhs;
    }
    const ReductionResult bm = reduction_experiment(spec, "basis-measure", 10000, 22);
    EXPECT_EQ(bm.game.mean, 1.0);
    EXPECT_LE(std::abs(bm.lhs - 0.5), 3.0 * bm.wrapped.std_error);
    const ReductionResult never = reduction_experiment(spec, "never", 1000, 23);
    EXPECT_EQ(never.lhs, 0.0);
    EXPECT_EQ(never.rhs, 0.0);
}

}  // namespace
}  // namespace qcl
