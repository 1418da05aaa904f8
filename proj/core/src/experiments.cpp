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

#include "qcl/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "qcl/commitment.hpp"
#include "qcl/errors.hpp"
#include "qcl/generators.hpp"
#include "qcl/parallel.hpp"
#include "qcl/qstate.hpp"
#include "qcl/sdcid.hpp"
#include "qcl/signature.hpp"

#ifndef QCL_VERSION
#define QCL_VERSION "0.0.0"
#endif

namespace qcl {

namespace {

using Runner = std::function<void(const ExperimentConfig&, ExperimentReport&)>;

std::string fmt(double v) { return format_number(v); }

double pow2(int e) { return std::ldexp(1.0, e); }

std::vector<std::string> pick(const std::string& wanted, const std::vector<std::string>& all) {
    if (wanted == "all") {
        return all;
    }
    if (std::find(all.begin(), all.end(), wanted) == all.end()) {
        throw ConfigError("adversary: unknown strategy '" + wanted + "'");
    }
    return {wanted};
}

// ---------------------------------------------------------------------------

void run_qotp_check(const ExperimentConfig& c, ExperimentReport& r) {
    const int m = c.m;
    if (m > 6) {
        throw CapExceededError("qotp-check: exact enumeration is capped at m <= 6");
    }
    const std::size_t states = std::min<std::size_t>(c.trials, 64);
    const std::uint64_t dim = std::uint64_t{1} << m;
    const auto deviations = parallel_map<std::pair<std::string, double>>(states, [&](std::size_t i) {
        Rng rng(derive_seed(c.seed, i));
        std::string kind;
        DensityMatrix rho = DensityMatrix::maximally_mixed_qubits(m);
        if (i == 0) {
            kind = "basis";
            rho = PureState::basis(Dims(static_cast<std::size_t>(m), 2), 0).density();
        } else if (i == 1) {
            kind = "maximally-mixed";
        } else if (i % 2 == 0) {
            kind = "haar-pure";
            rho = haar_qubit_state(m, rng).density();
        } else {
            const std::size_t rank = 1 + (i / 2) % dim;
            kind = "ginibre-rank-" + std::to_string(rank);
            rho = random_density_matrix(Dims(static_cast<std::size_t>(m), 2), rank, rng);
        }
        const DensityMatrix avg = qotp_average(rho);
        return std::make_pair(kind, max_abs_diff(avg.entries(),
                                                 DensityMatrix::maximally_mixed_qubits(m).entries()));
    });
    double worst = 0.0;
    for (std::size_t i = 0; i < states; ++i) {
        r.rows.push_back(ReportRow()
                             .set("state", i)
                             .set("kind", deviations[i].first)
                             .set("max_deviation", deviations[i].second)
                             .set("tolerance", 1e-10));
        worst = std::max(worst, deviations[i].second);
    }
    r.check("qotp average equals I/2^m", worst < 1e-10, "max deviation " + fmt(worst));
}

void run_hiding(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const CommitmentScheme scheme = CommitmentScheme::from_generator(spec);
    const DensityMatrix& rho0 = scheme.hiding_state(0);
    const DensityMatrix& rho1 = scheme.hiding_state(1);
    const DensityMatrix mixed = DensityMatrix::maximally_mixed_qubits(spec.m);

    const double dev1 = max_abs_diff(rho1.entries(), mixed.entries());
    const double dev0 = max_abs_diff(rho0.entries(), ensemble_density(spec).entries());
    const double advantage = trace_distance(rho0, rho1);
    r.rows.push_back(ReportRow().set("quantity", "rho1_vs_maximally_mixed").set("value", dev1).set("tolerance", 1e-10));
    r.rows.push_back(ReportRow().set("quantity", "rho0_vs_ensemble").set("value", dev0).set("tolerance", 1e-10));
    r.rows.push_back(ReportRow().set("quantity", "hiding_advantage_trace_distance").set("value", advantage));
    r.rows.push_back(ReportRow().set("quantity", "single_copy_advantage").set("value", trace_distance(rho0, mixed)));
    r.rows.push_back(ReportRow().set("quantity", "purity_rho0").set("value", purity(rho0)));

    const SwapTestAttack swap = swap_test_attack(spec, c.trials, sub_seed(c.seed, 0));
    const double expected = 0.5 * (1.0 + pow2(-spec.m));
    r.rows.push_back(ReportRow().set("quantity", "swap_test_generator_acceptance").set("value", swap.generator_acceptance));
    r.rows.push_back(ReportRow()
                         .set("quantity", "swap_test_haar_acceptance")
                         .set("value", swap.haar_pair_acceptance)
                         .set("stderr", swap.haar_pair_stderr)
                         .set("expected", expected)
                         .set("formula", "(1+2^-m)/2"));

    r.check("rho1 equals I/2^m", dev1 <= 1e-10, "max deviation " + fmt(dev1));
    r.check("rho0 equals the key ensemble", dev0 <= 1e-10, "max deviation " + fmt(dev0));
    r.check("haar swap-test acceptance within 3 sigma",
            std::abs(swap.haar_pair_acceptance - expected) <= 3.0 * swap.haar_pair_stderr,
            "measured " + fmt(swap.haar_pair_acceptance) + " expected " + fmt(expected));
}

void run_binding(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const BindingBound b = binding_bound(spec);
    r.rows.push_back(ReportRow()
                         .set("F", b.fidelity)
                         .set("bound", b.bound)
                         .set("formula", "2^(n-m)")
                         .set("sum_bound", b.sum_bound)
                         .set("sum_formula", "1+sqrt(F(rho0,rho1))")
                         .set("verdict", b.holds ? "pass" : "fail"));
    r.check("F(rho0,rho1) <= 2^(n-m)", b.holds, "F " + fmt(b.fidelity) + " bound " + fmt(b.bound));
    if (spec.family == Family::BasisEmbed) {
        r.check("orthonormal family meets the bound with equality",
                std::abs(b.fidelity - b.bound) <= 1e-9, "gap " + fmt(b.fidelity - b.bound));
    }
}

void run_uhlmann_sweep(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const CommitmentScheme scheme = CommitmentScheme::from_generator(spec);
    const DensityMatrix& rho0 = scheme.hiding_state(0);
    const DensityMatrix& rho1 = scheme.hiding_state(1);
    const Dims dims(static_cast<std::size_t>(spec.m), 2);
    const std::size_t dim = spec.output_dim();

    std::vector<std::string> names = {"rho0", "rho1", "midpoint", "phi_0"};
    std::vector<DensityMatrix> candidates = {
        rho0, rho1, DensityMatrix::unchecked(0.5 * (rho0.entries() + rho1.entries()), dims),
        PureState::qubits(output_amplitudes(spec, 0)).density()};
    const std::size_t random_count = std::min<std::size_t>(c.trials, 500);
    for (std::size_t i = 0; i < random_count; ++i) {
        Rng rng(derive_seed(c.seed, i));
        const std::size_t rank = 1 + i % dim;
        candidates.push_back(random_density_matrix(dims, rank, rng));
        names.push_back("random-" + std::to_string(i) + "-rank-" + std::to_string(rank));
    }

    const double sum_bound = 1.0 + std::sqrt(fidelity(rho0, rho1));
    const auto attacks = parallel_map<UhlmannAttack>(candidates.size(), [&](std::size_t i) {
        return uhlmann_attack(scheme, AttackSpec{candidates[i], 0});
    });
    bool all_hold = true;
    double worst_gap = 0.0;
    double best_sum = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& a = attacks[i];
        const double sum = a.success[0] + a.success[1];
        const double gap = std::max(std::abs(a.success[0] - a.fidelity[0]),
                                    std::abs(a.success[1] - a.fidelity[1]));
        const bool holds = sum <= sum_bound + 1e-7;
        all_hold = all_hold && holds;
        worst_gap = std::max(worst_gap, gap);
        best_sum = std::max(best_sum, sum);
        r.rows.push_back(ReportRow()
                             .set("candidate", names[i])
                             .set("rank", a.rank)
                             .set("p0", a.success[0])
                             .set("p1", a.success[1])
                             .set("F0", a.fidelity[0])
                             .set("F1", a.fidelity[1])
                             .set("sum", sum)
                             .set("bound", sum_bound)
                             .set("formula", "1+sqrt(F(rho0,rho1))")
                             .set("holds", holds));
    }
    r.check("p0+p1 <= 1+sqrt(F) on every candidate", all_hold,
            "best sum " + fmt(best_sum) + " bound " + fmt(sum_bound));
    r.check("attack success equals F(rho_b, sigma) within 1e-7", worst_gap <= 1e-7,
            "worst gap " + fmt(worst_gap));
    r.check("sigma = rho0 opens 0 with certainty", attacks[0].success[0] >= 1.0 - 1e-7,
            "p0 " + fmt(attacks[0].success[0]));
}

void run_aqy_extract(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const CommitmentScheme scheme = CommitmentScheme::from_generator(spec);
    const DensityMatrix& rho0 = scheme.hiding_state(0);
    const DensityMatrix& rho1 = scheme.hiding_state(1);
    const auto dim = static_cast<Eigen::Index>(spec.output_dim());

    const BinaryMeasurement h0 = helstrom_measurement(rho0, rho1, ZeroEigenspace::ToPi0);
    const BinaryMeasurement h1 = helstrom_measurement(rho0, rho1, ZeroEigenspace::ToPi1);
    const double success = discrimination_success(h0, rho0, rho1);
    const double success_alt = discrimination_success(h1, rho0, rho1);
    const double td = trace_distance(rho0, rho1);
    const double povm_defect =
        max_abs_diff(h0.pi0.entries() + h0.pi1.entries(), CMatrix::Identity(dim, dim));
    const double min_eig = std::min(hermitian_eigenvalues(h0.pi0.entries()).minCoeff(),
                                    hermitian_eigenvalues(h0.pi1.entries()).minCoeff());
    r.rows.push_back(ReportRow()
                         .set("quantity", "extraction_success")
                         .set("value", success)
                         .set("expected", 0.5 + 0.5 * td)
                         .set("formula", "1/2+TD(rho0,rho1)/2")
                         .set("tie_break_alternative", success_alt));
    r.check("Helstrom success equals 1/2 + TD/2", std::abs(success - (0.5 + 0.5 * td)) <= 1e-8,
            "success " + fmt(success) + " TD " + fmt(td));
    r.check("success does not depend on the zero-eigenspace tie-break",
            std::abs(success - success_alt) <= 1e-12, "");
    r.check("extractor is a valid two-outcome measurement",
            povm_defect <= 1e-9 && min_eig >= -1e-9, "completeness defect " + fmt(povm_defect));

    // Exact honest-sender distance: the extractor's measurement disturbs the
    // commitment, so an honest opening of b survives it with probability
    // Tr(Pi_b rho_b)^2.
    const double keep0 = (h0.pi0.entries() * rho0.entries()).trace().real();
    const double keep1 = (h0.pi1.entries() * rho1.entries()).trace().real();
    const double exact = 0.5 * ((1.0 - keep0 * keep0) + (1.0 - keep1 * keep1));

    const RealIdealResult honest =
        real_vs_ideal_experiment(scheme, HonestSender(), c.trials, sub_seed(c.seed, 0));
    const double bound = honest.extraction_failure + 3.0 * honest.distance_stderr;
    r.rows.push_back(ReportRow()
                         .set("quantity", "real_vs_ideal_honest")
                         .set("value", honest.distance)
                         .set("stderr", honest.distance_stderr)
                         .set("extraction_failure", honest.extraction_failure)
                         .set("bound", bound)
                         .set("formula", "extraction_failure+3*stderr")
                         .set("exact_distance", exact)
                         .set("exact_formula", "sum_b (1-Tr(Pi_b rho_b)^2)/2"));
    r.check("honest real-vs-ideal distance <= extraction failure + 3 sigma",
            honest.distance <= bound,
            "distance " + fmt(honest.distance) + " bound " + fmt(bound));
    r.check("honest real-vs-ideal distance matches its exact value within 3 sigma",
            std::abs(honest.distance - exact) <= 3.0 * honest.distance_stderr + 1e-12,
            "distance " + fmt(honest.distance) + " exact " + fmt(exact));

    const RealIdealResult inconsistent =
        real_vs_ideal_experiment(scheme, InconsistentSender(0, 1), c.trials, sub_seed(c.seed, 1));
    const double floor = 1.0 - fidelity(rho1, rho0);
    const double n = static_cast<double>(c.trials);
    const double se_real = std::sqrt(inconsistent.real_reject_rate * (1.0 - inconsistent.real_reject_rate) / n);
    const double se_ideal = std::sqrt(inconsistent.ideal_reject_rate * (1.0 - inconsistent.ideal_reject_rate) / n);
    r.rows.push_back(ReportRow()
                         .set("quantity", "inconsistent_opening_reject_rate")
                         .set("real", inconsistent.real_reject_rate)
                         .set("ideal", inconsistent.ideal_reject_rate)
                         .set("floor", floor)
                         .set("formula", "1-F(rho1,rho0)"));
    r.check("inconsistent opening is rejected at rate >= 1 - F - 3 sigma",
            inconsistent.real_reject_rate >= floor - 3.0 * se_real &&
                inconsistent.ideal_reject_rate >= floor - 3.0 * se_ideal,
            "real " + fmt(inconsistent.real_reject_rate) + " ideal " +
                fmt(inconsistent.ideal_reject_rate) + " floor " + fmt(floor));

    const DensityMatrix midpoint = DensityMatrix::unchecked(
        0.5 * (rho0.entries() + rho1.entries()), rho0.dims());
    const UhlmannSender cheat(scheme, AttackSpec{midpoint, 0});
    const RealIdealResult cheating =
        real_vs_ideal_experiment(scheme, cheat, c.trials, sub_seed(c.seed, 2));
    r.rows.push_back(ReportRow()
                         .set("quantity", "real_vs_ideal_uhlmann_midpoint")
                         .set("value", cheating.distance)
                         .set("stderr", cheating.distance_stderr)
                         .set("real_reject_rate", cheating.real_reject_rate)
                         .set("ideal_reject_rate", cheating.ideal_reject_rate));
}

void run_classical_opening(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const CommitmentScheme scheme = CommitmentScheme::from_generator(spec);

    struct Pair {
        bool same_decision;
        bool same_probability;
    };
    const auto pairs = parallel_map<Pair>(c.trials, [&](std::size_t i) {
        Rng rng(derive_seed(c.seed, i));
        const int b = rng.bit();
        const int claimed = rng.bit();
        const StructuredCommitState& state = scheme.honest_state(b);
        const MaskedCommitment masked = classical_opening_wrap(state, rng);
        const double u = rng.uniform();
        const double plain = honest_reveal_verify(state, claimed, scheme);
        const double wrapped = verify_classical_opening(scheme, masked, claimed);
        return Pair{(u < plain) == (u < wrapped), plain == wrapped};
    });
    const auto agree = std::count_if(pairs.begin(), pairs.end(), [](const Pair& p) { return p.same_decision; });
    const auto exact = std::count_if(pairs.begin(), pairs.end(), [](const Pair& p) { return p.same_probability; });
    r.rows.push_back(ReportRow()
                         .set("quantity", "paired_trials")
                         .set("trials", c.trials)
                         .set("identical_decisions", static_cast<std::int64_t>(agree))
                         .set("identical_probabilities", static_cast<std::int64_t>(exact)));
    r.check("masked and unmasked decisions coincide on every paired trial",
            static_cast<std::size_t>(agree) == c.trials,
            std::to_string(agree) + " of " + std::to_string(c.trials));

    const StructuredCommitState& psi = scheme.honest_state(0);
    const int r_qubits = psi.r_qubits();
    if (r_qubits > 8) {
        r.rows.push_back(ReportRow().set("quantity", "r_marginal_monte_carlo").set("skipped", "R register above 8 qubits"));
        return;
    }
    // (P (x) I)|psi> has R marginal P rho_R P^dagger.
    const DensityMatrix rho_r = psi.r_marginal();
    const std::uint64_t range = std::uint64_t{1} << r_qubits;
    CMatrix mean = CMatrix::Zero(rho_r.entries().rows(), rho_r.entries().cols());
    for (std::size_t i = 0; i < c.trials; ++i) {
        Rng rng(derive_seed(sub_seed(c.seed, 0), i));
        const std::uint64_t x = rng.below(range);
        const std::uint64_t z = rng.below(range);
        mean += conjugate_by_pauli(PauliMask(x, z, r_qubits), rho_r.entries());
    }
    mean /= static_cast<double>(c.trials);
    const double dev = max_abs_diff(mean, DensityMatrix::maximally_mixed_qubits(r_qubits).entries());
    r.rows.push_back(ReportRow()
                         .set("quantity", "r_marginal_monte_carlo")
                         .set("masks", c.trials)
                         .set("max_deviation", dev)
                         .set("tolerance", 0.02));
    r.check("masked R marginal is maximally mixed within 0.02", dev <= 0.02, "max deviation " + fmt(dev));

    if (r_qubits + psi.c_qubits() > 8) {
        return;
    }
    // Exact receiver view before the reveal: average over every R mask.
    double worst = 0.0;
    for (int b = 0; b < 2; ++b) {
        const StructuredCommitState& state = scheme.honest_state(b);
        CMatrix view = CMatrix::Zero(Eigen::Index{1} << (r_qubits + state.c_qubits()),
                                     Eigen::Index{1} << (r_qubits + state.c_qubits()));
        for (std::uint64_t x = 0; x < range; ++x) {
            for (std::uint64_t z = 0; z < range; ++z) {
                const CVector v = mask_r_register(state, PauliMask(x, z, r_qubits)).to_dense().amplitudes();
                view += v * v.adjoint();
            }
        }
        view /= static_cast<double>(range * range);
        const DensityMatrix expected = tensor(DensityMatrix::maximally_mixed_qubits(r_qubits),
                                              scheme.hiding_state(b));
        worst = std::max(worst, max_abs_diff(view, expected.entries()));
    }
    r.rows.push_back(ReportRow()
                         .set("quantity", "receiver_view_exact")
                         .set("masks", range * range)
                         .set("max_deviation", worst)
                         .set("tolerance", 1e-9));
    r.check("receiver view equals I/2^|R| (x) rho_b", worst <= 1e-9, "max deviation " + fmt(worst));
}

void run_interactive_commit(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const int m = spec.m;
    const bool exhaustive = m <= 3;
    std::vector<PauliMask> masks;
    if (exhaustive) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
            for (std::uint64_t z = 0; z < (std::uint64_t{1} << m); ++z) {
                masks.emplace_back(x, z, m);
            }
        }
    } else {
        const std::size_t count = std::min<std::size_t>(c.trials, 256);
        for (std::size_t i = 0; i < count; ++i) {
            Rng rng(derive_seed(c.seed, i));
            const std::uint64_t x = rng.below(spec.output_dim());
            const std::uint64_t z = rng.below(spec.output_dim());
            masks.emplace_back(x, z, m);
        }
    }

    struct MaskResult {
        double fidelity = 0.0;
        double p0 = 0.0;
        double p1 = 0.0;
        CMatrix rho1;
        double dev0 = 0.0;
    };
    const DensityMatrix ensemble = ensemble_density(spec);
    const auto results = parallel_map<MaskResult>(masks.size(), [&](std::size_t i) {
        const CommitmentScheme scheme =
            CommitmentScheme::from_states(interactive_variant_commit(spec, 0, masks[i]),
                                          interactive_variant_commit(spec, 1, masks[i]));
        const UhlmannAttack attack = uhlmann_attack(scheme, AttackSpec{scheme.hiding_state(0), 0});
        return MaskResult{fidelity(scheme.hiding_state(0), scheme.hiding_state(1)),
                          attack.success[0], attack.success[1], scheme.hiding_state(1).entries(),
                          max_abs_diff(scheme.hiding_state(0).entries(), ensemble.entries())};
    });

    bool all_hold = true;
    double mean_bound = 0.0;
    double mean_fidelity = 0.0;
    double worst_dev0 = 0.0;
    CMatrix avg_rho1 = CMatrix::Zero(ensemble.entries().rows(), ensemble.entries().cols());
    for (std::size_t i = 0; i < masks.size(); ++i) {
        const auto& res = results[i];
        const double sum = res.p0 + res.p1;
        const double mask_bound = 1.0 + std::sqrt(res.fidelity);
        const bool holds = sum <= mask_bound + 1e-7;
        all_hold = all_hold && holds;
        mean_bound += mask_bound;
        mean_fidelity += res.fidelity;
        worst_dev0 = std::max(worst_dev0, res.dev0);
        avg_rho1 += res.rho1;
        r.rows.push_back(ReportRow()
                             .set("x", static_cast<std::int64_t>(masks[i].x))
                             .set("z", static_cast<std::int64_t>(masks[i].z))
                             .set("F", res.fidelity)
                             .set("p0", res.p0)
                             .set("p1", res.p1)
                             .set("sum", sum)
                             .set("bound", mask_bound)
                             .set("formula", "1+sqrt(F(rho0,P rho0 P^dagger))")
                             .set("holds", holds));
    }
    const auto count = static_cast<double>(masks.size());
    mean_bound /= count;
    mean_fidelity /= count;
    avg_rho1 /= count;
    const double target = 1.0 + std::sqrt(pow2(spec.n - spec.m));
    const double dev1 = max_abs_diff(avg_rho1, DensityMatrix::maximally_mixed_qubits(m).entries());
    r.rows.push_back(ReportRow()
                         .set("x", "average")
                         .set("masks", masks.size())
                         .set("exhaustive", exhaustive)
                         .set("mean_F", mean_fidelity)
                         .set("mean_sum_bound", mean_bound)
                         .set("bound", target)
                         .set("formula", "1+sqrt(2^(n-m))")
                         .set("avg_rho1_deviation", dev1));

    r.check("per-mask attack respects 1+sqrt(F)", all_hold, "");
    r.check("b=0 marginal equals the key ensemble", worst_dev0 <= 1e-10, "max deviation " + fmt(worst_dev0));
    if (exhaustive) {
        r.check("mask-averaged sum bound <= 1+sqrt(2^(n-m))", mean_bound <= target + 1e-8,
                "mean " + fmt(mean_bound) + " bound " + fmt(target));
        r.check("mask-averaged b=1 marginal equals I/2^m", dev1 <= 1e-10, "max deviation " + fmt(dev1));
    }
}

void run_owsg(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const double exact_random = random_guess_success(spec);
    r.rows.push_back(ReportRow().set("adversary", "random-guess-exact").set("success", exact_random).set("t", c.t));
    const auto names = pick(c.adversary, owsg_adversary_names());
    for (std::size_t j = 0; j < names.size(); ++j) {
        const OwsgResult res =
            owsg_experiment(spec, OwsgExperimentConfig{c.t, c.trials, names[j], sub_seed(c.seed, j)});
        r.rows.push_back(ReportRow()
                             .set("adversary", names[j])
                             .set("success", res.success.mean)
                             .set("stderr", res.success.std_error)
                             .set("t", c.t));
        const std::string detail = "success " + fmt(res.success.mean);
        if (names[j] == "oracle") {
            r.check("oracle adversary succeeds", std::abs(res.success.mean - 1.0) <= 1e-12, detail);
        } else if (names[j] == "never") {
            r.check("abstaining adversary scores 0", res.success.mean == 0.0, detail);
        } else if (names[j] == "random-guess") {
            r.check("random guessing matches its exact value within 3 sigma",
                    std::abs(res.success.mean - exact_random) <= 3.0 * res.success.std_error + 1e-12,
                    detail + " exact " + fmt(exact_random));
        } else if (names[j] == "basis-measure" && spec.family == Family::BasisEmbed && c.t >= 1) {
            r.check("basis measurement inverts basis-embed", std::abs(res.success.mean - 1.0) <= 1e-12, detail);
        }
    }
}

void run_haar_bound(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const double baseline = haar_baseline(spec);
    const double bound = pow2(spec.n - spec.m);
    r.rows.push_back(ReportRow()
                         .set("adversary", "haar-baseline")
                         .set("success", baseline)
                         .set("bound", bound)
                         .set("formula", "2^(n-m)"));
    r.check("haar baseline equals 2^(n-m)", std::abs(baseline - bound) <= 1e-10,
            "baseline " + fmt(baseline));
    const auto names = pick(c.adversary, owsg_adversary_names());
    for (std::size_t j = 0; j < names.size(); ++j) {
        const OwsgResult res = haar_challenge_experiment(
            spec, OwsgExperimentConfig{c.t, c.trials, names[j], sub_seed(c.seed, j)});
        const bool holds = res.success.mean <= bound + 3.0 * res.success.std_error;
        r.rows.push_back(ReportRow()
                             .set("adversary", names[j])
                             .set("success", res.success.mean)
                             .set("stderr", res.success.std_error)
                             .set("bound", bound)
                             .set("formula", "2^(n-m)")
                             .set("t", c.t)
                             .set("holds", holds));
        r.check(names[j] + " on Haar challenges stays below 2^(n-m) + 3 sigma", holds,
                "success " + fmt(res.success.mean));
        if (names[j] == "fixed-guess") {
            const double expected = pow2(-spec.m);
            r.check("fixed guess on Haar challenges averages 2^-m within 3 sigma",
                    std::abs(res.success.mean - expected) <= 3.0 * res.success.std_error,
                    "success " + fmt(res.success.mean) + " expected " + fmt(expected));
        }
    }
}

void run_sign_correctness(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    struct Outcome {
        double worst;
        bool sampled_ok;
        double wrong;
    };
    const auto outcomes = parallel_map<Outcome>(c.trials, [&](std::size_t i) {
        Rng rng(derive_seed(c.seed, i));
        const SignatureKeys keys = keygen(spec, rng);
        Outcome o{0.0, true, 0.0};
        for (int msg = 0; msg < 2; ++msg) {
            const Key sigma = sign(keys, msg);
            const GeneratorOutput pk = keys.public_key(spec, msg);
            o.worst = std::max(o.worst, std::abs(verify(spec, pk, msg, sigma) - 1.0));
            o.sampled_ok = o.sampled_ok && verify_sampled(spec, pk, msg, sigma, rng);
            const Key wrong((sigma.bits() + 1) % spec.key_count(), spec.n);
            o.wrong = std::max(o.wrong, verify(spec, pk, msg, wrong));
        }
        return o;
    });
    double worst = 0.0;
    double wrong = 0.0;
    bool sampled = true;
    for (const auto& o : outcomes) {
        worst = std::max(worst, o.worst);
        wrong = std::max(wrong, o.wrong);
        sampled = sampled && o.sampled_ok;
    }
    r.rows.push_back(ReportRow()
                         .set("key_pairs", c.trials)
                         .set("max_deviation_from_1", worst)
                         .set("sampled_mode_all_accept", sampled)
                         .set("max_wrong_key_acceptance", wrong));
    r.check("honest signatures verify with probability 1", worst <= 1e-12, "max deviation " + fmt(worst));
    r.check("sampled verification accepts honest signatures", sampled, "");
    if (spec.family == Family::BasisEmbed) {
        r.check("wrong keys are rejected for an orthonormal family", wrong <= 1e-12, "max " + fmt(wrong));
    }
}

void run_sign_onetime(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const auto names = pick(c.adversary, forgery_adversary_names());
    const double reference = pow2(spec.n - spec.m);
    for (std::size_t j = 0; j < names.size(); ++j) {
        const GameResult g = one_time_security_game(spec, names[j], c.trials, sub_seed(c.seed, j));
        r.rows.push_back(ReportRow()
                             .set("adversary", names[j])
                             .set("forgery_rate", g.forgery.mean)
                             .set("stderr", g.forgery.std_error)
                             .set("copies_per_slot", g.copies_per_slot)
                             .set("key_collision", g.key_collision)
                             .set("reference", reference)
                             .set("formula", "2^(n-m)"));
        const std::string detail = "rate " + fmt(g.forgery.mean);
        if (names[j] == "oracle") {
            r.check("oracle forger always succeeds", std::abs(g.forgery.mean - 1.0) <= 1e-12, detail);
        } else if (names[j] == "never") {
            r.check("abstaining forger never succeeds", g.forgery.mean == 0.0, detail);
        } else if (spec.family == Family::BasisEmbed && names[j] == "basis-measure") {
            r.check("basis measurement forges against basis-embed",
                    std::abs(g.forgery.mean - 1.0) <= 1e-12, detail);
        } else if (spec.family == Family::BasisEmbed && names[j] == "replay") {
            const double p = g.key_collision;
            const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(c.trials));
            r.check("replayed signature succeeds only on key collisions",
                    std::abs(g.forgery.mean - p) <= 3.0 * se, detail + " collision " + fmt(p));
        }
    }
}

void run_sign_reduction(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const auto names = pick(c.adversary, forgery_adversary_names());
    for (std::size_t j = 0; j < names.size(); ++j) {
        const ReductionResult red = reduction_experiment(spec, names[j], c.trials, sub_seed(c.seed, j));
        r.rows.push_back(ReportRow()
                             .set("adversary", names[j])
                             .set("lhs", red.lhs)
                             .set("rhs", red.rhs)
                             .set("formula", "Pr[C'->1] = Pr[Exp=1]/2")
                             .set("combined_stderr", red.combined_stderr)
                             .set("abort_rate", red.abort_rate)
                             .set("game_rate", red.game.mean)
                             .set("within_3sigma", red.within_3sigma));
        r.check(names[j] + ": |Pr[C'->1] - Pr[Exp=1]/2| <= 3 sigma", red.within_3sigma,
                "lhs " + fmt(red.lhs) + " rhs " + fmt(red.rhs));
        if (spec.family == Family::BasisEmbed && names[j] == "basis-measure") {
            r.check("basis-measure: Pr[Exp=1] = 1 and Pr[C'->1] = 1/2 within 3 sigma",
                    std::abs(red.game.mean - 1.0) <= 1e-12 &&
                        std::abs(red.lhs - 0.5) <= 3.0 * red.wrapped.std_error,
                    "game " + fmt(red.game.mean) + " lhs " + fmt(red.lhs));
        }
    }
}

void run_sdcid(const ExperimentConfig& c, ExperimentReport& r) {
    const GeneratorSpec spec = c.generator_spec();
    const SdcidOutput out0 = sdcid_from_prs(spec, 0);
    const SdcidOutput out1 = sdcid_from_prs(spec, 1);
    const double threshold = c.threshold.value_or(0.1);
    const SdcidVerdict v = sdcid_check(out0, out1, threshold);
    const PurityLemmaRecord lemma = purity_lemma_check(out0, out1);
    const double bound = pow2(spec.n - spec.m);
    const double dev1 = max_abs_diff(out1.reduced().entries(),
                                     DensityMatrix::maximally_mixed_qubits(spec.m).entries());
    const double dev0 = max_abs_diff(out0.reduced().entries(), ensemble_density(spec).entries());
    r.rows.push_back(ReportRow()
                         .set("F", v.fidelity)
                         .set("bound", bound)
                         .set("formula", "2^(n-m)")
                         .set("trace_distance", v.trace_distance)
                         .set("purity0", lemma.purity0)
                         .set("purity1", lemma.purity1)
                         .set("overlap", lemma.overlap)
                         .set("threshold", threshold)
                         .set("fidelity_below_threshold", v.fidelity_below_threshold));
    r.check("F(rho0,rho1) <= 2^(n-m)", v.fidelity <= bound + 1e-8, "F " + fmt(v.fidelity));
    if (spec.family == Family::BasisEmbed) {
        r.check("orthonormal family meets the bound with equality",
                std::abs(v.fidelity - bound) <= 1e-8, "gap " + fmt(v.fidelity - bound));
    }
    r.check("fidelity below threshold", v.fidelity_below_threshold,
            "F " + fmt(v.fidelity) + " threshold " + fmt(threshold));
    r.check("branch 1 marginal equals I/2^m", dev1 <= 1e-10, "max deviation " + fmt(dev1));
    r.check("branch 0 marginal equals the key ensemble", dev0 <= 1e-10, "max deviation " + fmt(dev0));
    r.check("Tr(rho0 rho1) <= F", lemma.overlap_below_fidelity, "");
    r.check("|Tr(rho0^2) - Tr(rho0 rho1)| <= 2 TD", lemma.swap_gap_below_distance, "");
}

void run_sym_moment(const ExperimentConfig& c, ExperimentReport& r) {
    const std::size_t d = std::size_t{1} << c.m;
    if (c.t < 1 || c.t > 4) {
        throw CapExceededError("sym-moment: t must be in [1, 4]");
    }
    const int copies = static_cast<int>(c.t);
    const CMatrix projector = symmetric_projector(d, copies);
    const DensityMatrix moment = sym_moment(d, copies);
    const double binom = binomial(d + c.t - 1, c.t);
    const double trace = projector.trace().real();
    const double idempotence = max_abs_diff(projector * projector, projector);
    const double fixed_overlap = moment.entries()(0, 0).real();
    r.rows.push_back(ReportRow()
                         .set("d", d)
                         .set("T", c.t)
                         .set("trace_projector", trace)
                         .set("binomial", binom)
                         .set("formula", "binom(d+T-1,T)")
                         .set("idempotence_deviation", idempotence)
                         .set("fixed_state_overlap", fixed_overlap)
                         .set("fixed_state_formula", "1/binom(d+T-1,T)"));
    r.check("Tr(Pi_sym) = binom(d+T-1,T)", trace == binom, "trace " + fmt(trace));
    r.check("Pi_sym is idempotent", idempotence <= 1e-9, "deviation " + fmt(idempotence));
    r.check("<0|^T moment |0>^T = 1/binom(d+T-1,T)", std::abs(fixed_overlap - 1.0 / binom) <= 1e-12, "");

    std::size_t total = 1;
    for (std::size_t i = 0; i < c.t; ++i) total *= d;
    if (total > 64 || c.trials < 2) {
        return;
    }
    const MomentEstimate mc = haar_moment_estimate(d, copies, c.trials, c.seed);
    std::size_t outside = 0;
    double worst_z = 0.0;
    const CMatrix& exact = moment.entries();
    for (Eigen::Index i = 0; i < exact.rows(); ++i) {
        for (Eigen::Index j = 0; j < exact.cols(); ++j) {
            const double dr = std::abs(mc.mean(i, j).real() - exact(i, j).real());
            const double di = std::abs(mc.mean(i, j).imag() - exact(i, j).imag());
            const double sr = mc.std_error_real(i, j);
            const double si = mc.std_error_imag(i, j);
            const bool ok_r = sr > 0.0 ? dr <= 3.0 * sr : dr <= 1e-12;
            const bool ok_i = si > 0.0 ? di <= 3.0 * si : di <= 1e-12;
            outside += (ok_r ? 0 : 1) + (ok_i ? 0 : 1);
            if (sr > 0.0) worst_z = std::max(worst_z, dr / sr);
            if (si > 0.0) worst_z = std::max(worst_z, di / si);
        }
    }
    const double dev = max_abs_diff(mc.mean, exact);
    r.rows.push_back(ReportRow()
                         .set("d", d)
                         .set("T", c.t)
                         .set("samples", c.trials)
                         .set("max_deviation", dev)
                         .set("max_z", worst_z)
                         .set("components_outside_3sigma", outside));
    r.check("Monte-Carlo moment within 3 standard errors entrywise", outside == 0,
            std::to_string(outside) + " components outside, max z " + fmt(worst_z));
}

const std::map<std::string, Runner>& registry() {
    static const std::map<std::string, Runner> runners = {
        {"qotp-check", run_qotp_check},
        {"hiding", run_hiding},
        {"binding", run_binding},
        {"uhlmann-sweep", run_uhlmann_sweep},
        {"aqy-extract", run_aqy_extract},
        {"classical-opening", run_classical_opening},
        {"interactive-commit", run_interactive_commit},
        {"owsg", run_owsg},
        {"haar-bound", run_haar_bound},
        {"sign-correctness", run_sign_correctness},
        {"sign-onetime", run_sign_onetime},
        {"sign-reduction", run_sign_reduction},
        {"sdcid", run_sdcid},
        {"sym-moment", run_sym_moment},
    };
    return runners;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "qotp-check",  "hiding",      "binding",          "uhlmann-sweep",    "aqy-extract",
        "classical-opening", "interactive-commit", "owsg", "haar-bound", "sign-correctness",
        "sign-onetime", "sign-reduction", "sdcid", "sym-moment"};
    return names;
}

bool is_experiment(std::string_view name) {
    return registry().count(std::string(name)) > 0;
}

bool requires_expanding_generator(std::string_view name) {
    static const std::vector<std::string_view> expanding = {
        "hiding", "binding", "uhlmann-sweep", "aqy-extract", "classical-opening",
        "interactive-commit", "sdcid"};
    return std::find(expanding.begin(), expanding.end(), name) != expanding.end();
}

std::string_view version() { return QCL_VERSION; }

std::uint64_t sub_seed(std::uint64_t base, std::uint64_t index) {
    return derive_seed(base, (std::uint64_t{1} << 32) + index);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    const auto it = registry().find(config.experiment);
    if (it == registry().end()) {
        std::string known;
        for (const auto& name : experiment_names()) {
            known += (known.empty() ? "" : ", ") + name;
        }
        throw UnknownExperimentError("unknown experiment '" + config.experiment +
                                     "' (known: " + known + ")");
    }
    if (requires_expanding_generator(config.experiment) && config.m <= config.n) {
        throw ConfigError("experiment '" + config.experiment + "' needs m > n");
    }
    ExperimentReport report;
    report.config = config;
    report.version = std::string(version());
    std::ostringstream provenance;
    provenance << "base seed " << config.seed
               << "; task i draws from mix64(seed + (i+1)*0x9E3779B97F4A7C15) with the splitmix64 "
                  "finalizer; sub-run j of an experiment uses derive_seed(seed, 2^32 + j) as its base";
    report.seed_provenance = provenance.str();

    const auto start = std::chrono::steady_clock::now();
    it->second(config, report);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace qcl
