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

#include "qcl/commitment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <utility>

#include "qcl/errors.hpp"
#include "qcl/parallel.hpp"

namespace qcl {

namespace {

constexpr std::uint64_t kMaxStoredAmplitudes = std::uint64_t{1} << 24;
constexpr double kRankCutoff = 1e-13;

double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

Dims qubit_dims(int count) { return Dims(static_cast<std::size_t>(count), 2); }

void require_bit(int bit, const char* what) {
    if (bit != 0 && bit != 1) {
        throw DimensionError(std::string(what) + ": bit must be 0 or 1");
    }
}

void require_same_registers(const StructuredCommitState& a, const StructuredCommitState& b) {
    if (a.r_qubits() != b.r_qubits() || a.c_qubits() != b.c_qubits()) {
        throw DimensionError("commitment states live on different registers");
    }
}

// Columns a_l c_l, so that M M^dagger = Tr_R |psi><psi|.
CMatrix weighted_columns(const StructuredCommitState& state) {
    const auto& entries = state.entries();
    CMatrix columns(Eigen::Index{1} << state.c_qubits(), static_cast<Eigen::Index>(entries.size()));
    for (std::size_t l = 0; l < entries.size(); ++l) {
        columns.col(static_cast<Eigen::Index>(l)) = entries[l].amplitude * entries[l].c_state;
    }
    return columns;
}

void check_commit_caps(const GeneratorSpec& spec) {
    spec.require_expanding();
    if (spec.m > 8 || spec.n > 6) {
        throw CapExceededError("commitment: structured form is capped at m <= 8, n <= 6");
    }
}

// Relabels entries and restores canonical label order.
StructuredCommitState relabel(const StructuredCommitState& state, const PauliMask& mask,
                              bool adjoint) {
    if (mask.num_qubits != state.r_qubits()) {
        throw DimensionError("R mask size does not match the R register");
    }
    std::vector<CommitEntry> out;
    out.reserve(state.entries().size());
    for (const auto& entry : state.entries()) {
        const std::uint64_t target = entry.r_label ^ mask.x;
        // X^x Z^z |l> = (-1)^{l.z} |l ^ x>;  Z^z X^x |l> = (-1)^{(l ^ x).z} |l ^ x>.
        const double sign = parity_sign((adjoint ? target : entry.r_label) & mask.z);
        out.push_back(CommitEntry{target, sign * entry.amplitude, entry.c_state});
    }
    std::sort(out.begin(), out.end(),
              [](const CommitEntry& a, const CommitEntry& b) { return a.r_label < b.r_label; });
    return StructuredCommitState(state.r_qubits(), state.c_qubits(), std::move(out));
}

}  // namespace

// ---------------------------------------------------------------------------
// StructuredCommitState

StructuredCommitState::StructuredCommitState(int r_qubits, int c_qubits,
                                             std::vector<CommitEntry> entries)
    : r_qubits_(r_qubits), c_qubits_(c_qubits), entries_(std::move(entries)) {
    if (r_qubits < 1 || r_qubits > 62 || c_qubits < 1 || c_qubits > 20) {
        throw DimensionError("StructuredCommitState: register sizes out of range");
    }
    const auto c_dim = Eigen::Index{1} << c_qubits;
    const std::uint64_t r_dim = std::uint64_t{1} << r_qubits;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].r_label >= r_dim) {
            throw DimensionError("StructuredCommitState: R label out of range");
        }
        if (i > 0 && entries_[i].r_label <= entries_[i - 1].r_label) {
            throw DimensionError("StructuredCommitState: R labels must be strictly increasing");
        }
        if (entries_[i].c_state.size() != c_dim) {
            throw DimensionError("StructuredCommitState: C vector has the wrong length");
        }
    }
    if (std::abs(norm_squared() - 1.0) > tol::kNorm) {
        throw DimensionError("StructuredCommitState: state is not normalised");
    }
}

double StructuredCommitState::norm_squared() const {
    double total = 0.0;
    for (const auto& e : entries_) {
        total += std::norm(e.amplitude) * e.c_state.squaredNorm();
    }
    return total;
}

Complex StructuredCommitState::inner_product(const StructuredCommitState& other) const {
    require_same_registers(*this, other);
    Complex total = 0.0;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
        if (a->r_label < b->r_label) {
            ++a;
        } else if (b->r_label < a->r_label) {
            ++b;
        } else {
            total += std::conj(a->amplitude) * b->amplitude * a->c_state.dot(b->c_state);
            ++a;
            ++b;
        }
    }
    return total;
}

Complex StructuredCommitState::inner_product(const StructuredCommitState& other,
                                             const CMatrix& c_operator) const {
    require_same_registers(*this, other);
    const auto c_dim = Eigen::Index{1} << c_qubits_;
    if (c_operator.rows() != c_dim || c_operator.cols() != c_dim) {
        throw DimensionError("inner_product: operator does not act on C");
    }
    Complex total = 0.0;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
        if (a->r_label < b->r_label) {
            ++a;
        } else if (b->r_label < a->r_label) {
            ++b;
        } else {
            total += std::conj(a->amplitude) * b->amplitude *
                     a->c_state.dot(c_operator * b->c_state);
            ++a;
            ++b;
        }
    }
    return total;
}

DensityMatrix StructuredCommitState::c_marginal() const {
    const CMatrix columns = weighted_columns(*this);
    CMatrix rho = columns * columns.adjoint();
    return DensityMatrix::unchecked(std::move(rho), qubit_dims(c_qubits_));
}

DensityMatrix StructuredCommitState::r_marginal() const {
    if (r_qubits_ > 12) {
        throw CapExceededError("r_marginal: capped at 12 R qubits");
    }
    const auto r_dim = Eigen::Index{1} << r_qubits_;
    CMatrix rho = CMatrix::Zero(r_dim, r_dim);
    for (const auto& a : entries_) {
        for (const auto& b : entries_) {
            rho(static_cast<Eigen::Index>(a.r_label), static_cast<Eigen::Index>(b.r_label)) =
                a.amplitude * std::conj(b.amplitude) * b.c_state.dot(a.c_state);
        }
    }
    return DensityMatrix::unchecked(std::move(rho), qubit_dims(r_qubits_));
}

PureState StructuredCommitState::to_dense() const {
    if (r_qubits_ + c_qubits_ > 14) {
        throw CapExceededError("to_dense: more than 2^14 amplitudes");
    }
    const auto c_dim = Eigen::Index{1} << c_qubits_;
    CVector dense = CVector::Zero(Eigen::Index{1} << (r_qubits_ + c_qubits_));
    for (const auto& e : entries_) {
        dense.segment(static_cast<Eigen::Index>(e.r_label) * c_dim, c_dim) = e.amplitude * e.c_state;
    }
    return PureState(std::move(dense), qubit_dims(r_qubits_ + c_qubits_));
}

// ---------------------------------------------------------------------------
// Construction

StructuredCommitState build_commit_state(const GeneratorSpec& spec, int bit) {
    check_commit_caps(spec);
    require_bit(bit, "build_commit_state");
    const int m = spec.m;
    const int n = spec.n;
    const int r_qubits = 2 * m + n + spec.ancilla_qubits();
    const std::uint64_t labels = std::uint64_t{1} << r_qubits;
    if (labels * spec.output_dim() > kMaxStoredAmplitudes) {
        throw CapExceededError("build_commit_state: more than 2^24 stored amplitudes");
    }

    const std::uint64_t masks = std::uint64_t{1} << m;
    const std::uint64_t keys = spec.key_count();
    std::vector<CVector> outputs(keys);
    std::vector<CVector> ancillas(keys);
    for (std::uint64_t k = 0; k < keys; ++k) {
        outputs[k] = output_amplitudes(spec, k);
        ancillas[k] = ancilla_amplitudes(spec, k);
    }

    const double amplitude = std::pow(2.0, -0.5 * static_cast<double>(2 * m + n));
    std::vector<CommitEntry> entries;
    entries.reserve(labels);
    for (std::uint64_t x = 0; x < masks; ++x) {
        for (std::uint64_t z = 0; z < masks; ++z) {
            const PauliMask mask(x, z, m);
            for (std::uint64_t k = 0; k < keys; ++k) {
                const std::uint64_t base = (x << (m + n)) | (z << n) | k;
                CVector c_state = bit == 0 ? outputs[k] : apply_pauli_vector(mask, outputs[k]);
                if (!spec.ancilla) {
                    entries.push_back(CommitEntry{base, amplitude, std::move(c_state)});
                    continue;
                }
                for (std::uint64_t a = 0; a < 2; ++a) {
                    const Complex eta = ancillas[k][static_cast<Eigen::Index>(a)];
                    if (eta == 0.0) {
                        continue;
                    }
                    entries.push_back(CommitEntry{(base << 1) | a, amplitude * eta, c_state});
                }
            }
        }
    }
    return StructuredCommitState(r_qubits, m, std::move(entries));
}

CommitmentScheme::CommitmentScheme(std::array<StructuredCommitState, 2> states,
                                   std::optional<GeneratorSpec> spec)
    : states_(std::move(states)),
      hiding_{states_[0].c_marginal(), states_[1].c_marginal()},
      spec_(std::move(spec)) {
    require_same_registers(states_[0], states_[1]);
}

CommitmentScheme CommitmentScheme::from_generator(const GeneratorSpec& spec) {
    return CommitmentScheme({build_commit_state(spec, 0), build_commit_state(spec, 1)}, spec);
}

CommitmentScheme CommitmentScheme::from_states(StructuredCommitState psi0,
                                               StructuredCommitState psi1) {
    return CommitmentScheme({std::move(psi0), std::move(psi1)}, std::nullopt);
}

const StructuredCommitState& CommitmentScheme::honest_state(int bit) const {
    require_bit(bit, "honest_state");
    return states_[static_cast<std::size_t>(bit)];
}

const DensityMatrix& CommitmentScheme::hiding_state(int bit) const {
    require_bit(bit, "hiding_state");
    return hiding_[static_cast<std::size_t>(bit)];
}

HidingStates hiding_states(const GeneratorSpec& spec) {
    check_commit_caps(spec);
    return HidingStates{build_commit_state(spec, 0).c_marginal(),
                        build_commit_state(spec, 1).c_marginal()};
}

double honest_reveal_verify(const StructuredCommitState& state, int claimed_bit,
                            const GeneratorSpec& spec) {
    return std::norm(build_commit_state(spec, claimed_bit).inner_product(state));
}

double honest_reveal_verify(const StructuredCommitState& state, int claimed_bit,
                            const CommitmentScheme& scheme) {
    return std::norm(scheme.honest_state(claimed_bit).inner_product(state));
}

BindingBound binding_bound(const GeneratorSpec& spec) {
    const HidingStates hs = hiding_states(spec);
    BindingBound out;
    out.fidelity = fidelity(hs.rho0, hs.rho1);
    out.bound = std::pow(2.0, spec.n - spec.m);
    out.sum_bound = 1.0 + std::sqrt(out.fidelity);
    out.holds = out.fidelity <= out.bound + 1e-8;
    return out;
}

// ---------------------------------------------------------------------------
// Cheating sender

UhlmannAttack uhlmann_attack(const CommitmentScheme& scheme, const AttackSpec& attack) {
    const auto c_dim = Eigen::Index{1} << scheme.c_qubits();
    if (attack.target.entries().rows() != c_dim) {
        throw DimensionError("uhlmann_attack: target does not act on C");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(attack.target.entries());
    const RVector& values = solver.eigenvalues();
    if (values.minCoeff() < -tol::kNotPsd) {
        throw NotPsdError("uhlmann_attack: target is not positive semidefinite");
    }

    // Purification |Psi> = sum_i sqrt(s_i) |i>_E |e_i>_C over the nonzero spectrum.
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values[i] > kRankCutoff) {
            support.push_back(i);
        }
    }
    const auto rank = static_cast<Eigen::Index>(support.size());
    const std::size_t cap =
        attack.environment_cap == 0 ? static_cast<std::size_t>(c_dim) : attack.environment_cap;
    if (static_cast<std::size_t>(rank) > cap) {
        throw CapExceededError("uhlmann_attack: target rank exceeds the environment cap");
    }
    CMatrix weighted(c_dim, rank);  // columns sqrt(s_i) e_i
    for (Eigen::Index j = 0; j < rank; ++j) {
        weighted.col(j) = std::sqrt(values[support[static_cast<std::size_t>(j)]]) *
                          solver.eigenvectors().col(support[static_cast<std::size_t>(j)]);
    }

    UhlmannAttack out;
    out.rank = static_cast<std::size_t>(rank);
    for (int b = 0; b < 2; ++b) {
        const StructuredCommitState& honest = scheme.honest_state(b);
        const auto labels = static_cast<Eigen::Index>(honest.entries().size());
        if (labels < rank) {
            throw CapExceededError("uhlmann_attack: target rank exceeds the number of R labels");
        }
        const CMatrix gram = weighted_columns(honest).adjoint() * weighted;  // labels x rank
        Eigen::BDCSVD<CMatrix> svd(gram, Eigen::ComputeThinU | Eigen::ComputeThinV);
        CMatrix isometry = svd.matrixU().conjugate() * svd.matrixV().transpose();

        const CMatrix opened_c = weighted * isometry.transpose();  // C x labels
        std::vector<CommitEntry> entries;
        entries.reserve(honest.entries().size());
        for (Eigen::Index l = 0; l < labels; ++l) {
            entries.push_back(CommitEntry{honest.entries()[static_cast<std::size_t>(l)].r_label,
                                          1.0, opened_c.col(l)});
        }
        StructuredCommitState opened(honest.r_qubits(), honest.c_qubits(), std::move(entries));
        out.success[static_cast<std::size_t>(b)] = std::norm(honest.inner_product(opened));
        out.fidelity[static_cast<std::size_t>(b)] = fidelity(scheme.hiding_state(b), attack.target);
        out.isometry[static_cast<std::size_t>(b)] = std::move(isometry);
        out.opened.push_back(std::move(opened));
    }
    return out;
}

UhlmannAttack uhlmann_attack(const GeneratorSpec& spec, const AttackSpec& attack) {
    return uhlmann_attack(CommitmentScheme::from_generator(spec), attack);
}

std::vector<SweepRow> sum_binding_sweep(const CommitmentScheme& scheme,
                                        std::span<const DensityMatrix> candidates) {
    const double bound =
        1.0 + std::sqrt(fidelity(scheme.hiding_state(0), scheme.hiding_state(1)));
    return parallel_map<SweepRow>(candidates.size(), [&](std::size_t i) {
        const UhlmannAttack attack = uhlmann_attack(scheme, AttackSpec{candidates[i], 0});
        SweepRow row;
        row.p0 = attack.success[0];
        row.p1 = attack.success[1];
        row.sum = row.p0 + row.p1;
        row.bound = bound;
        row.holds = row.sum <= bound + 1e-7;
        return row;
    });
}

// ---------------------------------------------------------------------------
// Extraction

BinaryMeasurement helstrom_measurement(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                       ZeroEigenspace tie_break) {
    if (rho0.dim() != rho1.dim()) {
        throw DimensionError("helstrom_measurement: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho0.entries() - rho1.entries());
    const auto dim = static_cast<Eigen::Index>(rho0.dim());
    CMatrix pi0 = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double lambda = solver.eigenvalues()[i];
        const bool zero = std::abs(lambda) <= 1e-12;
        const bool to_pi0 = zero ? tie_break == ZeroEigenspace::ToPi0 : lambda > 0.0;
        if (to_pi0) {
            const CVector v = solver.eigenvectors().col(i);
            pi0 += v * v.adjoint();
        }
    }
    CMatrix pi1 = CMatrix::Identity(dim, dim) - pi0;
    return BinaryMeasurement{HermitianObservable(0.5 * (pi0 + pi0.adjoint())),
                             HermitianObservable(0.5 * (pi1 + pi1.adjoint()))};
}

BinaryMeasurement helstrom_extractor(const GeneratorSpec& spec) {
    const HidingStates hs = hiding_states(spec);
    return helstrom_measurement(hs.rho0, hs.rho1);
}

double discrimination_success(const BinaryMeasurement& measurement, const DensityMatrix& rho0,
                              const DensityMatrix& rho1) {
    return 0.5 * ((measurement.pi0.entries() * rho0.entries()).trace().real() +
                  (measurement.pi1.entries() * rho1.entries()).trace().real());
}

SenderRound HonestSender::play(const CommitmentScheme& scheme, Rng& rng) const {
    const int b = fixed_bit_ ? *fixed_bit_ : rng.bit();
    return SenderRound{b, b, scheme.honest_state(b)};
}

SenderRound InconsistentSender::play(const CommitmentScheme& scheme, Rng&) const {
    return SenderRound{commit_bit_, open_bit_, scheme.honest_state(commit_bit_)};
}

UhlmannSender::UhlmannSender(const CommitmentScheme& scheme, const AttackSpec& attack)
    : attack_(uhlmann_attack(scheme, attack)) {}

SenderRound UhlmannSender::play(const CommitmentScheme&, Rng& rng) const {
    const int b = rng.bit();
    return SenderRound{b, b, attack_.opened[static_cast<std::size_t>(b)]};
}

RealIdealResult real_vs_ideal_experiment(const CommitmentScheme& scheme,
                                         const SenderStrategy& sender, std::size_t trials,
                                         std::uint64_t base_seed) {
    if (trials < 1) {
        throw ConfigError("real_vs_ideal_experiment: at least one trial is required");
    }
    const BinaryMeasurement extractor =
        helstrom_measurement(scheme.hiding_state(0), scheme.hiding_state(1));

    // Outcome 2 stands for a rejected opening.
    struct Record {
        int summary;
        int real;
        int ideal;
    };
    const auto records = parallel_map<Record>(trials, [&](std::size_t i) {
        Rng rng(derive_seed(base_seed, i));
        const SenderRound round = sender.play(scheme, rng);
        const StructuredCommitState& honest = scheme.honest_state(round.reveal_bit);

        const double accept = std::norm(honest.inner_product(round.reveal_state));
        const int real = rng.uniform() < accept ? round.reveal_bit : 2;

        // Joint probability that the extractor says b' and the receiver then accepts.
        const double consistent = std::norm(honest.inner_product(
            round.reveal_state,
            (round.reveal_bit == 0 ? extractor.pi0 : extractor.pi1).entries()));
        const int ideal = rng.uniform() < consistent ? round.reveal_bit : 2;
        return Record{round.summary, real, ideal};
    });

    std::map<std::pair<int, int>, std::array<double, 2>> counts;
    double real_reject = 0.0;
    double ideal_reject = 0.0;
    for (const auto& r : records) {
        counts[{r.summary, r.real}][0] += 1.0;
        counts[{r.summary, r.ideal}][1] += 1.0;
        real_reject += r.real == 2 ? 1.0 : 0.0;
        ideal_reject += r.ideal == 2 ? 1.0 : 0.0;
    }
    const double total = static_cast<double>(trials);
    RealIdealResult out;
    out.trials = trials;
    for (const auto& [cell, c] : counts) {
        const double p = c[0] / total;
        const double q = c[1] / total;
        out.distance += 0.5 * std::abs(p - q);
        out.distance_stderr += 0.5 * std::sqrt((p * (1.0 - p) + q * (1.0 - q)) / total);
    }
    out.real_reject_rate = real_reject / total;
    out.ideal_reject_rate = ideal_reject / total;
    out.extraction_failure =
        1.0 - discrimination_success(extractor, scheme.hiding_state(0), scheme.hiding_state(1));
    return out;
}

// ---------------------------------------------------------------------------
// Classical opening

StructuredCommitState mask_r_register(const StructuredCommitState& state, const PauliMask& mask) {
    return relabel(state, mask, false);
}

StructuredCommitState unmask_r_register(const StructuredCommitState& state,
                                        const PauliMask& mask) {
    return relabel(state, mask, true);
}

MaskedCommitment classical_opening_wrap(const StructuredCommitState& state, Rng& rng) {
    const int r = state.r_qubits();
    const std::uint64_t range = std::uint64_t{1} << r;
    const std::uint64_t x = rng.below(range);
    const std::uint64_t z = rng.below(range);
    PauliMask mask(x, z, r);
    return MaskedCommitment{mask_r_register(state, mask), mask};
}

double verify_classical_opening(const CommitmentScheme& scheme,
                                const MaskedCommitment& commitment, int claimed_bit) {
    return honest_reveal_verify(unmask_r_register(commitment.masked, commitment.opening),
                                claimed_bit, scheme);
}

StructuredCommitState interactive_variant_commit(const GeneratorSpec& spec, int bit,
                                                 const PauliMask& receiver_mask) {
    check_commit_caps(spec);
    require_bit(bit, "interactive_variant_commit");
    if (receiver_mask.num_qubits != spec.m) {
        throw DimensionError("interactive_variant_commit: mask must act on m qubits");
    }
    const double amplitude = std::pow(2.0, -0.5 * static_cast<double>(spec.n));
    std::vector<CommitEntry> entries;
    for (std::uint64_t k = 0; k < spec.key_count(); ++k) {
        const CVector phi = output_amplitudes(spec, k);
        CVector c_state = bit == 0 ? phi : apply_pauli_vector(receiver_mask, phi);
        if (!spec.ancilla) {
            entries.push_back(CommitEntry{k, amplitude, std::move(c_state)});
            continue;
        }
        const CVector eta = ancilla_amplitudes(spec, k);
        for (std::uint64_t a = 0; a < 2; ++a) {
            const Complex e = eta[static_cast<Eigen::Index>(a)];
            if (e != 0.0) {
                entries.push_back(CommitEntry{(k << 1) | a, amplitude * e, c_state});
            }
        }
    }
    return StructuredCommitState(spec.n + spec.ancilla_qubits(), spec.m, std::move(entries));
}

}  // namespace qcl
