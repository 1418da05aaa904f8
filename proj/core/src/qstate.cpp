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

#include "qcl/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcl/errors.hpp"
#include "qcl/parallel.hpp"

namespace qcl {

namespace {

std::vector<std::string> default_labels(std::size_t count) {
    std::vector<std::string> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        labels.push_back("s" + std::to_string(i));
    }
    return labels;
}

double hermitian_defect(const CMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

bool all_qubits(const Dims& dims) {
    return std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; });
}

double sign_of_parity(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw DimensionError(msg.str());
    }
}

}  // namespace

std::size_t product(const Dims& dims) {
    std::size_t total = 1;
    for (int d : dims) {
        total *= static_cast<std::size_t>(d);
    }
    return total;
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(CVector amplitudes, Dims dims, std::vector<std::string> labels)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)), labels_(std::move(labels)) {
    if (dims_.empty()) {
        throw DimensionError("PureState: at least one subsystem is required");
    }
    for (int d : dims_) {
        if (d < 2) {
            throw DimensionError("PureState: subsystem dimensions must be >= 2");
        }
    }
    if (product(dims_) != static_cast<std::size_t>(amplitudes_.size())) {
        throw DimensionError("PureState: amplitude count does not match the product of dims");
    }
    if (labels_.empty()) {
        labels_ = default_labels(dims_.size());
    } else if (labels_.size() != dims_.size()) {
        throw DimensionError("PureState: one label per subsystem is required");
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol::kNorm) {
        std::ostringstream msg;
        msg << "PureState: squared norm " << norm2 << " is not 1";
        throw DimensionError(msg.str());
    }
}

PureState PureState::basis(Dims dims, std::size_t index) {
    const std::size_t dim = product(dims);
    if (index >= dim) {
        throw DimensionError("PureState::basis: index out of range");
    }
    CVector amplitudes = CVector::Zero(static_cast<Eigen::Index>(dim));
    amplitudes[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(std::move(amplitudes), std::move(dims));
}

PureState PureState::qubits(CVector amplitudes) {
    const auto size = static_cast<std::uint64_t>(amplitudes.size());
    if (size < 2 || !std::has_single_bit(size)) {
        throw DimensionError("PureState::qubits: length must be a power of two >= 2");
    }
    const int m = std::countr_zero(size);
    return PureState(std::move(amplitudes), Dims(static_cast<std::size_t>(m), 2));
}

DensityMatrix PureState::density() const { return DensityMatrix::from_pure(*this); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix entries, Dims dims, bool)
    : entries_(std::move(entries)), dims_(std::move(dims)) {}

DensityMatrix::DensityMatrix(CMatrix entries, Dims dims)
    : entries_(std::move(entries)), dims_(std::move(dims)) {
    if (entries_.rows() != entries_.cols()) {
        throw DimensionError("DensityMatrix: matrix is not square");
    }
    if (product(dims_) != static_cast<std::size_t>(entries_.rows())) {
        throw DimensionError("DensityMatrix: size does not match the product of dims");
    }
    if (hermitian_defect(entries_) > tol::kHermitian) {
        throw DimensionError("DensityMatrix: matrix is not Hermitian");
    }
    const Complex trace = entries_.trace();
    if (std::abs(trace - Complex(1.0, 0.0)) > tol::kNorm) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace " << trace.real() << " is not 1";
        throw DimensionError(msg.str());
    }
    const double smallest = hermitian_eigenvalues(entries_).minCoeff();
    if (smallest < -tol::kClamp) {
        std::ostringstream msg;
        msg << "DensityMatrix: eigenvalue " << smallest << " is negative";
        throw NotPsdError(msg.str());
    }
}

DensityMatrix DensityMatrix::unchecked(CMatrix entries, Dims dims) {
    if (entries.rows() != entries.cols() ||
        product(dims) != static_cast<std::size_t>(entries.rows())) {
        throw DimensionError("DensityMatrix::unchecked: shape does not match dims");
    }
    return DensityMatrix(std::move(entries), std::move(dims), true);
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
    const auto dim = static_cast<Eigen::Index>(product(dims));
    CMatrix entries = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
    return DensityMatrix(std::move(entries), std::move(dims), true);
}

DensityMatrix DensityMatrix::maximally_mixed_qubits(int m) {
    return maximally_mixed(Dims(static_cast<std::size_t>(m), 2));
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
    CMatrix entries = state.amplitudes() * state.amplitudes().adjoint();
    return DensityMatrix(std::move(entries), state.dims(), true);
}

// ---------------------------------------------------------------------------
// HermitianObservable, PauliMask

HermitianObservable::HermitianObservable(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw DimensionError("HermitianObservable: matrix is not square");
    }
    if (hermitian_defect(entries_) > tol::kHermitian) {
        throw DimensionError("HermitianObservable: matrix is not Hermitian");
    }
}

PauliMask::PauliMask(std::uint64_t x_bits, std::uint64_t z_bits, int qubits)
    : x(x_bits), z(z_bits), num_qubits(qubits) {
    if (qubits < 0 || qubits > 63) {
        throw DimensionError("PauliMask: qubit count must be in [0, 63]");
    }
    const std::uint64_t limit = std::uint64_t{1} << qubits;
    if (x >= limit || z >= limit) {
        throw DimensionError("PauliMask: mask bits exceed the qubit count");
    }
}

PauliMask PauliMask::from_strings(std::string_view x_bits, std::string_view z_bits) {
    if (x_bits.size() != z_bits.size()) {
        throw DimensionError("PauliMask: x and z must have equal length");
    }
    auto parse = [](std::string_view bits) {
        std::uint64_t value = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw DimensionError("PauliMask: bit strings may only contain 0 and 1");
            }
            value = (value << 1) | static_cast<std::uint64_t>(c - '0');
        }
        return value;
    };
    return PauliMask(parse(x_bits), parse(z_bits), static_cast<int>(x_bits.size()));
}

int PauliMask::xz_parity() const { return std::popcount(x & z) & 1; }

// ---------------------------------------------------------------------------
// Structural operations

PureState tensor(const PureState& a, const PureState& b) {
    const auto na = a.amplitudes().size();
    const auto nb = b.amplitudes().size();
    CVector out(na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        out.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    }
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    std::vector<std::string> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    // Colliding labels (e.g. "s0" on both sides) fall back to the defaults.
    std::vector<std::string> seen;
    for (auto& label : labels) {
        if (std::find(seen.begin(), seen.end(), label) != seen.end()) {
            labels = {};
            break;
        }
        seen.push_back(label);
    }
    return PureState(std::move(out), std::move(dims), std::move(labels));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    const auto na = static_cast<Eigen::Index>(a.dim());
    const auto nb = static_cast<Eigen::Index>(b.dim());
    CMatrix out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            out.block(i * nb, j * nb, nb, nb) = a.entries()(i, j) * b.entries();
        }
    }
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityMatrix::unchecked(std::move(out), std::move(dims));
}

namespace {

struct TraceLayout {
    Dims kept_dims;
    std::size_t kept = 1;
    std::size_t traced = 1;
    // full_index[a * traced + t] for kept index a and traced index t
    std::vector<std::size_t> full_index;
};

TraceLayout trace_layout(const Dims& dims, std::span<const int> keep) {
    if (keep.empty()) {
        throw DimensionError("partial_trace: keep set is empty");
    }
    std::vector<int> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DimensionError("partial_trace: duplicate subsystem index");
    }
    if (sorted.front() < 0 || sorted.back() >= static_cast<int>(dims.size())) {
        throw DimensionError("partial_trace: subsystem index out of range");
    }
    std::vector<bool> is_kept(dims.size(), false);
    for (int k : sorted) {
        is_kept[static_cast<std::size_t>(k)] = true;
    }

    TraceLayout layout;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        if (is_kept[s]) {
            layout.kept_dims.push_back(dims[s]);
            layout.kept *= static_cast<std::size_t>(dims[s]);
        } else {
            layout.traced *= static_cast<std::size_t>(dims[s]);
        }
    }
    const std::size_t total = layout.kept * layout.traced;
    layout.full_index.assign(total, 0);
    std::vector<int> digits(dims.size(), 0);
    for (std::size_t full = 0; full < total; ++full) {
        // digits of `full`, subsystem 0 most significant
        std::size_t rest = full;
        for (std::size_t s = dims.size(); s-- > 0;) {
            digits[s] = static_cast<int>(rest % static_cast<std::size_t>(dims[s]));
            rest /= static_cast<std::size_t>(dims[s]);
        }
        std::size_t a = 0;
        std::size_t t = 0;
        for (std::size_t s = 0; s < dims.size(); ++s) {
            if (is_kept[s]) {
                a = a * static_cast<std::size_t>(dims[s]) + static_cast<std::size_t>(digits[s]);
            } else {
                t = t * static_cast<std::size_t>(dims[s]) + static_cast<std::size_t>(digits[s]);
            }
        }
        layout.full_index[a * layout.traced + t] = full;
    }
    return layout;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    const TraceLayout layout = trace_layout(rho.dims(), keep);
    const auto kept = static_cast<Eigen::Index>(layout.kept);
    CMatrix out = CMatrix::Zero(kept, kept);
    const CMatrix& in = rho.entries();
    for (std::size_t a = 0; a < layout.kept; ++a) {
        for (std::size_t b = 0; b < layout.kept; ++b) {
            Complex sum = 0.0;
            for (std::size_t t = 0; t < layout.traced; ++t) {
                sum += in(static_cast<Eigen::Index>(layout.full_index[a * layout.traced + t]),
                          static_cast<Eigen::Index>(layout.full_index[b * layout.traced + t]));
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
        }
    }
    return DensityMatrix::unchecked(std::move(out), layout.kept_dims);
}

DensityMatrix partial_trace(const PureState& state, std::span<const int> keep) {
    const TraceLayout layout = trace_layout(state.dims(), keep);
    // Reshape into a kept x traced matrix M; the reduced state is M M^dagger.
    CMatrix reshaped(static_cast<Eigen::Index>(layout.kept),
                     static_cast<Eigen::Index>(layout.traced));
    for (std::size_t a = 0; a < layout.kept; ++a) {
        for (std::size_t t = 0; t < layout.traced; ++t) {
            reshaped(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
                state.amplitudes()[static_cast<Eigen::Index>(
                    layout.full_index[a * layout.traced + t])];
        }
    }
    CMatrix out = reshaped * reshaped.adjoint();
    return DensityMatrix::unchecked(std::move(out), layout.kept_dims);
}

// ---------------------------------------------------------------------------
// Spectral quantities

RVector hermitian_eigenvalues(const CMatrix& matrix) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

CMatrix psd_sqrt(const CMatrix& matrix) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix);
    RVector values = solver.eigenvalues();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values[i] < -tol::kNotPsd) {
            std::ostringstream msg;
            msg << "psd_sqrt: eigenvalue " << values[i] << " below -1e-6";
            throw NotPsdError(msg.str());
        }
        values[i] = values[i] > 0.0 ? std::sqrt(values[i]) : 0.0;
    }
    const CMatrix& vectors = solver.eigenvectors();
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

DensityMatrix mat_sqrt_psd(const DensityMatrix& rho) {
    return DensityMatrix::unchecked(psd_sqrt(rho.entries()), rho.dims());
}

HermitianObservable mat_sqrt_psd(const HermitianObservable& observable) {
    return HermitianObservable(psd_sqrt(observable.entries()));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma, "fidelity");
    const CMatrix cross = psd_sqrt(rho.entries()) * psd_sqrt(sigma.entries());
    const double nuclear = Eigen::JacobiSVD<CMatrix>(cross).singularValues().sum();
    return nuclear * nuclear;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma, "trace_distance");
    const CMatrix difference = rho.entries() - sigma.entries();
    return 0.5 * hermitian_eigenvalues(difference).cwiseAbs().sum();
}

double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma, "overlap");
    // Tr(AB) = sum_ij A_ij B_ji
    return (rho.entries().array() * sigma.entries().transpose().array()).sum().real();
}

double purity(const DensityMatrix& rho) { return overlap(rho, rho); }

double swap_test_prob(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return 0.5 * (1.0 + overlap(rho, sigma));
}

// ---------------------------------------------------------------------------
// Sampling

PureState haar_state(std::size_t d, Rng& rng) {
    if (d < 2) {
        throw DimensionError("haar_state: dimension must be >= 2");
    }
    CVector amplitudes(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        amplitudes[i] = Complex(re, im);
    }
    amplitudes /= amplitudes.norm();
    return PureState(std::move(amplitudes), Dims{static_cast<int>(d)});
}

PureState haar_qubit_state(int m, Rng& rng) {
    PureState state = haar_state(std::size_t{1} << m, rng);
    return PureState(state.amplitudes(), Dims(static_cast<std::size_t>(m), 2));
}

DensityMatrix random_density_matrix(const Dims& dims, std::size_t rank, Rng& rng) {
    const auto dim = static_cast<Eigen::Index>(product(dims));
    if (rank < 1 || static_cast<Eigen::Index>(rank) > dim) {
        throw DimensionError("random_density_matrix: rank must be in [1, dim]");
    }
    CMatrix ginibre(dim, static_cast<Eigen::Index>(rank));
    for (Eigen::Index j = 0; j < ginibre.cols(); ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            ginibre(i, j) = Complex(re, im);
        }
    }
    CMatrix rho = ginibre * ginibre.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix::unchecked(std::move(rho), dims);
}

// ---------------------------------------------------------------------------
// Pauli masks

namespace {

void require_mask_fits(const PauliMask& mask, const Dims& dims) {
    if (!all_qubits(dims) || static_cast<int>(dims.size()) != mask.num_qubits) {
        throw DimensionError("Pauli mask size does not match the number of qubits");
    }
}

}  // namespace

CVector apply_pauli_vector(const PauliMask& mask, const CVector& in) {
    if (static_cast<std::uint64_t>(in.size()) != (std::uint64_t{1} << mask.num_qubits)) {
        throw DimensionError("apply_pauli_vector: vector length does not match the mask");
    }
    CVector out(in.size());
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(in.size()); ++i) {
        out[static_cast<Eigen::Index>(i ^ mask.x)] =
            sign_of_parity(i & mask.z) * in[static_cast<Eigen::Index>(i)];
    }
    return out;
}

PureState apply_pauli_mask(const PauliMask& mask, const PureState& state) {
    require_mask_fits(mask, state.dims());
    return PureState(apply_pauli_vector(mask, state.amplitudes()), state.dims(), state.labels());
}

PureState apply_pauli_mask_adjoint(const PauliMask& mask, const PureState& state) {
    require_mask_fits(mask, state.dims());
    const CVector& in = state.amplitudes();
    CVector out(in.size());
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(in.size()); ++i) {
        const std::uint64_t j = i ^ mask.x;
        out[static_cast<Eigen::Index>(j)] =
            sign_of_parity(j & mask.z) * in[static_cast<Eigen::Index>(i)];
    }
    return PureState(std::move(out), state.dims(), state.labels());
}

CMatrix conjugate_by_pauli(const PauliMask& mask, const CMatrix& matrix) {
    const auto dim = static_cast<std::uint64_t>(matrix.rows());
    if (matrix.rows() != matrix.cols() || dim != (std::uint64_t{1} << mask.num_qubits)) {
        throw DimensionError("conjugate_by_pauli: matrix size does not match the mask");
    }
    CMatrix out(matrix.rows(), matrix.cols());
    for (std::uint64_t j = 0; j < dim; ++j) {
        const double sj = sign_of_parity(j & mask.z);
        for (std::uint64_t i = 0; i < dim; ++i) {
            out(static_cast<Eigen::Index>(i ^ mask.x), static_cast<Eigen::Index>(j ^ mask.x)) =
                sign_of_parity(i & mask.z) * sj *
                matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

DensityMatrix qotp_average(const DensityMatrix& rho) {
    if (!all_qubits(rho.dims())) {
        throw DimensionError("qotp_average: input must be a multi-qubit state");
    }
    const int m = static_cast<int>(rho.dims().size());
    if (m > 6) {
        throw CapExceededError("qotp_average: exact enumeration is capped at m = 6");
    }
    const std::uint64_t masks = std::uint64_t{1} << m;
    CMatrix sum = CMatrix::Zero(rho.entries().rows(), rho.entries().cols());
    for (std::uint64_t x = 0; x < masks; ++x) {
        for (std::uint64_t z = 0; z < masks; ++z) {
            sum += conjugate_by_pauli(PauliMask(x, z, m), rho.entries());
        }
    }
    sum /= static_cast<double>(masks * masks);
    return DensityMatrix::unchecked(std::move(sum), rho.dims());
}

// ---------------------------------------------------------------------------
// Symmetric subspace

double binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double value = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        value = value * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(value);
}

CMatrix symmetric_projector(std::size_t d, int copies) {
    if (copies < 1 || copies > 4) {
        throw CapExceededError("symmetric_projector: copy count must be in [1, 4]");
    }
    if (d < 1) {
        throw DimensionError("symmetric_projector: dimension must be >= 1");
    }
    std::size_t total = 1;
    for (int c = 0; c < copies; ++c) {
        total *= d;
        if (total > 4096) {
            throw CapExceededError("symmetric_projector: d^T is capped at 4096");
        }
    }
    const auto t = static_cast<std::size_t>(copies);
    std::vector<int> perm(t);
    std::iota(perm.begin(), perm.end(), 0);
    double factorial = 1.0;
    for (std::size_t i = 2; i <= t; ++i) {
        factorial *= static_cast<double>(i);
    }

    CMatrix projector = CMatrix::Zero(static_cast<Eigen::Index>(total),
                                      static_cast<Eigen::Index>(total));
    std::vector<std::size_t> digits(t);
    do {
        for (std::size_t in = 0; in < total; ++in) {
            std::size_t rest = in;
            for (std::size_t s = t; s-- > 0;) {
                digits[s] = rest % d;
                rest /= d;
            }
            // position s of the output carries the digit at position perm[s]
            std::size_t out = 0;
            for (std::size_t s = 0; s < t; ++s) {
                out = out * d + digits[static_cast<std::size_t>(perm[s])];
            }
            projector(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) += 1.0;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    projector /= factorial;
    return projector;
}

DensityMatrix sym_moment(std::size_t d, int copies) {
    CMatrix projector = symmetric_projector(d, copies);
    projector /= binomial(d + static_cast<std::size_t>(copies) - 1,
                          static_cast<std::size_t>(copies));
    return DensityMatrix::unchecked(std::move(projector),
                                    Dims(static_cast<std::size_t>(copies), static_cast<int>(d)));
}

MomentEstimate haar_moment_estimate(std::size_t d, int copies, std::size_t samples,
                                    std::uint64_t seed) {
    if (copies < 1 || copies > 4 || d < 2) {
        throw DimensionError("haar_moment_estimate: need d >= 2 and 1 <= T <= 4");
    }
    if (samples < 2) {
        throw DimensionError("haar_moment_estimate: at least two samples are required");
    }
    std::size_t total = 1;
    for (int c = 0; c < copies; ++c) {
        total *= d;
    }
    if (total > 256) {
        throw CapExceededError("haar_moment_estimate: d^T is capped at 256");
    }
    const auto dim = static_cast<Eigen::Index>(total);

    // Fixed block partition so the sums do not depend on the worker count.
    constexpr std::size_t kBlock = 1024;
    const std::size_t blocks = (samples + kBlock - 1) / kBlock;
    struct Partial {
        CMatrix sum;
        Eigen::MatrixXd sq_real;
        Eigen::MatrixXd sq_imag;
    };
    const auto partials = parallel_map<Partial>(blocks, [&](std::size_t b) {
        Partial p{CMatrix::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim),
                  Eigen::MatrixXd::Zero(dim, dim)};
        const std::size_t end = std::min(samples, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) {
            Rng rng(derive_seed(seed, i));
            const CVector psi = haar_state(d, rng).amplitudes();
            CVector power = psi;
            for (int c = 1; c < copies; ++c) {
                CVector next(power.size() * psi.size());
                for (Eigen::Index j = 0; j < power.size(); ++j) {
                    next.segment(j * psi.size(), psi.size()) = power[j] * psi;
                }
                power = std::move(next);
            }
            const CMatrix outer = power * power.adjoint();
            p.sum += outer;
            p.sq_real += outer.real().cwiseAbs2();
            p.sq_imag += outer.imag().cwiseAbs2();
        }
        return p;
    });

    CMatrix sum = CMatrix::Zero(dim, dim);
    Eigen::MatrixXd sq_real = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd sq_imag = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& p : partials) {
        sum += p.sum;
        sq_real += p.sq_real;
        sq_imag += p.sq_imag;
    }
    const auto n = static_cast<double>(samples);
    MomentEstimate out;
    out.samples = samples;
    out.mean = sum / n;
    const Eigen::MatrixXd mean_re = out.mean.real();
    const Eigen::MatrixXd mean_im = out.mean.imag();
    const auto std_error = [n](const Eigen::MatrixXd& sq, const Eigen::MatrixXd& mean) {
        Eigen::MatrixXd var = (sq - n * mean.cwiseAbs2()) / (n - 1.0);
        return Eigen::MatrixXd(var.cwiseMax(0.0).cwiseSqrt() / std::sqrt(n));
    };
    out.std_error_real = std_error(sq_real, mean_re);
    out.std_error_imag = std_error(sq_imag, mean_im);
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qcl
