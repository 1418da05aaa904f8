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
 * @file    qstate.hpp
 * @brief   Dense states, density matrices and the distance measures used by
 *          every experiment in the library.
 *
 * Conventions, fixed once for the whole project:
 *  - subsystem 0 is the leftmost label and owns the most significant digit of
 *    the amplitude index (for qubits: qubit 0 is the MSB);
 *  - fidelity is the squared Uhlmann fidelity, F(rho, sigma) = (Tr|sqrt(rho) sqrt(sigma)|)^2,
 *    so F(rho, |s><s|) = <s|rho|s>;
 *  - the Pauli mask (x, z) denotes X^x Z^z: Z acts on the ket first.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qcl/rng.hpp"

namespace qcl {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Dims = std::vector<int>;

namespace tol {
inline constexpr double kNorm = 1e-9;       // unit norm / unit trace
inline constexpr double kHermitian = 1e-9;  // entrywise |A - A^dagger|
inline constexpr double kClamp = 1e-9;      // eigenvalues in [-kClamp, 0) are roundoff
inline constexpr double kNotPsd = 1e-6;     // eigenvalues below -kNotPsd are an error
}  // namespace tol

class DensityMatrix;

/// Unit-norm amplitude vector over labelled subsystems.
class PureState {
  public:
    /// Throws DimensionError if the length is not the product of `dims`, any
    /// dimension is below 2, the label count mismatches, or the norm is off
    /// by more than 1e-9. Empty `labels` gets "s0", "s1", ...
    PureState(CVector amplitudes, Dims dims, std::vector<std::string> labels = {});

    /// Computational basis vector |index>.
    static PureState basis(Dims dims, std::size_t index);
    /// m-qubit state from amplitudes; dims are {2, ..., 2}.
    static PureState qubits(CVector amplitudes);

    const CVector& amplitudes() const { return amplitudes_; }
    const Dims& dims() const { return dims_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

    DensityMatrix density() const;

  private:
    CVector amplitudes_;
    Dims dims_;
    std::vector<std::string> labels_;
};

/// Hermitian, PSD, unit-trace matrix over subsystems.
class DensityMatrix {
  public:
    /// Validates hermiticity (1e-9 entrywise), trace (1e-9) and spectrum
    /// (>= -1e-9); throws DimensionError or NotPsdError.
    DensityMatrix(CMatrix entries, Dims dims);

    /// Skips validation. For matrices that are valid by construction and too
    /// large to diagonalise cheaply, and for exercising error paths.
    static DensityMatrix unchecked(CMatrix entries, Dims dims);

    static DensityMatrix maximally_mixed(Dims dims);
    static DensityMatrix maximally_mixed_qubits(int m);
    static DensityMatrix from_pure(const PureState& state);

    const CMatrix& entries() const { return entries_; }
    const Dims& dims() const { return dims_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }

  private:
    DensityMatrix(CMatrix entries, Dims dims, bool);
    CMatrix entries_;
    Dims dims_;
};

/// Hermitian matrix used as a POVM element.
class HermitianObservable {
  public:
    explicit HermitianObservable(CMatrix entries);
    const CMatrix& entries() const { return entries_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }

  private:
    CMatrix entries_;
};

/// X^x Z^z on `num_qubits` qubits. Bit (num_qubits - 1 - j) of `x` and `z`
/// belongs to qubit j, so the masks XOR directly into amplitude indices.
struct PauliMask {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    int num_qubits = 0;

    PauliMask(std::uint64_t x_bits, std::uint64_t z_bits, int qubits);
    /// From bit strings such as "0110", leftmost character is qubit 0.
    static PauliMask from_strings(std::string_view x_bits, std::string_view z_bits);
    /// Symplectic weight parity x . z; the mask squares to (-1)^(x.z) I.
    int xz_parity() const;

    friend bool operator==(const PauliMask&, const PauliMask&) = default;
};

std::size_t product(const Dims& dims);

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the subsystems listed in `keep` (ascending order in the
/// output). Throws DimensionError on an empty, duplicated or out-of-range set.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const PureState& state, std::span<const int> keep);

/// Hermitian eigenvalues in ascending order.
RVector hermitian_eigenvalues(const CMatrix& matrix);

/// PSD square root. Eigenvalues in [-1e-6, 0) are clamped to zero; anything
/// lower throws NotPsdError.
CMatrix psd_sqrt(const CMatrix& matrix);
DensityMatrix mat_sqrt_psd(const DensityMatrix& rho);
HermitianObservable mat_sqrt_psd(const HermitianObservable& observable);

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double purity(const DensityMatrix& rho);
/// Re Tr(rho sigma).
double overlap(const DensityMatrix& rho, const DensityMatrix& sigma);
/// Acceptance probability of the SWAP test on rho (x) sigma: (1 + Tr(rho sigma)) / 2.
double swap_test_prob(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Haar-random pure state in dimension d: normalised complex Gaussian vector.
PureState haar_state(std::size_t d, Rng& rng);
PureState haar_qubit_state(int m, Rng& rng);
/// Random mixed state of the given rank (Ginibre ensemble, rank <= product(dims)).
DensityMatrix random_density_matrix(const Dims& dims, std::size_t rank, Rng& rng);

/// X^x Z^z |s>.
PureState apply_pauli_mask(const PauliMask& mask, const PureState& state);
/// X^x Z^z on a raw 2^m amplitude vector.
CVector apply_pauli_vector(const PauliMask& mask, const CVector& amplitudes);
/// (X^x Z^z)^dagger |s> = Z^z X^x |s>.
PureState apply_pauli_mask_adjoint(const PauliMask& mask, const PureState& state);
/// P rho P^dagger for P = X^x Z^z; `matrix` is 2^m by 2^m.
CMatrix conjugate_by_pauli(const PauliMask& mask, const CMatrix& matrix);

/// Exact Pauli twirl (1/4^m) sum_{x,z} X^x Z^z rho Z^z X^x. Requires an
/// m-qubit input with m <= 6.
DensityMatrix qotp_average(const DensityMatrix& rho);

/// Projector onto the symmetric subspace of (C^d)^{(x)T}, built as the
/// average of the T! permutation operators. Requires T <= 4 and d^T <= 4096.
CMatrix symmetric_projector(std::size_t d, int copies);
/// Haar moment E|psi><psi|^{(x)T} = Pi_sym / binom(d + T - 1, T).
DensityMatrix sym_moment(std::size_t d, int copies);
/// Monte-Carlo estimate of E|psi><psi|^{(x)T} with per-entry standard errors
/// for the real and imaginary parts. Sample i draws from derive_seed(seed, i).
struct MomentEstimate {
    CMatrix mean;
    Eigen::MatrixXd std_error_real;
    Eigen::MatrixXd std_error_imag;
    std::size_t samples = 0;
};
MomentEstimate haar_moment_estimate(std::size_t d, int copies, std::size_t samples,
                                    std::uint64_t seed);

/// binom(n, k) as a double; exact for the ranges used here.
double binomial(std::size_t n, std::size_t k);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace qcl
