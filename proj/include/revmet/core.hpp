// Copyright 2026 The revmet Authors
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

#ifndef REVMET_CORE_HPP_
#define REVMET_CORE_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace revmet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

// Thrown whenever an operation's precondition is violated. The message names
// the offending quantity.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double kNorm = 1e-10;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kDensityHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsdFloor = -1e-9;
inline constexpr double kKrausCompleteness = 1e-10;
inline constexpr double kUnitVector = 1e-10;
inline constexpr double kFockTail = 1e-6;
}  // namespace tol

/// Product of the subsystem dimensions.
std::size_t total_dim(const Dims& dims);

/// Normalized pure state on a composite space.
class StateVector {
 public:
  /// Throws PreconditionError if the squared norm differs from 1 by more than
  /// 1e-10 or the dims do not multiply to the amplitude count. A single-factor
  /// dims is inferred when `dims` is empty.
  explicit StateVector(Vector amplitudes, Dims dims = {});

  /// Rescales `v` to unit norm first; throws if `v` is (numerically) zero.
  static StateVector normalized(const Vector& v, Dims dims = {});
  /// Computational basis vector |index⟩.
  static StateVector basis(std::size_t dim, std::size_t index);

  const Vector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

  /// |ψ⟩⟨ψ| as a raw matrix.
  Matrix projector() const;

 private:
  Vector amplitudes_;
  Dims dims_;
};

/// Mixed state: Hermitian, unit trace, positive semidefinite. Eigenvalues down
/// to -1e-9 are tolerated for finite-precision channel compositions.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix matrix, Dims dims = {});
  static DensityOperator from_pure(const StateVector& psi);
  static DensityOperator maximally_mixed(std::size_t dim);

  const Matrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  Matrix matrix_;
  Dims dims_;
};

/// Square matrix equal to its adjoint within 1e-12 (relative to its scale).
/// The stored matrix is exactly Hermitian: the anti-Hermitian residue is
/// projected out on construction.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& matrix);

  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  /// Eigenvalues in ascending order.
  RealVector eigenvalues() const;

 private:
  Matrix matrix_;
};

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
 public:
  /// Checks Σ K†K = I within 1e-10 and consistent shapes.
  explicit KrausChannel(std::vector<Matrix> kraus_ops);
  static KrausChannel identity(std::size_t dim);
  static KrausChannel unitary(const Matrix& u);

  const std::vector<Matrix>& kraus_ops() const { return kraus_; }
  std::size_t input_dim() const { return static_cast<std::size_t>(kraus_.front().cols()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(kraus_.front().rows()); }

  /// Channel composition: (*this ∘ first), i.e. `first` acts before *this.
  KrausChannel after(const KrausChannel& first) const;

 private:
  std::vector<Matrix> kraus_;
};

/// Truncated single bosonic mode.
struct FockSpace {
  std::size_t dim = 0;
  Matrix a;       // lowering, a[n-1, n] = sqrt(n)
  Matrix adag;
  Matrix q;       // (a + a†)/√2
  Matrix p;       // (a - a†)/(i√2)
  Matrix number;  // a†a
};

// --- operations -----------------------------------------------------------

StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
Matrix tensor(const Matrix& a, const Matrix& b);
Matrix tensor(std::span<const Matrix> factors);

/// Reduced state on the subsystems listed in `keep` (any order; the result
/// keeps the original subsystem order). Throws on out-of-range or repeated
/// indices.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& keep);

/// exp(-i α H), computed from the eigendecomposition of H.
Matrix unitary_from_generator(const HermitianOperator& h, double alpha);

/// Σ_j K_j ρ K_j†. The output is validated as a density operator.
DensityOperator apply_channel(const KrausChannel& channel, const DensityOperator& rho);

/// Same as apply_channel but without the validation step, for intermediate
/// products inside tight loops.
Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho);

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

/// n·σ for a unit 3-vector n.
HermitianOperator pauli_direction(const Eigen::Vector3d& n);

/// (|h_min⟩ + e^{-iφ}|h_max⟩)/√2.
///
/// Eigenvectors come from Eigen's SelfAdjointEigenSolver, which returns
/// eigenvalues in ascending order. |h_min⟩ is column 0. |h_max⟩ is the first
/// column whose eigenvalue equals the largest one (within 1e-12 of the
/// spectral scale). When every eigenvalue coincides, columns 0 and 1 are used.
StateVector optimal_probe(const HermitianOperator& h, double phi);

/// Truncated Fock space of dimension D ≥ 2.
FockSpace fock_space(std::size_t dim);

/// Weight on the top two Fock levels of a single-mode state.
double fock_tail_mass(const Vector& amplitudes);

/// ⟨ψ|A|ψ⟩ (real part; A is assumed Hermitian).
double expectation(const StateVector& psi, const Matrix& op);
/// ⟨ψ|A²|ψ⟩ - ⟨ψ|A|ψ⟩².
double variance(const StateVector& psi, const Matrix& op);

bool is_unitary(const Matrix& u, double tolerance = 1e-10);

/// Caches the eigendecomposition of a generator so exp(-iαH) can be applied
/// repeatedly at different α without re-diagonalizing.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const HermitianOperator& h);

  Vector apply(double alpha, const Vector& v) const;
  Matrix unitary(double alpha) const;
  const RealVector& eigenvalues() const { return eigenvalues_; }

 private:
  RealVector eigenvalues_;
  Matrix eigenvectors_;
};

}  // namespace revmet

#endif  // REVMET_CORE_HPP_
