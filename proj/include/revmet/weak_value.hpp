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

// Von Neumann weak measurement of a finite-dimensional target with a
// continuous-variable probe, U = exp(-iα A⊗P), followed by postselection of
// the target. The probe lives on a periodic position grid so that branch
// shifts are exact phase ramps in the discrete Fourier domain.

#ifndef REVMET_WEAK_VALUE_HPP_
#define REVMET_WEAK_VALUE_HPP_

#include <cstddef>

#include "revmet/core.hpp"
#include "revmet/fisher.hpp"

namespace revmet {

namespace tol {
inline constexpr double kGridNorm = 1e-8;
inline constexpr double kGridBoundary = 1e-8;
inline constexpr double kOrthogonalPostselection = 1e-12;
}  // namespace tol

/// Probe wavefunction sampled at q_k = -L + k·dq, k = 0..M-1, dq = 2L/M.
class GridProbe {
 public:
  /// Throws unless Σ|φ|²·dq = 1 within 1e-8 and both edge samples are below
  /// 1e-8 in magnitude.
  GridProbe(double half_width, Vector amplitudes);

  double half_width() const { return half_width_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }
  double dq() const { return 2.0 * half_width_ / static_cast<double>(amplitudes_.size()); }
  double position(std::size_t k) const { return -half_width_ + static_cast<double>(k) * dq(); }
  const Vector& amplitudes() const { return amplitudes_; }

  /// |φ(q_k)|²·dq.
  RealVector probabilities() const;
  double mean_position() const;
  /// Position standard deviation, Δφ.
  double spread() const;

 private:
  double half_width_;
  Vector amplitudes_;
};

/// φ(q) ∝ exp(-q²/(4Δφ²)), so the position standard deviation is Δφ. The
/// half width defaults to 12Δφ.
GridProbe gaussian_probe(double spread, double half_width = 0.0, std::size_t count = 4096);

/// φ(q - s) on the periodic grid via a Fourier phase ramp.
Vector shift_on_grid(const GridProbe& probe, double s);

struct WvaSpec {
  HermitianOperator observable;  // A
  StateVector psi_i;
  StateVector psi_f;
  GridProbe probe;
  double alpha = 0.0;
};

/// α·(a_max - a_min)/Δφ.
double weakness_ratio(const WvaSpec& spec);

/// ⟨f|A|i⟩/⟨f|i⟩. Throws PreconditionError when |⟨f|i⟩| ≤ 1e-12.
Complex weak_value(const HermitianOperator& a, const StateVector& psi_i,
                   const StateVector& psi_f);

/// Joint target⊗probe amplitudes after the coupling, as a d×M matrix in the
/// target's computational basis. Σ|J|²·dq = 1.
Matrix coupled_joint_state(const WvaSpec& spec);

struct Postselected {
  GridProbe probe;
  double success_prob = 0.0;
};

/// Exact coupling, projection onto ψ_f and renormalization. Throws when the
/// postselected branch has (numerically) zero norm.
Postselected couple_and_postselect(const WvaSpec& spec);

struct WeakRegimeReport {
  double infidelity = 0.0;      // 1 - |⟨approx|exact⟩|
  double sine_distance = 0.0;   // sqrt(1 - |⟨approx|exact⟩|²)
  Complex weak_value;
  bool outside_weak_regime = false;  // α|A_w| > 0.05·Δφ
};

/// Compares the exact postselected probe with exp(-iα A_w P)φ, i.e. a shift
/// by α·Re(A_w) times exp(α·Im(A_w)·P), renormalized.
WeakRegimeReport weak_regime_validate(const WvaSpec& spec);

struct FiComparison {
  double fi_no_ps = 0.0;           // joint (A eigenvalue, position) record
  double fi_position_only = 0.0;   // probe position alone, target discarded
  double fi_ps = 0.0;              // position of the postselected probe
  double analytic_no_ps = 0.0;     // ⟨A²⟩/Δφ²
  double analytic_ps = 0.0;        // |A_w|²/Δφ²
  double success_prob = 0.0;
  double qfi_joint = 0.0;          // QFI of the coupled target⊗probe state
  Complex weak_value;
};

FiComparison fi_comparison(const WvaSpec& spec);

}  // namespace revmet

#endif  // REVMET_WEAK_VALUE_HPP_
