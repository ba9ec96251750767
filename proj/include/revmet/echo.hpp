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

// Echo metrology: prepare with V, imprint exp(-iαH), undo V, and ask whether
// the probe came back to its initial state. Also the squeezing instances:
// single-mode parametric amplification, SU(1,1) interferometry and collective
// spin twisting in the Dicke subspace.

#ifndef REVMET_ECHO_HPP_
#define REVMET_ECHO_HPP_

#include <cstddef>

#include "revmet/core.hpp"
#include "revmet/fisher.hpp"

namespace revmet {

/// The caller chooses V; nothing here searches for a good one.
struct EchoSpec {
  Matrix prep;                  // V, unitary
  HermitianOperator generator;  // H
  StateVector initial;          // |0⟩
  double alpha = 0.0;
};

struct EchoRun {
  ParamDistribution distribution;  // {p_0, p_1}
  double p0 = 0.0;
  double p1 = 0.0;
  double fi = 0.0;   // classical FI of {p_0, p_1} at alpha
  double qfi = 0.0;  // QFI of exp(-iαH) V|0⟩ at alpha
};

/// Throws PreconditionError on non-unitary V or mismatched dimensions.
EchoRun run_echo(const EchoSpec& spec);

/// α ↦ exp(-iαH) V|0⟩.
PureFamily echo_probe_family(const EchoSpec& spec);

struct EchoGapReport {
  double fi = 0.0;
  double qfi = 0.0;
  double gap = 0.0;            // |fi - qfi| at alpha
  double gap_half = 0.0;       // same at alpha / 2
  double shrink_ratio = 0.0;   // gap / gap_half, ≈ 4 for an O(α²) gap
  double fitted_c = 0.0;       // gap / α²
  bool outside_weak_regime = false;  // |α| > 0.05
};

/// Compares the echo FI with the probe-state QFI. Finite differences use a
/// step of |α|/100 so the stencil error stays below the O(α²) gap.
EchoGapReport echo_fi_matches_qfi(const EchoSpec& spec);

// --- single-mode squeezing --------------------------------------------------

struct SqueezeSpec {
  double r = 0.0;
  double phi = 1.5707963267948966;  // π/2 squeezes P
  double g = 1.0;
  double t = 1.0;
  std::size_t fock_dim = 60;
};

/// (i/2)(e^{-2iφ} a² - e^{2iφ} a†²) on the truncated space.
HermitianOperator squeeze_generator(const FockSpace& fock, double phi);

struct KickReport {
  double p_shift = 0.0;              // ⟨P⟩ after squeeze → kick → antisqueeze
  double p_shift_unsqueezed = 0.0;   // ⟨P⟩ after the bare kick
  double ratio = 0.0;                // p_shift / p_shift_unsqueezed
  double tail_mass = 0.0;            // largest top-two-level weight seen
};

/// Simulates squeeze(r, φ) → exp(-i g α Q t) → antisqueeze on the vacuum and
/// compares the momentum kick with the unsqueezed one. For φ = π/2 the ratio
/// is e^r. Throws PreconditionError when a state leaks into the top two Fock
/// levels (weight ≥ 1e-6).
KickReport parametric_amplification(const SqueezeSpec& spec, double alpha);

// --- two-mode SU(1,1) -------------------------------------------------------

struct Su11Result {
  ParamDistribution distribution;  // joint photon numbers, index n_a·D + n_b
  double fi = 0.0;
  double qfi = 0.0;
  double vacuum_probability = 0.0;
  double tail_mass = 0.0;
  Vector output_state;  // S(r)⁻¹ e^{iα a†a} S(r)|0,0⟩ at alpha
};

/// Two-mode squeeze, phase on mode a, unsqueeze, joint photon counting.
Su11Result su11_interferometer(double r, double alpha, std::size_t fock_dim);

// --- collective spins -------------------------------------------------------

/// Collective spin operators of N spin-1/2 particles on the symmetric
/// subspace. Basis index k = 0..N counts excitations above the state that
/// S₋ annihilates, so S_z = diag(k - N/2) and S₋|k⟩ = √(k(N-k+1)) |k-1⟩.
struct DickeOperators {
  std::size_t n = 0;
  Matrix sx, sy, sz, sminus, splus;
};

DickeOperators dicke_operators(std::size_t n_spins);

enum class TwistKind { kOneAxis, kTwoAxis };

/// kOneAxis: S_z². kTwoAxis: (i/2N)(e^{-2iφ} S₋² - e^{2iφ} S₊²). Throws on
/// N < 2.
HermitianOperator spin_squeeze_generator(std::size_t n_spins, TwistKind kind, double phi = 0.0);

struct HolsteinPrimakoffReport {
  double deviation = 0.0;           // ‖(S₋ - √N a)|ψ⟩‖
  double relative_deviation = 0.0;  // deviation / ‖√N a|ψ⟩‖ (0 when both vanish)
  double mean_excitation = 0.0;
  bool low_excitation_warning = false;  // ⟨k⟩ > N/10
};

/// `state` lives on the (N+1)-dimensional Dicke space.
HolsteinPrimakoffReport holstein_primakoff_check(std::size_t n_spins, const StateVector& state);

}  // namespace revmet

#endif  // REVMET_ECHO_HPP_
