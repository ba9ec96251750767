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

// Quantum SWITCH of two channels on a qubit control. Composition follows the
// usual convention: A∘B means B acts first. Joint states are ordered
// (control, system).

#ifndef REVMET_ICO_SWITCH_HPP_
#define REVMET_ICO_SWITCH_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "revmet/core.hpp"
#include "revmet/fisher.hpp"

namespace revmet {

/// α ↦ channel. Every value must be CPTP.
struct ParamChannel {
  std::function<KrausChannel(double)> eval;
};

/// (1-r)ρ + r·I/d. Pauli Kraus form for d = 2, Weyl form otherwise. Throws
/// for r outside [0, 1] or d < 2.
KrausChannel depolarize(double r, std::size_t d);

/// r ↦ depolarize(r, d) without the range check, so finite differences can
/// straddle r = 1 (the Kraus form stays CPTP up to r = d²/(d²-1)).
ParamChannel depolarizing_family(std::size_t d);

/// α ↦ exp(-iαH) as a single-Kraus channel.
ParamChannel unitary_family(const HermitianOperator& h);

/// Kraus operators |0⟩⟨0|⊗A_iB_j + |1⟩⟨1|⊗B_jA_i, index i·|B| + j.
std::vector<Matrix> switch_kraus(const KrausChannel& a, const KrausChannel& b);

struct SwitchOutput {
  DensityOperator joint;  // on control ⊗ system
  Matrix forward;         // (A∘B)(ρ)
  Matrix reverse;         // (B∘A)(ρ)
  Matrix coherent;        // Σ A_iB_j ρ (B_jA_i)†, the |0⟩⟨1| operator block
};

SwitchOutput switch_apply(const KrausChannel& a, const KrausChannel& b,
                          const DensityOperator& rho_s, const DensityOperator& control);
SwitchOutput switch_apply(const KrausChannel& a, const KrausChannel& b,
                          const DensityOperator& rho_s, const StateVector& control);

/// |+⟩ on the control.
StateVector plus_control();

struct OrderingReport {
  double qfi_switch = 0.0;
  double qfi_seq = 0.0;
  double relative_gain = 0.0;  // (qfi_switch - qfi_seq)/qfi_seq, +inf when qfi_seq = 0
  int channel_queries = 2;
};

/// Switch with control |+⟩ versus E∘E, both as QFI about α at alpha0.
OrderingReport switch_vs_sequential_qfi(const ParamChannel& e, const DensityOperator& rho_s,
                                        double alpha0);

struct ControlReadout {
  double qfi_control = 0.0;
  double qfi_system = 0.0;
  double qfi_joint = 0.0;
};

/// E_α = noise ∘ U_α in both slots of the switch.
ControlReadout noise_robust_control_readout(const std::function<Matrix(double)>& u_family,
                                            const KrausChannel& noise,
                                            const DensityOperator& rho_s,
                                            const DensityOperator& rho_c, double alpha0);

}  // namespace revmet

#endif  // REVMET_ICO_SWITCH_HPP_
