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

// Entanglement-based simulations of closed-timelike-curve sensing with a
// probe qubit and an ancilla prepared in the singlet. Qubit order is
// (probe, ancilla).
//
// The protocol-level functions only ever see the field as an opaque callable
// α ↦ U(α); the field direction is not in their signature. Hindsight receives
// the direction separately, and only uses it to choose measurement bases.

#ifndef REVMET_TIME_LOOP_HPP_
#define REVMET_TIME_LOOP_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "revmet/core.hpp"
#include "revmet/echo.hpp"
#include "revmet/fisher.hpp"

namespace revmet {

/// A field of unknown direction: U(α) = exp(-iα n·σ/2).
struct FieldSpec {
  Eigen::Vector3d direction;
  double alpha = 0.0;
};

void validate(const FieldSpec& field);

/// α ↦ single-qubit unitary.
using UnitaryOracle = std::function<Matrix(double)>;
/// parameter ↦ single-qubit Kraus operators.
using ChannelOracle = std::function<std::vector<Matrix>(double)>;

/// Wraps n into an opaque oracle. Throws unless |n| = 1 within 1e-10.
UnitaryOracle hidden_field(const Eigen::Vector3d& direction);

struct TimeLoopResult {
  std::string protocol;
  RealVector distribution;
  std::vector<std::string> labels;
  double fi = 0.0;
  double theoretical_max = 0.0;
  std::optional<Eigen::Vector3d> direction_used;  // empty means agnostic
};

/// Two-qubit unitary with V|00⟩ = (|01⟩ - |10⟩)/√2.
Matrix singlet_preparer();
StateVector singlet();

/// QFI of exp(-iα x·σ/2) on the +1 eigenstates of σ_x, σ_y, σ_z.
std::vector<double> naive_probe_qfis(double alpha);
/// Average of naive_probe_qfis. Throws unless α ∈ (0, π).
double naive_average_fi(double alpha);

/// Measurement axis used by hindsight: unit m ⊥ n.
Eigen::Vector3d hindsight_axis(const Eigen::Vector3d& direction);

/// Outcomes (ancilla ±m, probe ±m), both measured along m = hindsight_axis(n).
ParamDistribution hindsight_distribution(const UnitaryOracle& field,
                                         const Eigen::Vector3d& revealed_direction);
TimeLoopResult hindsight(const FieldSpec& field);

/// Probe states conditioned on each ancilla outcome, at α. Each is pure and
/// attains QFI 1.
std::vector<StateVector> hindsight_conditional_states(const FieldSpec& field);

/// Singlet-or-not after U(α)⊗I.
ParamDistribution agnostic_distribution(const UnitaryOracle& field);
TimeLoopResult agnostic(const FieldSpec& field);

/// Singlet-or-not after U(α)⊗U(α)†.
ParamDistribution positronium_distribution(const UnitaryOracle& field);
TimeLoopResult positronium(const FieldSpec& field);

/// Kraus {√(1-s/2) I, √(s/2) n·σ}. Throws for s outside [0, 1].
std::vector<Matrix> dephasing_kraus(double s, const Eigen::Vector3d& direction);

/// Singlet-or-not after the channel acts on the probe, as a function of s.
ParamDistribution dephasing_distribution(const ChannelOracle& channel);
/// FI about s. Reported as +inf at s = 0.
TimeLoopResult agnostic_dephasing(double strength, const Eigen::Vector3d& direction);

/// The same experiments phrased as echo runs: V = singlet_preparer(),
/// initial |00⟩, and H = n·σ/2 ⊗ I (agnostic) or n·σ/2 ⊗ I - I ⊗ n·σ/2
/// (positronium).
EchoSpec agnostic_echo_spec(const FieldSpec& field);
EchoSpec positronium_echo_spec(const FieldSpec& field);

}  // namespace revmet

#endif  // REVMET_TIME_LOOP_HPP_
