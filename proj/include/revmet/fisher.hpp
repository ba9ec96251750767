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

// Classical and quantum Fisher information of one-parameter families.
//
// Every routine evaluates the family at α0, α0 ± step and α0 ± 2·step and
// forms fourth-order central differences. Families are plain callables; they must be re-entrant because
// sweeps may call them from several threads.

#ifndef REVMET_FISHER_HPP_
#define REVMET_FISHER_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "revmet/core.hpp"

namespace revmet {

namespace tol {
inline constexpr double kProbabilitySum = 1e-10;
inline constexpr double kNegativeProbability = -1e-12;
inline constexpr double kZeroProbability = 1e-12;
inline constexpr double kSldCutoff = 1e-10;
inline constexpr double kFiFloor = -1e-9;
}  // namespace tol

/// α ↦ outcome probabilities.
struct ParamDistribution {
  std::function<RealVector(double)> eval;
  std::vector<std::string> labels;  // optional, one per outcome
};

/// α ↦ pure state.
struct PureFamily {
  std::function<StateVector(double)> eval;
};

/// α ↦ mixed state.
struct MixedFamily {
  std::function<DensityOperator(double)> eval;
};

enum class FiMethod { kAnalytic, kFiniteDifference, kSld };

struct FiResult {
  double value = 0.0;
  double alpha0 = 0.0;
  FiMethod method = FiMethod::kFiniteDifference;
};

std::string to_string(FiMethod m);

/// 1e-4·max(1, |α0|).
double default_step(double alpha0);

/// Σ_x p_x [∂ log p_x]². Outcomes with p_x(α0) < 1e-12 are skipped. Throws
/// PreconditionError on probabilities below -1e-12, a sum away from 1, a
/// non-positive step, or outcome counts that change with α.
FiResult classical_fi(const ParamDistribution& dist, double alpha0,
                      std::optional<double> step = std::nullopt);

/// 4(⟨∂ψ|∂ψ⟩ - |⟨ψ|∂ψ⟩|²).
FiResult qfi_pure(const PureFamily& family, double alpha0,
                  std::optional<double> step = std::nullopt);

/// Symmetric-logarithmic-derivative QFI,
/// 2 Σ_{λj+λk > 1e-10} |⟨j|∂ρ|k⟩|² / (λj + λk), in the eigenbasis of ρ(α0).
FiResult qfi_mixed(const MixedFamily& family, double alpha0,
                   std::optional<double> step = std::nullopt);

/// Lifts a pure family to a density-operator family.
MixedFamily as_mixed(const PureFamily& family);

/// (h_max - h_min)², the largest QFI any probe reaches under exp(-iαH).
double generator_qfi_bound(const HermitianOperator& h);

/// 1 / (N·FI). Throws PreconditionError("parameter unidentifiable") if FI is
/// not positive, and on N < 1.
double cramer_rao(const FiResult& fi, long long trials);

/// Outcome distribution of a POVM {E_x} on ρ: p_x = Tr(E_x ρ), tiny negative
/// values from roundoff clipped to zero.
RealVector povm_distribution(const std::vector<Matrix>& povm, const Matrix& rho);

}  // namespace revmet

#endif  // REVMET_FISHER_HPP_
