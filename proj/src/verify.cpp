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

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "revmet/echo.hpp"
#include "revmet/harness.hpp"
#include "revmet/ico_switch.hpp"
#include "revmet/random.hpp"
#include "revmet/time_loop.hpp"
#include "revmet/weak_value.hpp"

namespace revmet {

namespace {

constexpr double kPi = std::numbers::pi;

VerifyRow row(std::string claim, double expected, double observed, double tolerance,
              std::string relation) {
  VerifyRow r{std::move(claim), expected, observed, tolerance, std::move(relation), false};
  if (r.relation == "abs") {
    r.pass = std::abs(observed - expected) <= tolerance;
  } else if (r.relation == "rel") {
    r.pass = std::abs(observed - expected) <= tolerance * std::abs(expected);
  } else if (r.relation == "<=") {
    r.pass = observed <= expected + tolerance;
  } else {
    r.pass = observed >= expected - tolerance;
  }
  return r;
}

WvaSpec aw19_spec(double alpha) {
  Vector plus(2);
  plus << 1.0, 1.0;
  Vector post(2);
  post << 1.0, -0.9;
  return WvaSpec{HermitianOperator(pauli::z()), StateVector::normalized(plus),
                 StateVector::normalized(post), gaussian_probe(1.0), alpha};
}

}  // namespace

std::vector<VerifyRow> verify_reference_numbers(std::uint64_t seed) {
  std::vector<VerifyRow> rows;

  {
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const EchoSpec spec{random_unitary(2, rng), random_hermitian(2, rng),
                          StateVector::basis(2, 0), 1e-3};
      worst = std::max(worst, echo_fi_matches_qfi(spec).gap);
    }
    rows.push_back(row("echo |FI-QFI| at alpha=1e-3, worst of 5 random qubit (V,H)", 1e-4, worst,
                       0.0, "<="));
  }
  {
    Matrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    const EchoSpec spec{h / std::sqrt(2.0), HermitianOperator(pauli::z() / 2.0),
                        StateVector::basis(2, 0), 0.7};
    rows.push_back(row("Hadamard echo p0 at alpha=0.7 equals cos^2(alpha/2)",
                       std::pow(std::cos(0.35), 2), run_echo(spec).p0, 1e-12, "abs"));
  }
  {
    SqueezeSpec spec;
    spec.r = 0.5;
    rows.push_back(row("parametric amplification kick ratio at r=0.5 equals e^r", std::exp(0.5),
                       parametric_amplification(spec, 0.1).ratio, 0.01, "rel"));
  }
  {
    const Su11Result s = su11_interferometer(0.5, 1e-3, 25);
    rows.push_back(row("SU(1,1) joint-number FI / QFI at r=0.5", 0.99, s.fi / s.qfi, 0.0, ">="));
    rows.push_back(row("SU(1,1) QFI at r=0.5 equals sinh^2(2r)", std::pow(std::sinh(1.0), 2),
                       s.qfi, 1e-4, "rel"));
  }
  {
    const FiComparison cmp = fi_comparison(aw19_spec(1.0 / 1900.0));
    rows.push_back(row("weak value for the 0.9 postselection", 19.0, cmp.weak_value.real(), 1e-12,
                       "abs"));
    rows.push_back(row("postselected / unpostselected FI ratio equals |A_w|^2", 361.0,
                       cmp.fi_ps / cmp.fi_no_ps, 0.10, "rel"));
    const double i1 = weak_regime_validate(aw19_spec(1.0 / 1900.0)).infidelity;
    const double i2 = weak_regime_validate(aw19_spec(1.0 / 3800.0)).infidelity;
    rows.push_back(row("weak-regime infidelity ratio under alpha halving", 4.0, i1 / i2, 0.5,
                       "abs"));
  }
  {
    const Eigen::Vector3d n(0.0, 0.6, 0.8);
    rows.push_back(row("naive direction-averaged QFI", 2.0 / 3.0, naive_average_fi(1.0), 1e-9,
                       "abs"));
    rows.push_back(row("hindsight FI at alpha=pi/3", 1.0, hindsight({n, kPi / 3}).fi, 1e-6,
                       "abs"));
    rows.push_back(row("agnostic FI at alpha=pi/2", 1.0, agnostic({n, kPi / 2}).fi, 1e-6, "abs"));
    rows.push_back(row("agnostic survival at alpha=1 equals cos^2(alpha/2)",
                       std::pow(std::cos(0.5), 2), agnostic({n, 1.0}).distribution(0), 1e-12,
                       "abs"));
    rows.push_back(row("positronium FI at alpha=0.7", 4.0, positronium({n, 0.7}).fi, 1e-6,
                       "abs"));
    rows.push_back(row("agnostic dephasing FI at s=0.5", 4.0 / 3.0, agnostic_dephasing(0.5, n).fi,
                       1e-6, "abs"));
  }
  {
    const DensityOperator zero = DensityOperator::from_pure(StateVector::basis(2, 0));
    const OrderingReport dep = switch_vs_sequential_qfi(depolarizing_family(2), zero, 0.5);
    rows.push_back(row("switch QFI >= sequential QFI, depolarizing r=0.5", dep.qfi_seq,
                       dep.qfi_switch, 1e-6, ">="));
    const OrderingReport g1 = switch_vs_sequential_qfi(depolarizing_family(2), zero, 0.1);
    rows.push_back(row("relative switch gain at r=0.1 minus gain at r=0.5 (positive claimed)", 0.0,
                       g1.relative_gain - dep.relative_gain, 0.0, ">="));
    const OrderingReport uni =
        switch_vs_sequential_qfi(unitary_family(HermitianOperator(pauli::z() / 2.0)),
                                 DensityOperator::from_pure(plus_control()), 0.3);
    rows.push_back(row("switch QFI equals sequential QFI for a unitary family", uni.qfi_seq,
                       uni.qfi_switch, 1e-9, "abs"));
    const HermitianOperator gen(pauli::z() / 2.0);
    const ControlReadout ro = noise_robust_control_readout(
        [gen](double a) { return unitary_from_generator(gen, a); }, depolarize(1.0, 2),
        DensityOperator::from_pure(plus_control()), DensityOperator::from_pure(plus_control()),
        0.5);
    rows.push_back(row("full depolarization: system-marginal QFI", 0.0, ro.qfi_system, 1e-9,
                       "<="));
    rows.push_back(row("full depolarization: control-marginal QFI (brute-force oracle value)", 0.0,
                       ro.qfi_control, 1e-6, "abs"));
  }
  return rows;
}

std::string render_verify(const std::vector<VerifyRow>& rows) {
  std::string out = fmt::format("{:<76} {:>16} {:>16} {:>9} {:>4} {}\n", "claim", "expected",
                                "observed", "tolerance", "rel", "status");
  std::size_t passed = 0;
  for (const auto& r : rows) {
    out += fmt::format("{:<76} {:>16.10g} {:>16.10g} {:>9.2g} {:>4} {}\n", r.claim, r.expected,
                       r.observed, r.tolerance, r.relation, r.pass ? "PASS" : "FAIL");
    passed += r.pass ? 1 : 0;
  }
  out += fmt::format("{}/{} claims reproduced\n", passed, rows.size());
  return out;
}

}  // namespace revmet
