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
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "revmet/echo.hpp"
#include "revmet/random.hpp"
#include "test_util.hpp"

namespace revmet {
namespace {

EchoSpec hadamard_spec(double alpha) {
  return EchoSpec{testing::hadamard(), HermitianOperator(pauli::z() / 2.0),
                  StateVector::basis(2, 0), alpha};
}

TEST(RunEcho, HadamardSurvivalIsCosineSquared) {
  for (double a : {-2.0, -0.3, 0.0, 0.7, 1.9, 3.0}) {
    const EchoRun run = run_echo(hadamard_spec(a));
    EXPECT_NEAR(run.p0, std::pow(std::cos(a / 2.0), 2), 1e-14) << a;
    EXPECT_NEAR(run.p0 + run.p1, 1.0, 1e-15);
  }
}

TEST(RunEcho, ZeroParameterAlwaysReturns) {
  Rng rng(41);
  const EchoSpec spec{random_unitary(3, rng), random_hermitian(3, rng), StateVector::basis(3, 0),
                      0.0};
  EXPECT_NEAR(run_echo(spec).p0, 1.0, 1e-14);
}

TEST(RunEcho, CommutingPreparationIsBlind) {
  for (double a : {0.1, 1.0, 2.5}) {
    const EchoRun run = run_echo(EchoSpec{Matrix::Identity(2, 2),
                                          HermitianOperator(pauli::z() / 2.0),
                                          StateVector::basis(2, 0), a});
    EXPECT_NEAR(run.p0, 1.0, 1e-14);
    EXPECT_NEAR(run.fi, 0.0, 1e-9);
  }
}

TEST(RunEcho, RejectsInvalidSpecs) {
  EXPECT_THROW(run_echo(EchoSpec{2.0 * Matrix::Identity(2, 2), HermitianOperator(pauli::z()),
                                 StateVector::basis(2, 0), 0.1}),
               PreconditionError);
  EXPECT_THROW(run_echo(EchoSpec{Matrix::Identity(3, 3), HermitianOperator(pauli::z()),
                                 StateVector::basis(2, 0), 0.1}),
               PreconditionError);
}

TEST(EchoGap, RandomTwoQubitInstances) {
  Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const EchoSpec spec{random_unitary(4, rng), random_hermitian(4, rng),
                        StateVector::basis(4, 0), 1e-3};
    const EchoGapReport rep = echo_fi_matches_qfi(spec);
    EXPECT_LE(rep.gap, 1e-4) << "trial " << trial;
    EXPECT_FALSE(rep.outside_weak_regime);
  }
}

TEST(EchoGap, ShrinksQuadratically) {
  Rng rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    const EchoSpec spec{random_unitary(2, rng), random_hermitian(2, rng),
                        StateVector::basis(2, 0), 0.04};
    const EchoGapReport rep = echo_fi_matches_qfi(spec);
    EXPECT_GE(rep.shrink_ratio, 3.5) << "trial " << trial;
    EXPECT_LE(rep.gap, rep.fitted_c * 0.04 * 0.04 * (1.0 + 1e-12));
  }
}

TEST(EchoGap, SmallAlphaLimitIsFourTimesVariance) {
  Rng rng(44);
  const Matrix v = random_unitary(3, rng);
  const HermitianOperator h = random_hermitian(3, rng);
  const StateVector probe(v.col(0));
  const EchoGapReport rep =
      echo_fi_matches_qfi(EchoSpec{v, h, StateVector::basis(3, 0), 1e-3});
  EXPECT_NEAR(rep.fi, 4.0 * variance(probe, h.matrix()), 1e-4);
}

TEST(EchoGap, OptimalPreparerReachesBound) {
  Rng rng(45);
  const HermitianOperator h = random_hermitian(4, rng);
  const StateVector probe = optimal_probe(h, 0.0);
  // Complete the probe to a unitary whose first column is the probe.
  Matrix seed = random_unitary(4, rng);
  seed.col(0) = probe.amplitudes();
  const Matrix v = Eigen::HouseholderQR<Matrix>(seed).householderQ();
  const Complex phase = probe.amplitudes().dot(v.col(0));
  Matrix prep = v;
  prep.col(0) *= phase;
  const EchoGapReport rep = echo_fi_matches_qfi(EchoSpec{prep, h, StateVector::basis(4, 0), 1e-3});
  EXPECT_NEAR(rep.qfi, generator_qfi_bound(h), 1e-6);
}

TEST(EchoGap, FlagsStrongRegimeAndRejectsZero) {
  EXPECT_TRUE(echo_fi_matches_qfi(hadamard_spec(0.2)).outside_weak_regime);
  EXPECT_THROW(echo_fi_matches_qfi(hadamard_spec(0.0)), PreconditionError);
}

TEST(RunEcho, SurvivalEvenInAlphaWhenMeanGeneratorVanishes) {
  Rng rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix v = random_unitary(3, rng);
    Matrix h = random_hermitian(3, rng).matrix();
    const StateVector probe(v.col(0));
    h -= expectation(probe, h) * Matrix::Identity(3, 3);
    const HermitianOperator gen(h);
    for (double a : {0.05, 0.4, 1.3}) {
      EXPECT_NEAR(run_echo(EchoSpec{v, gen, StateVector::basis(3, 0), a}).p0,
                  run_echo(EchoSpec{v, gen, StateVector::basis(3, 0), -a}).p0, 1e-12);
    }
  }
}

TEST(ParametricAmplification, NoSqueezingGivesUnitRatio) {
  SqueezeSpec spec;
  spec.r = 0.0;
  EXPECT_NEAR(parametric_amplification(spec, 0.1).ratio, 1.0, 1e-10);
}

TEST(ParametricAmplification, RatioTracksExponential) {
  for (double r : {0.25, 0.5, 1.0}) {
    SqueezeSpec spec;
    spec.r = r;
    const KickReport rep = parametric_amplification(spec, 0.1);
    EXPECT_NEAR(rep.ratio, std::exp(r), 0.01 * std::exp(r)) << "r " << r;
    EXPECT_LT(rep.tail_mass, tol::kFockTail);
  }
}

TEST(ParametricAmplification, ConvergedUnderDoubling) {
  SqueezeSpec spec;
  spec.r = 1.0;
  const double coarse = parametric_amplification(spec, 0.1).ratio;
  spec.fock_dim = 120;
  const double fine = parametric_amplification(spec, 0.1).ratio;
  EXPECT_LT(std::abs(coarse - fine) / fine, 1e-3);
}

TEST(ParametricAmplification, MonotoneInSqueezing) {
  SqueezeSpec spec;
  spec.fock_dim = 200;
  double previous = 0.0;
  for (int i = 0; i <= 6; ++i) {
    spec.r = 0.25 * i;
    const double ratio = parametric_amplification(spec, 0.1).ratio;
    EXPECT_GT(ratio, previous) << "r " << spec.r;
    previous = ratio;
  }
}

TEST(ParametricAmplification, RejectsTruncationViolation) {
  SqueezeSpec spec;
  spec.r = 1.5;
  spec.fock_dim = 12;
  EXPECT_THROW(parametric_amplification(spec, 0.1), PreconditionError);
  spec.r = -0.1;
  EXPECT_THROW(parametric_amplification(spec, 0.1), PreconditionError);
}

TEST(Su11, UnperturbedReturnsToVacuum) {
  const Su11Result s = su11_interferometer(0.5, 0.0, 25);
  EXPECT_NEAR(s.vacuum_probability, 1.0, 1e-12);
  Vector vac = Vector::Zero(s.output_state.size());
  vac(0) = 1.0;
  EXPECT_LT((s.output_state - vac).norm(), 1e-8);
}

TEST(Su11, VacuumProbeIsPhaseBlind) {
  const Su11Result s = su11_interferometer(0.0, 1e-3, 10);
  EXPECT_NEAR(s.fi, 0.0, 1e-9);
  EXPECT_NEAR(s.qfi, 0.0, 1e-9);
}

TEST(Su11, NumberMeasurementSaturatesQfi) {
  const Su11Result s = su11_interferometer(0.5, 1e-3, 25);
  EXPECT_GE(s.fi / s.qfi, 0.99);
  EXPECT_NEAR(s.qfi, std::pow(std::sinh(1.0), 2), 1e-4 * s.qfi);
  EXPECT_LT(s.tail_mass, tol::kFockTail);
}

TEST(Dicke, SpinAlgebraOnSymmetricSubspace) {
  const DickeOperators ops = dicke_operators(5);
  const Complex i{0.0, 1.0};
  EXPECT_LT(testing::max_abs(ops.sx * ops.sy - ops.sy * ops.sx - i * ops.sz), 1e-12);
  const Matrix casimir = ops.sx * ops.sx + ops.sy * ops.sy + ops.sz * ops.sz;
  EXPECT_LT(testing::max_abs(casimir - 2.5 * 3.5 * Matrix::Identity(6, 6)), 1e-12);
}

TEST(SpinSqueeze, SmallestTwoAxisCase) {
  const HermitianOperator h = spin_squeeze_generator(2, TwistKind::kTwoAxis, 0.0);
  EXPECT_EQ(h.dim(), 3u);
  EXPECT_LT(testing::max_abs(h.matrix() - h.matrix().adjoint()), 1e-15);
  EXPECT_GT(testing::max_abs(h.matrix()), 0.1);
}

TEST(SpinSqueeze, OneAxisIsDiagonal) {
  const Matrix m = spin_squeeze_generator(6, TwistKind::kOneAxis).matrix();
  EXPECT_LT(testing::max_abs(m - Matrix(m.diagonal().asDiagonal())), 1e-15);
}

TEST(SpinSqueeze, RejectsSingleSpin) {
  EXPECT_THROW(spin_squeeze_generator(1, TwistKind::kTwoAxis), PreconditionError);
}

TEST(SpinSqueeze, TwoAxisProbeBeatsCoherentEcho) {
  constexpr std::size_t kSpins = 8;
  const DickeOperators ops = dicke_operators(kSpins);
  const HermitianOperator sx(ops.sx);
  const StateVector polarized = StateVector::basis(kSpins + 1, 0);
  const double coherent =
      run_echo(EchoSpec{Matrix::Identity(kSpins + 1, kSpins + 1), sx, polarized, 1e-3}).fi;
  EXPECT_NEAR(coherent, static_cast<double>(kSpins), 1e-3);

  const HermitianOperator tat =
      spin_squeeze_generator(kSpins, TwistKind::kTwoAxis, std::numbers::pi / 2);
  const Matrix v = unitary_from_generator(tat, 0.5 * kSpins);
  const double squeezed = run_echo(EchoSpec{v, sx, polarized, 1e-3}).fi;
  EXPECT_GT(squeezed, 1.2 * coherent);
}

TEST(HolsteinPrimakoff, PolarizedStateHasNoDeviation) {
  const HolsteinPrimakoffReport rep = holstein_primakoff_check(50, StateVector::basis(51, 0));
  EXPECT_EQ(rep.deviation, 0.0);
  EXPECT_FALSE(rep.low_excitation_warning);
}

TEST(HolsteinPrimakoff, SingleExcitationAtHundredSpins) {
  EXPECT_LT(holstein_primakoff_check(100, StateVector::basis(101, 1)).relative_deviation, 0.01);
}

TEST(HolsteinPrimakoff, DeviationShrinksWithSpinCount) {
  const double small = holstein_primakoff_check(100, StateVector::basis(101, 2)).deviation;
  const double large = holstein_primakoff_check(400, StateVector::basis(401, 2)).deviation;
  EXPECT_LT(large, small);
}

TEST(HolsteinPrimakoff, WarnsOutsideLowExcitation) {
  EXPECT_TRUE(holstein_primakoff_check(10, StateVector::basis(11, 5)).low_excitation_warning);
  EXPECT_THROW(holstein_primakoff_check(10, StateVector::basis(5, 1)), PreconditionError);
}

}  // namespace
}  // namespace revmet
