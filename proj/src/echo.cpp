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

#include "revmet/echo.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace revmet {

namespace {

const Complex kI{0.0, 1.0};

void validate(const EchoSpec& spec) {
  const auto d = spec.generator.dim();
  if (static_cast<std::size_t>(spec.prep.rows()) != d ||
      static_cast<std::size_t>(spec.prep.cols()) != d || spec.initial.dim() != d) {
    throw PreconditionError("run_echo: V, H and |0> must share one dimension");
  }
  if (!is_unitary(spec.prep)) throw PreconditionError("run_echo: preparation V is not unitary");
}

void check_tail(double mass, const char* where) {
  if (mass >= tol::kFockTail) {
    throw PreconditionError(std::string(where) + ": Fock truncation violated (tail mass " +
                            std::to_string(mass) + ")");
  }
}

}  // namespace

PureFamily echo_probe_family(const EchoSpec& spec) {
  validate(spec);
  auto prop = std::make_shared<const SpectralPropagator>(spec.generator);
  Vector psi = spec.prep * spec.initial.amplitudes();
  Dims dims = spec.initial.dims();
  return PureFamily{[prop, psi = std::move(psi), dims](double a) {
    return StateVector(prop->apply(a, psi), dims);
  }};
}

EchoRun run_echo(const EchoSpec& spec) {
  validate(spec);
  auto prop = std::make_shared<const SpectralPropagator>(spec.generator);
  Vector psi = spec.prep * spec.initial.amplitudes();
  Matrix vdag = spec.prep.adjoint();
  Vector init = spec.initial.amplitudes();

  EchoRun run;
  run.distribution.labels = {"returned", "not-returned"};
  run.distribution.eval = [prop, psi = std::move(psi), vdag = std::move(vdag),
                           init = std::move(init)](double a) {
    const Vector out = vdag * prop->apply(a, psi);
    const Complex amp0 = init.dot(out);
    RealVector p(2);
    p(0) = std::norm(amp0);
    p(1) = (out - amp0 * init).squaredNorm();
    return p;
  };
  const RealVector p = run.distribution.eval(spec.alpha);
  run.p0 = p(0);
  run.p1 = p(1);
  run.fi = classical_fi(run.distribution, spec.alpha).value;
  run.qfi = qfi_pure(echo_probe_family(spec), spec.alpha).value;
  return run;
}

EchoGapReport echo_fi_matches_qfi(const EchoSpec& spec) {
  if (spec.alpha == 0.0) throw PreconditionError("echo_fi_matches_qfi: alpha must be nonzero");
  EchoGapReport rep;
  rep.outside_weak_regime = std::abs(spec.alpha) > 0.05;

  const auto gap_at = [&spec](double a, double* fi, double* qfi) {
    EchoSpec s = spec;
    s.alpha = a;
    const double step = std::abs(a) / 100.0;
    const EchoRun run = run_echo(s);
    const double f = classical_fi(run.distribution, a, step).value;
    const double q = qfi_pure(echo_probe_family(s), a, step).value;
    if (fi) *fi = f;
    if (qfi) *qfi = q;
    return std::abs(f - q);
  };
  rep.gap = gap_at(spec.alpha, &rep.fi, &rep.qfi);
  rep.gap_half = gap_at(spec.alpha / 2.0, nullptr, nullptr);
  rep.shrink_ratio = rep.gap_half > 0.0 ? rep.gap / rep.gap_half : 0.0;
  rep.fitted_c = rep.gap / (spec.alpha * spec.alpha);
  return rep;
}

// --- single-mode squeezing ------------------------------------------------

HermitianOperator squeeze_generator(const FockSpace& fock, double phi) {
  const Matrix a2 = fock.a * fock.a;
  const Matrix ad2 = fock.adag * fock.adag;
  return HermitianOperator(0.5 * kI * (std::exp(-2.0 * kI * phi) * a2 -
                                       std::exp(2.0 * kI * phi) * ad2));
}

KickReport parametric_amplification(const SqueezeSpec& spec, double alpha) {
  if (spec.r < 0.0) throw PreconditionError("parametric_amplification: r must be >= 0");
  const FockSpace fock = fock_space(spec.fock_dim);
  const SpectralPropagator squeeze(squeeze_generator(fock, spec.phi));
  const SpectralPropagator kick{HermitianOperator(fock.q)};
  const double strength = spec.g * alpha * spec.t;

  const Vector vacuum = StateVector::basis(spec.fock_dim, 0).amplitudes();
  const Vector squeezed = squeeze.apply(spec.r, vacuum);
  const Vector kicked = kick.apply(strength, squeezed);
  const Vector out = squeeze.apply(-spec.r, kicked);
  const Vector bare = kick.apply(strength, vacuum);

  KickReport rep;
  rep.tail_mass = std::max({fock_tail_mass(squeezed), fock_tail_mass(out), fock_tail_mass(bare)});
  check_tail(rep.tail_mass, "parametric_amplification");

  rep.p_shift = out.dot(fock.p * out).real();
  rep.p_shift_unsqueezed = bare.dot(fock.p * bare).real();
  rep.ratio = rep.p_shift_unsqueezed != 0.0 ? rep.p_shift / rep.p_shift_unsqueezed : 0.0;
  return rep;
}

// --- SU(1,1) --------------------------------------------------------------

Su11Result su11_interferometer(double r, double alpha, std::size_t fock_dim) {
  if (r < 0.0) throw PreconditionError("su11_interferometer: r must be >= 0");
  const FockSpace mode = fock_space(fock_dim);
  const auto d = static_cast<Eigen::Index>(fock_dim);
  const Matrix id = Matrix::Identity(d, d);
  const Matrix a = tensor(mode.a, id);
  const Matrix b = tensor(id, mode.a);
  // S(r) = exp(r(a†b† - ba)) = exp(-i r G)
  const HermitianOperator g(kI * (a.adjoint() * b.adjoint() - b * a));
  auto squeeze = std::make_shared<const SpectralPropagator>(g);

  Vector vac = Vector::Zero(d * d);
  vac(0) = 1.0;
  const Vector squeezed = squeeze->apply(r, vac);

  double tail = 0.0;
  for (Eigen::Index k = 0; k < d * d; ++k) {
    if (k / d >= d - 2 || k % d >= d - 2) tail += std::norm(squeezed(k));
  }
  check_tail(tail, "su11_interferometer");

  const Dims dims{fock_dim, fock_dim};
  auto output = [squeeze, squeezed, r, d](double phase) {
    Vector v = squeezed;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      v(k) *= std::exp(kI * phase * static_cast<double>(k / d));
    }
    return squeeze->apply(-r, v);
  };

  Su11Result res;
  res.tail_mass = tail;
  res.distribution.eval = [output](double phase) {
    const Vector v = output(phase);
    RealVector p = v.cwiseAbs2();
    return RealVector(p / p.sum());
  };
  res.output_state = output(alpha);
  res.vacuum_probability = std::norm(res.output_state(0));
  res.fi = classical_fi(res.distribution, alpha).value;
  const PureFamily family{[output, dims](double phase) {
    return StateVector(output(phase), dims);
  }};
  res.qfi = qfi_pure(family, alpha).value;
  return res;
}

// --- collective spins -----------------------------------------------------

DickeOperators dicke_operators(std::size_t n_spins) {
  if (n_spins < 1) throw PreconditionError("dicke_operators: need at least one spin");
  const auto dim = static_cast<Eigen::Index>(n_spins + 1);
  const double n = static_cast<double>(n_spins);
  DickeOperators ops;
  ops.n = n_spins;
  ops.sz = Matrix::Zero(dim, dim);
  ops.sminus = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double kk = static_cast<double>(k);
    ops.sz(k, k) = kk - n / 2.0;
    if (k > 0) ops.sminus(k - 1, k) = std::sqrt(kk * (n - kk + 1.0));
  }
  ops.splus = ops.sminus.adjoint();
  ops.sx = 0.5 * (ops.splus + ops.sminus);
  ops.sy = (ops.splus - ops.sminus) / (2.0 * kI);
  return ops;
}

HermitianOperator spin_squeeze_generator(std::size_t n_spins, TwistKind kind, double phi) {
  if (n_spins < 2) throw PreconditionError("spin_squeeze_generator: need N >= 2");
  const DickeOperators ops = dicke_operators(n_spins);
  if (kind == TwistKind::kOneAxis) return HermitianOperator(ops.sz * ops.sz);
  const Matrix sm2 = ops.sminus * ops.sminus;
  const Matrix sp2 = ops.splus * ops.splus;
  const double n = static_cast<double>(n_spins);
  return HermitianOperator(kI / (2.0 * n) *
                           (std::exp(-2.0 * kI * phi) * sm2 - std::exp(2.0 * kI * phi) * sp2));
}

HolsteinPrimakoffReport holstein_primakoff_check(std::size_t n_spins, const StateVector& state) {
  if (state.dim() != n_spins + 1) {
    throw PreconditionError("holstein_primakoff_check: state must live on N+1 Dicke levels");
  }
  const DickeOperators ops = dicke_operators(n_spins);
  const auto dim = static_cast<Eigen::Index>(n_spins + 1);
  Matrix a_eff = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 1; k < dim; ++k) a_eff(k - 1, k) = std::sqrt(static_cast<double>(k));

  const double n = static_cast<double>(n_spins);
  const Vector exact = ops.sminus * state.amplitudes();
  const Vector approx = std::sqrt(n) * a_eff * state.amplitudes();

  HolsteinPrimakoffReport rep;
  rep.deviation = (exact - approx).norm();
  const double scale = approx.norm();
  rep.relative_deviation = scale > 0.0 ? rep.deviation / scale : 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    rep.mean_excitation += static_cast<double>(k) * std::norm(state.amplitudes()(k));
  }
  rep.low_excitation_warning = rep.mean_excitation > n / 10.0;
  return rep;
}

}  // namespace revmet
