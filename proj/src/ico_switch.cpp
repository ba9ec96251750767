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

#include "revmet/ico_switch.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

namespace revmet {

namespace {

const Complex kI{0.0, 1.0};

std::vector<Matrix> depolarize_kraus(double r, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  if (d == 2) {
    return {std::sqrt(1.0 - 0.75 * r) * pauli::identity(), std::sqrt(r) / 2.0 * pauli::x(),
            std::sqrt(r) / 2.0 * pauli::y(), std::sqrt(r) / 2.0 * pauli::z()};
  }
  // Weyl operators X^a Z^b.
  Matrix shift = Matrix::Zero(n, n);
  Matrix clock = Matrix::Zero(n, n);
  const double dd = static_cast<double>(d);
  for (Eigen::Index k = 0; k < n; ++k) {
    shift((k + 1) % n, k) = 1.0;
    clock(k, k) = std::exp(2.0 * std::numbers::pi * kI * static_cast<double>(k) / dd);
  }
  std::vector<Matrix> ops;
  Matrix xa = Matrix::Identity(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    Matrix w = xa;
    for (Eigen::Index b = 0; b < n; ++b) {
      const double weight = (a == 0 && b == 0) ? std::sqrt(1.0 - r + r / (dd * dd))
                                               : std::sqrt(r) / dd;
      ops.push_back(weight * w);
      w = w * clock;
    }
    xa = shift * xa;
  }
  return ops;
}

}  // namespace

KrausChannel depolarize(double r, std::size_t d) {
  if (!(r >= 0.0 && r <= 1.0)) throw PreconditionError("depolarize: r outside [0, 1]");
  if (d < 2) throw PreconditionError("depolarize: dimension must be >= 2");
  return KrausChannel(depolarize_kraus(r, d));
}

ParamChannel depolarizing_family(std::size_t d) {
  if (d < 2) throw PreconditionError("depolarizing_family: dimension must be >= 2");
  return ParamChannel{[d](double r) { return KrausChannel(depolarize_kraus(r, d)); }};
}

ParamChannel unitary_family(const HermitianOperator& h) {
  auto prop = std::make_shared<const SpectralPropagator>(h);
  return ParamChannel{[prop](double a) { return KrausChannel::unitary(prop->unitary(a)); }};
}

std::vector<Matrix> switch_kraus(const KrausChannel& a, const KrausChannel& b) {
  if (a.input_dim() != b.input_dim() || a.output_dim() != a.input_dim() ||
      b.output_dim() != b.input_dim()) {
    throw PreconditionError("switch: channels must act on the same system dimension");
  }
  Matrix p0 = Matrix::Zero(2, 2);
  Matrix p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  std::vector<Matrix> out;
  out.reserve(a.kraus_ops().size() * b.kraus_ops().size());
  for (const Matrix& ai : a.kraus_ops()) {
    for (const Matrix& bj : b.kraus_ops()) {
      out.push_back(tensor(p0, Matrix(ai * bj)) + tensor(p1, Matrix(bj * ai)));
    }
  }
  return out;
}

SwitchOutput switch_apply(const KrausChannel& a, const KrausChannel& b,
                          const DensityOperator& rho_s, const DensityOperator& control) {
  if (control.dim() != 2) throw PreconditionError("switch_apply: control must be a qubit");
  if (rho_s.dim() != a.input_dim()) throw PreconditionError("switch_apply: system dimension");
  const std::vector<Matrix> s = switch_kraus(a, b);
  const Matrix input = tensor(control.matrix(), rho_s.matrix());
  const Matrix& rho = rho_s.matrix();
  const auto d = static_cast<Eigen::Index>(rho_s.dim());

  Matrix f = Matrix::Zero(d, d);
  Matrix r = Matrix::Zero(d, d);
  Matrix c = Matrix::Zero(d, d);
  for (const Matrix& ai : a.kraus_ops()) {
    for (const Matrix& bj : b.kraus_ops()) {
      const Matrix ab = ai * bj;
      const Matrix ba = bj * ai;
      f += ab * rho * ab.adjoint();
      r += ba * rho * ba.adjoint();
      c += ab * rho * ba.adjoint();
    }
  }
  return SwitchOutput{DensityOperator(apply_kraus(s, input), {2, rho_s.dim()}), f, r, c};
}

SwitchOutput switch_apply(const KrausChannel& a, const KrausChannel& b,
                          const DensityOperator& rho_s, const StateVector& control) {
  if (control.dim() != 2) throw PreconditionError("switch_apply: control must be a qubit");
  return switch_apply(a, b, rho_s, DensityOperator::from_pure(control));
}

StateVector plus_control() {
  return StateVector(Vector::Constant(2, Complex(1.0 / std::sqrt(2.0), 0.0)));
}

OrderingReport switch_vs_sequential_qfi(const ParamChannel& e, const DensityOperator& rho_s,
                                        double alpha0) {
  const DensityOperator control = DensityOperator::from_pure(plus_control());
  const MixedFamily sw{[e, rho_s, control](double a) {
    const KrausChannel ch = e.eval(a);
    return switch_apply(ch, ch, rho_s, control).joint;
  }};
  const MixedFamily seq{[e, rho_s](double a) {
    const KrausChannel ch = e.eval(a);
    return DensityOperator(apply_kraus(ch.after(ch).kraus_ops(), rho_s.matrix()));
  }};
  OrderingReport rep;
  rep.qfi_switch = qfi_mixed(sw, alpha0).value;
  rep.qfi_seq = qfi_mixed(seq, alpha0).value;
  rep.relative_gain = rep.qfi_seq > 0.0 ? (rep.qfi_switch - rep.qfi_seq) / rep.qfi_seq
                                        : std::numeric_limits<double>::infinity();
  return rep;
}

ControlReadout noise_robust_control_readout(const std::function<Matrix(double)>& u_family,
                                            const KrausChannel& noise,
                                            const DensityOperator& rho_s,
                                            const DensityOperator& rho_c, double alpha0) {
  const auto joint = [u_family, noise, rho_s, rho_c](double a) {
    const KrausChannel e = noise.after(KrausChannel::unitary(u_family(a)));
    return switch_apply(e, e, rho_s, rho_c).joint;
  };
  ControlReadout rep;
  rep.qfi_joint = qfi_mixed(MixedFamily{joint}, alpha0).value;
  rep.qfi_control =
      qfi_mixed(MixedFamily{[joint](double a) { return partial_trace(joint(a), {0}); }}, alpha0)
          .value;
  rep.qfi_system =
      qfi_mixed(MixedFamily{[joint](double a) { return partial_trace(joint(a), {1}); }}, alpha0)
          .value;
  return rep;
}

}  // namespace revmet
