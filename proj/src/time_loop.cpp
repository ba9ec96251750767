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

#include "revmet/time_loop.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace revmet {

namespace {

const Complex kI{0.0, 1.0};

Matrix field_unitary(const Eigen::Vector3d& n, double alpha) {
  // exp(-iα n·σ/2) = cos(α/2) I - i sin(α/2) n·σ
  const Matrix ns = pauli_direction(n).matrix();
  return std::cos(alpha / 2.0) * pauli::identity() - kI * std::sin(alpha / 2.0) * ns;
}

// Eigenvectors of m·σ: column 0 for -1, column 1 for +1.
Matrix axis_basis(const Eigen::Vector3d& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(pauli_direction(m).matrix());
  return es.eigenvectors();
}

// {p(singlet), p(not singlet)} for the two-qubit pure state psi.
RealVector singlet_test(const Vector& psi) {
  const Vector s = singlet().amplitudes();
  const Complex amp = s.dot(psi);
  RealVector p(2);
  p(0) = std::norm(amp);
  p(1) = (psi - amp * s).squaredNorm();
  return p;
}

std::vector<Matrix> dephasing_kraus_unchecked(double s, const Matrix& ns) {
  return {std::sqrt(1.0 - s / 2.0) * pauli::identity(), std::sqrt(s / 2.0) * ns};
}

TimeLoopResult finish(std::string name, const ParamDistribution& dist, double alpha,
                      double theoretical_max, std::optional<Eigen::Vector3d> used) {
  TimeLoopResult r;
  r.protocol = std::move(name);
  r.distribution = dist.eval(alpha);
  r.labels = dist.labels;
  r.fi = classical_fi(dist, alpha).value;
  r.theoretical_max = theoretical_max;
  r.direction_used = std::move(used);
  return r;
}

}  // namespace

void validate(const FieldSpec& field) {
  if (std::abs(field.direction.norm() - 1.0) > tol::kUnitVector) {
    throw PreconditionError("FieldSpec: direction is not a unit vector");
  }
  if (!std::isfinite(field.alpha)) throw PreconditionError("FieldSpec: alpha is not finite");
}

UnitaryOracle hidden_field(const Eigen::Vector3d& direction) {
  validate(FieldSpec{direction, 0.0});
  return [direction](double alpha) { return field_unitary(direction, alpha); };
}

Matrix singlet_preparer() {
  Matrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const Matrix id = pauli::identity();
  return tensor(pauli::z(), id) * tensor(id, pauli::x()) * cnot * tensor(h, id);
}

StateVector singlet() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return StateVector(v, {2, 2});
}

std::vector<double> naive_probe_qfis(double alpha) {
  const UnitaryOracle field = hidden_field(Eigen::Vector3d::UnitX());
  std::vector<double> out;
  for (const Matrix& axis : {pauli::x(), pauli::y(), pauli::z()}) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(axis);
    const Vector probe = es.eigenvectors().col(1);
    const PureFamily family{[field, probe](double a) { return StateVector(field(a) * probe); }};
    out.push_back(qfi_pure(family, alpha).value);
  }
  return out;
}

double naive_average_fi(double alpha) {
  if (!(alpha > 0.0 && alpha < std::numbers::pi)) {
    throw PreconditionError("naive_average_fi: alpha must lie in (0, pi)");
  }
  const std::vector<double> q = naive_probe_qfis(alpha);
  return (q[0] + q[1] + q[2]) / 3.0;
}

Eigen::Vector3d hindsight_axis(const Eigen::Vector3d& direction) {
  const Eigen::Vector3d c = direction.cross(Eigen::Vector3d::UnitZ());
  if (c.norm() < 1e-8) return Eigen::Vector3d::UnitX();
  return c.normalized();
}

ParamDistribution hindsight_distribution(const UnitaryOracle& field,
                                         const Eigen::Vector3d& revealed_direction) {
  const Matrix basis = axis_basis(hindsight_axis(revealed_direction));
  const Vector s = singlet().amplitudes();
  ParamDistribution dist;
  dist.labels = {"ancilla-,probe-", "ancilla-,probe+", "ancilla+,probe-", "ancilla+,probe+"};
  dist.eval = [field, basis, s](double alpha) {
    const Vector psi = tensor(field(alpha), pauli::identity()) * s;
    RealVector p(4);
    for (int anc = 0; anc < 2; ++anc) {
      for (int pr = 0; pr < 2; ++pr) {
        const Vector e = tensor(Matrix(basis.col(pr)), Matrix(basis.col(anc))).col(0);
        p(2 * anc + pr) = std::norm(e.dot(psi));
      }
    }
    return p;
  };
  return dist;
}

TimeLoopResult hindsight(const FieldSpec& field) {
  validate(field);
  return finish("hindsight", hindsight_distribution(hidden_field(field.direction), field.direction),
                field.alpha, 1.0, field.direction);
}

std::vector<StateVector> hindsight_conditional_states(const FieldSpec& field) {
  validate(field);
  const Matrix basis = axis_basis(hindsight_axis(field.direction));
  const Vector psi = tensor(field_unitary(field.direction, field.alpha), pauli::identity()) *
                     singlet().amplitudes();
  std::vector<StateVector> out;
  for (int anc = 0; anc < 2; ++anc) {
    Vector chi(2);
    for (int i = 0; i < 2; ++i) {
      chi(i) = std::conj(basis(0, anc)) * psi(2 * i) + std::conj(basis(1, anc)) * psi(2 * i + 1);
    }
    out.push_back(StateVector::normalized(chi));
  }
  return out;
}

ParamDistribution agnostic_distribution(const UnitaryOracle& field) {
  const Vector s = singlet().amplitudes();
  return ParamDistribution{[field, s](double alpha) {
    return singlet_test(tensor(field(alpha), pauli::identity()) * s);
  }, {"singlet", "not-singlet"}};
}

TimeLoopResult agnostic(const FieldSpec& field) {
  validate(field);
  return finish("agnostic", agnostic_distribution(hidden_field(field.direction)), field.alpha, 1.0,
                std::nullopt);
}

ParamDistribution positronium_distribution(const UnitaryOracle& field) {
  const Vector s = singlet().amplitudes();
  return ParamDistribution{[field, s](double alpha) {
    const Matrix u = field(alpha);
    return singlet_test(tensor(u, Matrix(u.adjoint())) * s);
  }, {"singlet", "not-singlet"}};
}

TimeLoopResult positronium(const FieldSpec& field) {
  validate(field);
  return finish("positronium", positronium_distribution(hidden_field(field.direction)),
                field.alpha, 4.0, std::nullopt);
}

std::vector<Matrix> dephasing_kraus(double s, const Eigen::Vector3d& direction) {
  if (!(s >= 0.0 && s <= 1.0)) throw PreconditionError("dephasing_kraus: strength outside [0, 1]");
  return dephasing_kraus_unchecked(s, pauli_direction(direction).matrix());
}

ParamDistribution dephasing_distribution(const ChannelOracle& channel) {
  const Matrix proj = singlet().projector();
  const std::vector<Matrix> povm{proj, Matrix::Identity(4, 4) - proj};
  return ParamDistribution{[channel, proj, povm](double s) {
    std::vector<Matrix> lifted;
    for (const Matrix& k : channel(s)) lifted.push_back(tensor(k, pauli::identity()));
    return povm_distribution(povm, apply_kraus(lifted, proj));
  }, {"singlet", "not-singlet"}};
}

TimeLoopResult agnostic_dephasing(double strength, const Eigen::Vector3d& direction) {
  dephasing_kraus(strength, direction);  // range and direction checks
  const Matrix ns = pauli_direction(direction).matrix();
  const ChannelOracle channel = [ns](double s) { return dephasing_kraus_unchecked(s, ns); };
  const ParamDistribution dist = dephasing_distribution(channel);

  TimeLoopResult r;
  r.protocol = "agnostic-dephasing";
  r.distribution = dist.eval(strength);
  r.labels = dist.labels;
  if (strength == 0.0) {
    r.fi = std::numeric_limits<double>::infinity();
    r.theoretical_max = r.fi;
    return r;
  }
  r.fi = classical_fi(dist, strength).value;
  const Matrix proj = singlet().projector();
  const MixedFamily joint{[channel, proj](double s) {
    std::vector<Matrix> lifted;
    for (const Matrix& k : channel(s)) lifted.push_back(tensor(k, pauli::identity()));
    return DensityOperator(apply_kraus(lifted, proj), {2, 2});
  }};
  r.theoretical_max = qfi_mixed(joint, strength).value;
  return r;
}

EchoSpec agnostic_echo_spec(const FieldSpec& field) {
  validate(field);
  const Matrix half = 0.5 * pauli_direction(field.direction).matrix();
  return EchoSpec{singlet_preparer(), HermitianOperator(tensor(half, pauli::identity())),
                  StateVector::basis(4, 0), field.alpha};
}

EchoSpec positronium_echo_spec(const FieldSpec& field) {
  validate(field);
  const Matrix half = 0.5 * pauli_direction(field.direction).matrix();
  const Matrix id = pauli::identity();
  return EchoSpec{singlet_preparer(), HermitianOperator(tensor(half, id) - tensor(id, half)),
                  StateVector::basis(4, 0), field.alpha};
}

}  // namespace revmet
