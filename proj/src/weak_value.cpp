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

#include "revmet/weak_value.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace revmet {

namespace {

const Complex kI{0.0, 1.0};

// Fourier data of a probe: φ̂ and the angular wavenumbers in FFT order.
struct Spectrum {
  Vector phi_hat;
  RealVector k;
  double dq = 0.0;

  explicit Spectrum(const GridProbe& probe) : dq(probe.dq()) {
    const auto m = static_cast<Eigen::Index>(probe.size());
    Eigen::FFT<double> fft;
    fft.fwd(phi_hat, probe.amplitudes());
    k.resize(m);
    const double scale = 2.0 * std::numbers::pi / (static_cast<double>(m) * dq);
    for (Eigen::Index j = 0; j < m; ++j) {
      k(j) = scale * static_cast<double>(j < m / 2 ? j : j - m);
    }
  }

  // exp(-i z P)φ for complex z; real z is a pure translation by z.
  Vector evolve(Complex z) const {
    Vector spec(phi_hat.size());
    for (Eigen::Index j = 0; j < spec.size(); ++j) spec(j) = phi_hat(j) * std::exp(-kI * z * k(j));
    Vector out;
    Eigen::FFT<double> fft;
    fft.inv(out, spec);
    return out;
  }
};

struct Branches {
  RealVector a;  // eigenvalues of A
  Matrix vecs;   // eigenvectors as columns
  Vector c;      // ⟨a_n|i⟩
  Vector f;      // ⟨a_n|f⟩
};

Branches branches(const WvaSpec& spec) {
  const auto d = spec.observable.dim();
  if (spec.psi_i.dim() != d || spec.psi_f.dim() != d) {
    throw PreconditionError("weak-value: A, psi_i and psi_f dimensions differ");
  }
  if (!(spec.alpha >= 0.0)) throw PreconditionError("weak-value: alpha must be >= 0");
  Eigen::SelfAdjointEigenSolver<Matrix> es(spec.observable.matrix());
  Branches b;
  b.a = es.eigenvalues();
  b.vecs = es.eigenvectors();
  b.c = b.vecs.adjoint() * spec.psi_i.amplitudes();
  b.f = b.vecs.adjoint() * spec.psi_f.amplitudes();
  return b;
}

double l2_on_grid(const Vector& v, double dq) { return v.squaredNorm() * dq; }

// Unnormalized postselected probe Σ_n ⟨f|a_n⟩⟨a_n|i⟩ φ(q - α a_n).
Vector postselected_amplitudes(const Spectrum& s, const Branches& b, double alpha) {
  Vector out = Vector::Zero(s.phi_hat.size());
  for (Eigen::Index n = 0; n < b.a.size(); ++n) {
    const Complex w = std::conj(b.f(n)) * b.c(n);
    if (std::abs(w) == 0.0) continue;
    out += w * s.evolve(alpha * b.a(n));
  }
  return out;
}

Matrix joint_amplitudes(const Spectrum& s, const Branches& b, double alpha) {
  Matrix joint = Matrix::Zero(b.a.size(), s.phi_hat.size());
  for (Eigen::Index n = 0; n < b.a.size(); ++n) {
    joint += b.c(n) * b.vecs.col(n) * s.evolve(alpha * b.a(n)).transpose();
  }
  return joint;
}

}  // namespace

GridProbe::GridProbe(double half_width, Vector amplitudes)
    : half_width_(half_width), amplitudes_(std::move(amplitudes)) {
  if (!(half_width_ > 0.0)) throw PreconditionError("GridProbe: half width must be positive");
  if (amplitudes_.size() < 8) throw PreconditionError("GridProbe: need at least 8 grid points");
  const double norm = l2_on_grid(amplitudes_, dq());
  if (std::abs(norm - 1.0) > tol::kGridNorm) {
    throw PreconditionError("GridProbe: sum |phi|^2 dq = " + std::to_string(norm) + ", expected 1");
  }
  const auto last = amplitudes_.size() - 1;
  if (std::abs(amplitudes_(0)) >= tol::kGridBoundary ||
      std::abs(amplitudes_(last)) >= tol::kGridBoundary) {
    throw PreconditionError("GridProbe: wavefunction not contained in [-L, L]");
  }
}

RealVector GridProbe::probabilities() const { return amplitudes_.cwiseAbs2() * dq(); }

double GridProbe::mean_position() const {
  const RealVector p = probabilities();
  double mean = 0.0;
  for (std::size_t k = 0; k < size(); ++k) mean += position(k) * p(static_cast<Eigen::Index>(k));
  return mean;
}

double GridProbe::spread() const {
  const RealVector p = probabilities();
  const double mean = mean_position();
  double var = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const double dx = position(k) - mean;
    var += dx * dx * p(static_cast<Eigen::Index>(k));
  }
  return std::sqrt(var);
}

GridProbe gaussian_probe(double spread, double half_width, std::size_t count) {
  if (!(spread > 0.0)) throw PreconditionError("gaussian_probe: spread must be positive");
  if (half_width == 0.0) half_width = 12.0 * spread;
  const auto m = static_cast<Eigen::Index>(count);
  const double dq = 2.0 * half_width / static_cast<double>(count);
  Vector phi(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double q = -half_width + static_cast<double>(k) * dq;
    phi(k) = std::exp(-q * q / (4.0 * spread * spread));
  }
  phi /= std::sqrt(l2_on_grid(phi, dq));
  return GridProbe(half_width, std::move(phi));
}

Vector shift_on_grid(const GridProbe& probe, double s) { return Spectrum(probe).evolve(s); }

double weakness_ratio(const WvaSpec& spec) {
  const RealVector ev = spec.observable.eigenvalues();
  return spec.alpha * (ev.maxCoeff() - ev.minCoeff()) / spec.probe.spread();
}

Complex weak_value(const HermitianOperator& a, const StateVector& psi_i,
                   const StateVector& psi_f) {
  if (psi_i.dim() != a.dim() || psi_f.dim() != a.dim()) {
    throw PreconditionError("weak_value: dimension mismatch");
  }
  const Complex overlap = psi_f.amplitudes().dot(psi_i.amplitudes());
  if (std::abs(overlap) <= tol::kOrthogonalPostselection) {
    throw PreconditionError("weak_value: pre- and postselected states are orthogonal");
  }
  return psi_f.amplitudes().dot(a.matrix() * psi_i.amplitudes()) / overlap;
}

Matrix coupled_joint_state(const WvaSpec& spec) {
  return joint_amplitudes(Spectrum(spec.probe), branches(spec), spec.alpha);
}

Postselected couple_and_postselect(const WvaSpec& spec) {
  const Branches b = branches(spec);
  const Spectrum s(spec.probe);
  Vector out = postselected_amplitudes(s, b, spec.alpha);
  const double success = l2_on_grid(out, s.dq);
  if (success <= tol::kOrthogonalPostselection * tol::kOrthogonalPostselection) {
    throw PreconditionError("couple_and_postselect: postselected branch has zero norm");
  }
  out /= std::sqrt(success);
  return Postselected{GridProbe(spec.probe.half_width(), std::move(out)), success};
}

WeakRegimeReport weak_regime_validate(const WvaSpec& spec) {
  WeakRegimeReport rep;
  rep.weak_value = weak_value(spec.observable, spec.psi_i, spec.psi_f);
  rep.outside_weak_regime = spec.alpha * std::abs(rep.weak_value) > 0.05 * spec.probe.spread();

  const Postselected exact = couple_and_postselect(spec);
  const Spectrum s(spec.probe);
  Vector approx = s.evolve(spec.alpha * rep.weak_value);
  approx /= std::sqrt(l2_on_grid(approx, s.dq));

  const double overlap =
      std::min(1.0, std::abs(approx.dot(exact.probe.amplitudes())) * s.dq);
  rep.infidelity = 1.0 - overlap;
  rep.sine_distance = std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
  return rep;
}

FiComparison fi_comparison(const WvaSpec& spec) {
  FiComparison res;
  res.weak_value = weak_value(spec.observable, spec.psi_i, spec.psi_f);
  const auto b = std::make_shared<const Branches>(branches(spec));
  const auto s = std::make_shared<const Spectrum>(spec.probe);
  const Eigen::Index m = s->phi_hat.size();
  const Eigen::Index d = b->a.size();

  ParamDistribution joint{[b, s, m, d](double a) {
    RealVector p(d * m);
    for (Eigen::Index n = 0; n < d; ++n) {
      p.segment(n * m, m) = std::norm(b->c(n)) * s->evolve(a * b->a(n)).cwiseAbs2() * s->dq;
    }
    return p;
  }, {}};
  ParamDistribution position{[b, s, m, d](double a) {
    RealVector p = RealVector::Zero(m);
    for (Eigen::Index n = 0; n < d; ++n) {
      p += std::norm(b->c(n)) * s->evolve(a * b->a(n)).cwiseAbs2() * s->dq;
    }
    return p;
  }, {}};
  ParamDistribution post{[b, s](double a) {
    const RealVector p = postselected_amplitudes(*s, *b, a).cwiseAbs2();
    return RealVector(p / p.sum());
  }, {}};

  res.fi_no_ps = classical_fi(joint, spec.alpha).value;
  res.fi_position_only = classical_fi(position, spec.alpha).value;
  res.fi_ps = classical_fi(post, spec.alpha).value;
  res.success_prob = couple_and_postselect(spec).success_prob;

  const double spread = spec.probe.spread();
  const Matrix a2 = spec.observable.matrix() * spec.observable.matrix();
  res.analytic_no_ps = spec.psi_i.amplitudes().dot(a2 * spec.psi_i.amplitudes()).real() /
                       (spread * spread);
  res.analytic_ps = std::norm(res.weak_value) / (spread * spread);

  PureFamily joint_state{[b, s](double a) {
    const Matrix j = joint_amplitudes(*s, *b, a);
    // Row-major flattening: target index most significant.
    Vector flat(j.size());
    for (Eigen::Index r = 0; r < j.rows(); ++r) flat.segment(r * j.cols(), j.cols()) = j.row(r);
    return StateVector(std::sqrt(s->dq) * flat);
  }};
  res.qfi_joint = qfi_pure(joint_state, spec.alpha).value;
  return res;
}

}  // namespace revmet
