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

#include "revmet/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace revmet {

namespace {

const Complex kI{0.0, 1.0};

Dims infer_dims(Dims dims, std::size_t size) {
  if (dims.empty()) return Dims{size};
  return dims;
}

void check_dims(const Dims& dims, std::size_t size, const char* what) {
  if (total_dim(dims) != size) {
    throw PreconditionError(std::string(what) + ": subsystem dims do not multiply to " +
                            std::to_string(size));
  }
  for (auto d : dims) {
    if (d == 0) throw PreconditionError(std::string(what) + ": zero subsystem dimension");
  }
}

Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::size_t total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// --- StateVector -----------------------------------------------------------

StateVector::StateVector(Vector amplitudes, Dims dims)
    : amplitudes_(std::move(amplitudes)),
      dims_(infer_dims(std::move(dims), static_cast<std::size_t>(amplitudes_.size()))) {
  if (amplitudes_.size() == 0) throw PreconditionError("StateVector: empty amplitude vector");
  check_dims(dims_, dim(), "StateVector");
  const double norm2 = amplitudes_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > tol::kNorm) {
    throw PreconditionError("StateVector: squared norm " + std::to_string(norm2) +
                            " differs from 1");
  }
}

StateVector StateVector::normalized(const Vector& v, Dims dims) {
  const double n = v.norm();
  if (!(n > 1e-300) || !std::isfinite(n)) {
    throw PreconditionError("StateVector::normalized: zero or non-finite vector");
  }
  return StateVector(v / n, std::move(dims));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw PreconditionError("StateVector::basis: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

Matrix StateVector::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

// --- DensityOperator -------------------------------------------------------

DensityOperator::DensityOperator(Matrix matrix, Dims dims)
    : matrix_(std::move(matrix)),
      dims_(infer_dims(std::move(dims), static_cast<std::size_t>(matrix_.rows()))) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw PreconditionError("DensityOperator: matrix must be square and nonempty");
  }
  check_dims(dims_, dim(), "DensityOperator");
  if (!matrix_.allFinite()) throw PreconditionError("DensityOperator: non-finite entries");
  const double herm_err = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > tol::kDensityHermitian) {
    throw PreconditionError("DensityOperator: not Hermitian (deviation " +
                            std::to_string(herm_err) + ")");
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    throw PreconditionError("DensityOperator: trace " + std::to_string(tr) + " differs from 1");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin < tol::kPsdFloor) {
    throw PreconditionError("DensityOperator: negative eigenvalue " + std::to_string(lmin));
  }
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  return DensityOperator(psi.projector(), psi.dims());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw PreconditionError("maximally_mixed: zero dimension");
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityOperator(Matrix::Identity(n, n) / static_cast<double>(dim));
}

// --- HermitianOperator -----------------------------------------------------

HermitianOperator::HermitianOperator(const Matrix& matrix) {
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
    throw PreconditionError("HermitianOperator: matrix must be square and nonempty");
  }
  if (!matrix.allFinite()) throw PreconditionError("HermitianOperator: non-finite entries");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double err = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (err > tol::kHermitian * scale) {
    throw PreconditionError("HermitianOperator: not Hermitian (deviation " +
                            std::to_string(err) + ")");
  }
  matrix_ = 0.5 * (matrix + matrix.adjoint());
}

RealVector HermitianOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// --- KrausChannel ----------------------------------------------------------

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops) : kraus_(std::move(kraus_ops)) {
  if (kraus_.empty()) throw PreconditionError("KrausChannel: no Kraus operators");
  const auto rows = kraus_.front().rows();
  const auto cols = kraus_.front().cols();
  Matrix sum = Matrix::Zero(cols, cols);
  for (const auto& k : kraus_) {
    if (k.rows() != rows || k.cols() != cols) {
      throw PreconditionError("KrausChannel: Kraus operators differ in shape");
    }
    sum += k.adjoint() * k;
  }
  const double err = (sum - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (err > tol::kKrausCompleteness) {
    throw PreconditionError("KrausChannel: completeness violated by " + std::to_string(err));
  }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return KrausChannel({Matrix::Identity(n, n)});
}

KrausChannel KrausChannel::unitary(const Matrix& u) { return KrausChannel({u}); }

KrausChannel KrausChannel::after(const KrausChannel& first) const {
  if (first.output_dim() != input_dim()) {
    throw PreconditionError("KrausChannel::after: dimension mismatch");
  }
  std::vector<Matrix> out;
  out.reserve(kraus_.size() * first.kraus_.size());
  for (const auto& second_op : kraus_) {
    for (const auto& first_op : first.kraus_) out.push_back(second_op * first_op);
  }
  return KrausChannel(std::move(out));
}

// --- operations ------------------------------------------------------------

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix tensor(std::span<const Matrix> factors) {
  if (factors.empty()) return Matrix::Identity(1, 1);
  Matrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return StateVector(std::move(v), concat(a.dims(), b.dims()));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(tensor(a.matrix(), b.matrix()), concat(a.dims(), b.dims()));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& keep) {
  const Dims& dims = rho.dims();
  const std::size_t n = dims.size();
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) throw PreconditionError("partial_trace: subsystem index out of range");
    if (kept[k]) throw PreconditionError("partial_trace: repeated subsystem index");
    kept[k] = true;
  }

  Dims keep_dims;
  Dims trace_dims;
  for (std::size_t i = 0; i < n; ++i) (kept[i] ? keep_dims : trace_dims).push_back(dims[i]);
  const std::size_t dk = total_dim(keep_dims);
  const std::size_t dt = total_dim(trace_dims);

  // strides of the full (row-major, first factor most significant) index
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  // full_index[a * dt + t] for kept multi-index a and traced multi-index t
  std::vector<std::size_t> full_index(dk * dt);
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t t = 0; t < dt; ++t) {
      std::size_t ra = a;
      std::size_t rt = t;
      std::size_t idx = 0;
      for (std::size_t i = n; i-- > 0;) {
        if (kept[i]) {
          idx += (ra % dims[i]) * stride[i];
          ra /= dims[i];
        } else {
          idx += (rt % dims[i]) * stride[i];
          rt /= dims[i];
        }
      }
      full_index[a * dt + t] = idx;
    }
  }

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        s += m(static_cast<Eigen::Index>(full_index[a * dt + t]),
               static_cast<Eigen::Index>(full_index[b * dt + t]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
    }
  }
  if (keep_dims.empty()) keep_dims.push_back(1);
  return DensityOperator(std::move(out), std::move(keep_dims));
}

Matrix unitary_from_generator(const HermitianOperator& h, double alpha) {
  return SpectralPropagator(h).unitary(alpha);
}

SpectralPropagator::SpectralPropagator(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

Vector SpectralPropagator::apply(double alpha, const Vector& v) const {
  Vector c = eigenvectors_.adjoint() * v;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::exp(-kI * alpha * eigenvalues_(i));
  return eigenvectors_ * c;
}

Matrix SpectralPropagator::unitary(double alpha) const {
  Vector phases(eigenvalues_.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(-kI * alpha * eigenvalues_(i));
  }
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out.noalias() += k * rho * k.adjoint();
  return out;
}

DensityOperator apply_channel(const KrausChannel& channel, const DensityOperator& rho) {
  if (channel.input_dim() != rho.dim()) {
    throw PreconditionError("apply_channel: channel input dimension " +
                            std::to_string(channel.input_dim()) + " vs state dimension " +
                            std::to_string(rho.dim()));
  }
  Dims dims = channel.output_dim() == rho.dim() ? rho.dims() : Dims{};
  return DensityOperator(apply_kraus(channel.kraus_ops(), rho.matrix()), std::move(dims));
}

namespace pauli {
Matrix identity() { return Matrix::Identity(2, 2); }
Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}
Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

HermitianOperator pauli_direction(const Eigen::Vector3d& n) {
  if (std::abs(n.norm() - 1.0) > tol::kUnitVector) {
    throw PreconditionError("pauli_direction: direction is not a unit vector");
  }
  return HermitianOperator(n.x() * pauli::x() + n.y() * pauli::y() + n.z() * pauli::z());
}

StateVector optimal_probe(const HermitianOperator& h, double phi) {
  if (h.dim() < 2) throw PreconditionError("optimal_probe: generator dimension must be >= 2");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  const RealVector& ev = es.eigenvalues();
  const Eigen::Index last = ev.size() - 1;
  const double scale = std::max(1.0, std::max(std::abs(ev(0)), std::abs(ev(last))));
  Eigen::Index max_index = last;
  for (Eigen::Index i = 0; i <= last; ++i) {
    if (std::abs(ev(i) - ev(last)) <= 1e-12 * scale) {
      max_index = i;
      break;
    }
  }
  if (max_index == 0) max_index = 1;  // flat spectrum
  const Vector v = (es.eigenvectors().col(0) +
                    std::exp(-kI * phi) * es.eigenvectors().col(max_index)) /
                   std::sqrt(2.0);
  return StateVector::normalized(v);
}

FockSpace fock_space(std::size_t dim) {
  if (dim < 2) throw PreconditionError("fock_space: truncation dimension must be >= 2");
  const auto n = static_cast<Eigen::Index>(dim);
  FockSpace f;
  f.dim = dim;
  f.a = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) f.a(k - 1, k) = std::sqrt(static_cast<double>(k));
  f.adag = f.a.adjoint();
  f.q = (f.a + f.adag) / std::sqrt(2.0);
  f.p = (f.a - f.adag) / (kI * std::sqrt(2.0));
  f.number = f.adag * f.a;
  return f;
}

double fock_tail_mass(const Vector& amplitudes) {
  const auto n = amplitudes.size();
  if (n < 2) return 0.0;
  return std::norm(amplitudes(n - 1)) + std::norm(amplitudes(n - 2));
}

double expectation(const StateVector& psi, const Matrix& op) {
  return psi.amplitudes().dot(op * psi.amplitudes()).real();
}

double variance(const StateVector& psi, const Matrix& op) {
  const Vector a = op * psi.amplitudes();
  const double mean = psi.amplitudes().dot(a).real();
  return a.squaredNorm() - mean * mean;
}

bool is_unitary(const Matrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <=
         tolerance;
}

}  // namespace revmet
