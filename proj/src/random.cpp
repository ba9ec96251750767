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

#include "revmet/random.hpp"

#include <cmath>
#include <vector>

namespace revmet {

namespace {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

Matrix random_unitary(std::size_t dim, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  const Matrix z = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianOperator random_hermitian(std::size_t dim, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  const Matrix g = ginibre(n, n, rng);
  Matrix h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  if (norm > 0.0) h /= norm;
  return HermitianOperator(h);
}

StateVector random_state(std::size_t dim, Rng& rng) {
  return StateVector::normalized(ginibre(static_cast<Eigen::Index>(dim), 1, rng).col(0));
}

DensityOperator random_density(std::size_t dim, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  const Matrix g = ginibre(n, n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(0.5 * (rho + rho.adjoint()));
}

Eigen::Vector3d random_direction(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    const double x = normal(rng);
    const double y = normal(rng);
    const double z = normal(rng);
    v = Eigen::Vector3d(x, y, z);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

KrausChannel random_channel(std::size_t dim, std::size_t count, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  const Matrix u = random_unitary(dim * count, rng);
  // An isometry V: d → d·count; K_k is the k-th d×d block of V.
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < count; ++k) {
    ops.push_back(u.block(static_cast<Eigen::Index>(k) * d, 0, d, d));
  }
  return KrausChannel(ops);
}

}  // namespace revmet
