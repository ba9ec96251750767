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

#include "revmet/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace revmet {

namespace {

double resolve_step(std::optional<double> step, double alpha0) {
  const double h = step.value_or(default_step(alpha0));
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw PreconditionError("finite-difference step must be positive");
  }
  return h;
}

RealVector checked_distribution(const ParamDistribution& dist, double alpha) {
  RealVector p = dist.eval(alpha);
  if (p.size() == 0) throw PreconditionError("classical_fi: empty distribution");
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i)) || p(i) < tol::kNegativeProbability) {
      throw PreconditionError("classical_fi: negative or non-finite probability " +
                              std::to_string(p(i)) + " at alpha = " + std::to_string(alpha));
    }
  }
  if (std::abs(p.sum() - 1.0) > tol::kProbabilitySum) {
    throw PreconditionError("classical_fi: probabilities sum to " + std::to_string(p.sum()));
  }
  return p;
}

// Fourth-order central difference (f(-2h) - 8f(-h) + 8f(h) - f(2h)) / 12h.
template <typename T>
T five_point(const T& m2, const T& m1, const T& p1, const T& p2, double h) {
  return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
}

double clip_floor(double v) {
  if (v < tol::kFiFloor) {
    throw PreconditionError("Fisher information came out negative: " + std::to_string(v));
  }
  return std::max(v, 0.0);
}

}  // namespace

std::string to_string(FiMethod m) {
  switch (m) {
    case FiMethod::kAnalytic:
      return "analytic";
    case FiMethod::kFiniteDifference:
      return "finite-difference";
    case FiMethod::kSld:
      return "sld";
  }
  return "unknown";
}

double default_step(double alpha0) { return 1e-4 * std::max(1.0, std::abs(alpha0)); }

FiResult classical_fi(const ParamDistribution& dist, double alpha0, std::optional<double> step) {
  const double h = resolve_step(step, alpha0);
  const RealVector p0 = checked_distribution(dist, alpha0);
  std::vector<RealVector> p;
  for (double k : {-2.0, -1.0, 1.0, 2.0}) {
    p.push_back(checked_distribution(dist, alpha0 + k * h));
    if (p.back().size() != p0.size()) {
      throw PreconditionError("classical_fi: outcome count changes with alpha");
    }
  }
  const RealVector dp = five_point(p[0], p[1], p[2], p[3], h);
  double fi = 0.0;
  for (Eigen::Index x = 0; x < p0.size(); ++x) {
    if (p0(x) < tol::kZeroProbability) continue;
    fi += dp(x) * dp(x) / p0(x);
  }
  return {clip_floor(fi), alpha0, FiMethod::kFiniteDifference};
}

FiResult qfi_pure(const PureFamily& family, double alpha0, std::optional<double> step) {
  const double h = resolve_step(step, alpha0);
  const StateVector psi = family.eval(alpha0);
  std::vector<Vector> v;
  for (double k : {-2.0, -1.0, 1.0, 2.0}) {
    const StateVector s = family.eval(alpha0 + k * h);
    if (s.dim() != psi.dim()) throw PreconditionError("qfi_pure: state dimension changes with alpha");
    v.push_back(s.amplitudes());
  }
  const Vector dpsi = five_point(v[0], v[1], v[2], v[3], h);
  const double qfi = 4.0 * (dpsi.squaredNorm() - std::norm(psi.amplitudes().dot(dpsi)));
  return {clip_floor(qfi), alpha0, FiMethod::kFiniteDifference};
}

FiResult qfi_mixed(const MixedFamily& family, double alpha0, std::optional<double> step) {
  const double h = resolve_step(step, alpha0);
  const DensityOperator rho = family.eval(alpha0);
  std::vector<Matrix> m;
  for (double k : {-2.0, -1.0, 1.0, 2.0}) {
    const DensityOperator s = family.eval(alpha0 + k * h);
    if (s.dim() != rho.dim()) throw PreconditionError("qfi_mixed: state dimension changes with alpha");
    m.push_back(s.matrix());
  }
  const Matrix drho = five_point(m[0], m[1], m[2], m[3], h);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const RealVector lambda = es.eigenvalues().cwiseMax(0.0);
  const Matrix d = es.eigenvectors().adjoint() * drho * es.eigenvectors();
  double qfi = 0.0;
  for (Eigen::Index j = 0; j < d.rows(); ++j) {
    for (Eigen::Index k = 0; k < d.cols(); ++k) {
      const double denom = lambda(j) + lambda(k);
      if (denom > tol::kSldCutoff) qfi += 2.0 * std::norm(d(j, k)) / denom;
    }
  }
  return {clip_floor(qfi), alpha0, FiMethod::kSld};
}

MixedFamily as_mixed(const PureFamily& family) {
  return MixedFamily{[f = family.eval](double a) { return DensityOperator::from_pure(f(a)); }};
}

double generator_qfi_bound(const HermitianOperator& h) {
  const RealVector ev = h.eigenvalues();
  const double gap = ev(ev.size() - 1) - ev(0);
  return gap * gap;
}

double cramer_rao(const FiResult& fi, long long trials) {
  if (trials < 1) throw PreconditionError("cramer_rao: trial count must be >= 1");
  if (!(fi.value > 0.0)) {
    throw PreconditionError("cramer_rao: parameter unidentifiable (Fisher information is zero)");
  }
  return 1.0 / (static_cast<double>(trials) * fi.value);
}

RealVector povm_distribution(const std::vector<Matrix>& povm, const Matrix& rho) {
  RealVector p(static_cast<Eigen::Index>(povm.size()));
  for (std::size_t x = 0; x < povm.size(); ++x) {
    const double v = (povm[x] * rho).trace().real();
    p(static_cast<Eigen::Index>(x)) = (v < 0.0 && v > tol::kNegativeProbability) ? 0.0 : v;
  }
  return p;
}

}  // namespace revmet
