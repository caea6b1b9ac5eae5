// Shared test fixtures: small stable systems with known closed forms.
#pragma once

#include <random>

#include "volterra/config.hpp"
#include "volterra/system.hpp"

namespace volterra::testing {

/// f = -1, g = 1, b = c = 1, T = 1. The order-p kernel is
/// exp(f (tau_1 + ... + tau_p)) and the impulse response of the total system
/// to a unit impulse train sample is (e - 1) e^{-n}.
inline BilinearSystem scalar_fixture() {
  BilinearSystem sys;
  sys.F = Matrix::Constant(1, 1, -1.0);
  sys.G = Matrix::Constant(1, 1, 1.0);
  sys.b = Vector::Constant(1, 1.0);
  sys.c = Vector::Constant(1, 1.0);
  sys.T = 1.0;
  return sys;
}

inline Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = uniform_pm1(rng);
  }
  return m;
}

/// Random system with the state matrix shifted left of the imaginary axis:
/// F = R - (||R||_F + 0.8) I keeps the log norm at or below -0.8, so the
/// flow decays at least like e^{-0.8 t}.
inline BilinearSystem random_stable_system(int n, std::uint64_t seed,
                                           double T = 1.0) {
  std::mt19937_64 rng(seed);
  BilinearSystem sys;
  const Matrix r = random_matrix(n, n, rng);
  sys.F = r - (r.norm() + 0.8) * Matrix::Identity(n, n);
  sys.G = 0.6 * random_matrix(n, n, rng);
  sys.b = random_matrix(n, 1, rng);
  sys.c = random_matrix(n, 1, rng);
  sys.T = T;
  return sys;
}

/// N = 3 with strictly lower-triangular G (nilpotency index 3) and lower-
/// triangular F, so every kernel factor keeps the grading and the Volterra
/// series terminates at order 3 exactly.
inline BilinearSystem nilpotent_fixture() {
  BilinearSystem sys;
  sys.F = Matrix::Zero(3, 3);
  sys.F << -1.0, 0.0, 0.0,
            0.4, -1.3, 0.0,
            0.3, -0.2, -0.8;
  sys.G = Matrix::Zero(3, 3);
  sys.G(1, 0) = 0.9;
  sys.G(2, 0) = -0.4;
  sys.G(2, 1) = 0.7;
  sys.b = Vector::Zero(3);
  sys.b << 1.0, 0.5, -0.25;
  sys.c = Vector::Zero(3);
  sys.c << 1.0, -0.5, 0.75;
  sys.T = 1.0;
  return sys;
}

/// Explicit order-3 chain with stage widths M_1 = M_2 = 2 and dense
/// feedthrough matrices (mu_1 = 2, mu_2 = 4).
inline FactorChain matrix_chain_p3() {
  FactorChain chain;
  chain.T = 1.0;

  LtiFactor f1;  // 1 -> 2
  f1.A = Matrix::Zero(2, 2);
  f1.A << -1.0, 0.3, 0.0, -1.5;
  f1.B = Matrix::Zero(2, 1);
  f1.B << 1.0, 0.5;
  f1.C = Matrix::Zero(2, 2);
  f1.C << 1.0, 0.25, 0.5, 1.0;  // keeps H_1(0) = C B dense

  LtiFactor f2;  // 2 -> 2
  f2.A = Matrix::Zero(2, 2);
  f2.A << -1.2, 0.0, 0.4, -0.9;
  f2.B = Matrix::Zero(2, 2);
  f2.B << 1.0, 0.2, -0.3, 1.0;
  f2.C = Matrix::Zero(2, 2);
  f2.C << 0.8, 0.1, 0.2, 1.1;

  LtiFactor f3;  // 2 -> 1
  f3.A = Matrix::Zero(2, 2);
  f3.A << -1.1, 0.2, 0.0, -1.4;
  f3.B = Matrix::Zero(2, 2);
  f3.B << 1.0, -0.2, 0.5, 0.9;
  f3.C = Matrix::Zero(1, 2);
  f3.C << 1.0, 0.6;

  chain.factors = {f1, f2, f3};
  chain.validate();
  return chain;
}

inline SignalSequence random_signal(int length, std::uint64_t seed,
                                    double T = 1.0) {
  std::mt19937_64 rng(seed);
  SignalSequence s = zeros(length, T);
  for (double& v : s.samples) v = uniform_pm1(rng);
  return s;
}

}  // namespace volterra::testing
