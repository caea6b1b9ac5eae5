#include "volterra/system.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace volterra {

void BilinearSystem::validate() const {
  const auto n = F.rows();
  if (n == 0 || F.cols() != n) {
    throw std::invalid_argument("BilinearSystem: F must be square");
  }
  if (G.rows() != n || G.cols() != n) {
    throw std::invalid_argument("BilinearSystem: G dimension mismatch");
  }
  if (b.size() != n || c.size() != n) {
    throw std::invalid_argument("BilinearSystem: b/c dimension mismatch");
  }
  if (!(T > 0.0)) {
    throw std::invalid_argument("BilinearSystem: T must be > 0");
  }
  require_finite(F, "BilinearSystem F");
  require_finite(G, "BilinearSystem G");
  require_finite(b, "BilinearSystem b");
  require_finite(c, "BilinearSystem c");
}

Matrix LtiFactor::at(double tau) const {
  if (tau < 0.0) {
    throw std::invalid_argument("LtiFactor::at: tau must be >= 0");
  }
  return C * expm(A * tau) * B;
}

void LtiFactor::validate() const {
  const auto s = A.rows();
  if (s == 0 || A.cols() != s) {
    throw std::invalid_argument("LtiFactor: A must be square");
  }
  if (B.rows() != s) {
    throw std::invalid_argument("LtiFactor: B row count mismatch");
  }
  if (C.cols() != s) {
    throw std::invalid_argument("LtiFactor: C column count mismatch");
  }
  if (B.cols() == 0 || C.rows() == 0) {
    throw std::invalid_argument("LtiFactor: empty input/output width");
  }
  require_finite(A, "LtiFactor A");
  require_finite(B, "LtiFactor B");
  require_finite(C, "LtiFactor C");
}

void FactorChain::validate() const {
  if (factors.empty()) {
    throw std::invalid_argument("FactorChain: no factors");
  }
  if (!(T > 0.0)) {
    throw std::invalid_argument("FactorChain: T must be > 0");
  }
  for (const auto& f : factors) f.validate();
  if (factors.front().in_width() != 1) {
    throw std::invalid_argument("FactorChain: first factor must have input width 1");
  }
  if (factors.back().out_width() != 1) {
    throw std::invalid_argument("FactorChain: last factor must have output width 1");
  }
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    if (factors[i].out_width() != factors[i + 1].in_width()) {
      throw std::invalid_argument("FactorChain: adjacent widths do not match");
    }
  }
}

FactorChain bilinear_to_chain(const BilinearSystem& sys, int p) {
  sys.validate();
  if (p < 1) {
    throw std::invalid_argument("bilinear_to_chain: order must be >= 1");
  }
  const int n = sys.dim();
  FactorChain chain;
  chain.T = sys.T;

  if (p == 1) {
    chain.factors.push_back({sys.F, sys.b, sys.c.transpose()});
    return chain;
  }

  const Matrix eye = Matrix::Identity(n, n);
  chain.factors.push_back({sys.F, sys.b, eye});  // exp(F tau) b
  for (int i = 2; i < p; ++i) {
    chain.factors.push_back({sys.F, sys.G, eye});  // exp(F tau) G
  }
  chain.factors.push_back({sys.F, sys.G, sys.c.transpose()});  // c^T exp(F tau) G
  return chain;
}

double kernel_value(const FactorChain& chain, std::span<const double> taus) {
  chain.validate();
  const int p = chain.order();
  if (static_cast<int>(taus.size()) != p) {
    throw std::invalid_argument("kernel_value: lag count must equal the order");
  }
  for (double t : taus) {
    if (!(t >= 0.0)) {
      throw std::invalid_argument("kernel_value: lags must be >= 0");
    }
  }
  Matrix acc = chain.factors[static_cast<std::size_t>(p - 1)].at(taus[static_cast<std::size_t>(p - 1)]);
  for (int i = p - 2; i >= 0; --i) {
    acc = acc * chain.factors[static_cast<std::size_t>(i)].at(taus[static_cast<std::size_t>(i)]);
  }
  return acc(0, 0);
}

SignalSequence ct_impulse_train_response(const BilinearSystem& sys,
                                         const SignalSequence& u) {
  sys.validate();
  u.validate();

  const Matrix flow = expm(sys.F * sys.T);
  Vector x = Vector::Zero(sys.dim());
  SignalSequence y = zeros(u.length(), sys.T);
  for (int n = 0; n < u.length(); ++n) {
    const ImpulseJump jump = impulse_jump(sys.G, sys.b, u[n]);
    x = jump.j * x + jump.d;
    y[n] = sys.c.dot(x);
    x = flow * x;
  }
  return y;
}

HomogeneousExtraction extract_homogeneous(const BilinearSystem& sys,
                                          const SignalSequence& u,
                                          int max_order,
                                          std::span<const double> epsilons) {
  sys.validate();
  u.validate();
  if (max_order < 1) {
    throw std::invalid_argument("extract_homogeneous: max_order must be >= 1");
  }
  const int k = static_cast<int>(epsilons.size());
  if (k < max_order + 1) {
    throw std::invalid_argument(
        "extract_homogeneous: need at least max_order + 1 scale factors");
  }
  for (int i = 0; i < k; ++i) {
    if (epsilons[static_cast<std::size_t>(i)] == 0.0) {
      throw std::invalid_argument("extract_homogeneous: scale factors must be nonzero");
    }
    for (int j = i + 1; j < k; ++j) {
      if (epsilons[static_cast<std::size_t>(i)] == epsilons[static_cast<std::size_t>(j)]) {
        throw std::invalid_argument("extract_homogeneous: duplicate scale factor");
      }
    }
  }

  // One simulation per scale factor; rows of the Vandermonde system.
  Matrix responses(k, u.length());
  for (int i = 0; i < k; ++i) {
    SignalSequence scaled = u;
    for (double& v : scaled.samples) v *= epsilons[static_cast<std::size_t>(i)];
    const SignalSequence yi = ct_impulse_train_response(sys, scaled);
    for (int n = 0; n < u.length(); ++n) responses(i, n) = yi[n];
  }

  Matrix vand(k, max_order);
  for (int i = 0; i < k; ++i) {
    double power = 1.0;
    for (int p = 1; p <= max_order; ++p) {
      power *= epsilons[static_cast<std::size_t>(i)];
      vand(i, p - 1) = power;
    }
  }

  Eigen::JacobiSVD<Matrix> svd(vand, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  HomogeneousExtraction result;
  result.condition_number = sv(0) / sv(sv.size() - 1);
  result.ill_conditioned = result.condition_number > 1e12;

  result.orders.assign(static_cast<std::size_t>(max_order),
                       zeros(u.length(), sys.T));
  for (int n = 0; n < u.length(); ++n) {
    const Vector fit = svd.solve(responses.col(n));
    for (int p = 1; p <= max_order; ++p) {
      result.orders[static_cast<std::size_t>(p - 1)][n] = fit(p - 1);
    }
  }
  return result;
}

}  // namespace volterra
