#pragma once

#include <span>
#include <vector>

#include "volterra/matexp.hpp"
#include "volterra/signal.hpp"

namespace volterra {

/// Continuous-time bilinear system
///   x' = F x + G x u + b u,   y = c^T x
/// sampled with period T.
struct BilinearSystem {
  Matrix F;
  Matrix G;
  Vector b;
  Vector c;
  double T = 1.0;

  int dim() const { return static_cast<int>(F.rows()); }
  void validate() const;
};

/// One continuous-time LTI matrix factor H(tau) = C * exp(A tau) * B.
struct LtiFactor {
  Matrix A;  // s x s
  Matrix B;  // s x in_width
  Matrix C;  // out_width x s

  int state_dim() const { return static_cast<int>(A.rows()); }
  int in_width() const { return static_cast<int>(B.cols()); }
  int out_width() const { return static_cast<int>(C.rows()); }

  /// H(tau) for tau >= 0.
  Matrix at(double tau) const;

  void validate() const;
};

/// Ordered factors of one separable kernel of order p. The first factor has
/// input width 1, the last has output width 1, and adjacent widths match.
struct FactorChain {
  std::vector<LtiFactor> factors;
  double T = 1.0;

  int order() const { return static_cast<int>(factors.size()); }
  void validate() const;
};

/// Factor chain of the order-p kernel of a bilinear system:
/// exp(F tau) b, then p-2 copies of exp(F tau) G, then c^T exp(F tau) G.
/// For p = 1 the single factor is c^T exp(F tau) b.
FactorChain bilinear_to_chain(const BilinearSystem& sys, int p);

/// Kernel value H^(p)(tau_p) * ... * H^(1)(tau_1), a 1x1 product.
double kernel_value(const FactorChain& chain, std::span<const double> taus);

/// Exact sampled response y(nT+) of the bilinear system to the impulse train
/// sum_n u(n) delta(t - nT): alternate the impulse jump map with the free
/// flow exp(F T). No time-stepping discretization error.
SignalSequence ct_impulse_train_response(const BilinearSystem& sys,
                                         const SignalSequence& u);

struct HomogeneousExtraction {
  std::vector<SignalSequence> orders;  // orders[p-1] holds the order-p output
  double condition_number = 0.0;
  bool ill_conditioned = false;  // condition number above 1e12
};

/// Separates the response into homogeneous orders 1..max_order by running the
/// impulse-train simulation on scaled inputs eps_k * u and fitting the
/// per-sample polynomial sum_p eps^p y_p(n) in least squares.
/// Requires at least max_order + 1 distinct nonzero scale factors.
HomogeneousExtraction extract_homogeneous(const BilinearSystem& sys,
                                          const SignalSequence& u,
                                          int max_order,
                                          std::span<const double> epsilons);

}  // namespace volterra
