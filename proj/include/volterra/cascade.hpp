#pragma once

#include <cstdint>
#include <vector>

#include "volterra/signal.hpp"
#include "volterra/system.hpp"

namespace volterra {

/// Impulse-invariant discrete state-space block. With feedthrough enabled the
/// impulse response is H(n) = C exp(A nT) B; disabling feedthrough zeroes
/// only the n = 0 sample.
struct DiscreteFactor {
  Matrix A_d;  // exp(A T)
  Matrix B_d;  // exp(A T) B
  Matrix C;
  Matrix D;    // C B, the feedthrough H(0)
  bool feedthrough = true;

  int state_dim() const { return static_cast<int>(A_d.rows()); }
  int in_width() const { return static_cast<int>(B_d.cols()); }
  int out_width() const { return static_cast<int>(C.rows()); }
};

/// Scalar-multiplication tallies for one realization run, by category.
///
/// base_filter and base_product cover work the uncorrected cascade performs
/// too (state updates, outputs, the per-stage multiplications by u). The
/// remaining categories are correction work only: W_i = H_i(0) u(n)
/// formations, W_i z products (and the reordered final-stage products), and
/// the 1/j! scalings. Structural zeros of H_i(0) are never charged.
struct OpCounter {
  std::uint64_t base_filter = 0;
  std::uint64_t base_product = 0;
  std::uint64_t correction_product = 0;
  std::uint64_t correction_scaling = 0;
  std::uint64_t feedthrough_product = 0;
  std::uint64_t samples = 0;

  std::uint64_t total() const {
    return base_filter + base_product + correction_product +
           correction_scaling + feedthrough_product;
  }
  std::uint64_t correction_total() const {
    return correction_product + correction_scaling + feedthrough_product;
  }
  bool operator==(const OpCounter&) const = default;
};

DiscreteFactor discretize_factor(const LtiFactor& f, double T,
                                 bool feedthrough);

/// Runs the block over a whole signal from zero initial state:
///   out(n) = C xi(n) + [D v(n) if feedthrough],  xi(n+1) = A_d xi(n) + B_d v(n).
VectorSignal filter_run(const DiscreteFactor& df, const VectorSignal& v,
                        OpCounter* counter = nullptr);

struct CascadeOptions {
  /// Fold the 1/2! weight of the order-2 correction into H_1(0). Valid only
  /// for p = 2; changes operation counts, not values.
  bool absorb_half = false;
};

/// Uncorrected cascade: z_i = filter(H_i, z_{i-1}) * u(n) stage by stage.
/// Realizes the kernel sampled plainly on the lag grid (p >= 2).
/// A counter, when given, receives this run's tallies.
SignalSequence naive_cascade(const FactorChain& chain, const SignalSequence& u,
                             OpCounter* counter = nullptr);

/// Streaming corrected cascade realization for one kernel of order p >= 2.
///
/// Per stage i it keeps the auxiliary signals z_{i,j}; stage i filters the
/// 1/j!-weighted sum of the previous stage's signals through the
/// feedthrough-suppressed block and forms z_{i,j} = W_i z_{i-1,j-1} with
/// W_i = H_i(0) u(n). The last stage always uses the reordered form: scale
/// and sum first, then one product by H_{p-1}(0) and one by u(n).
class CorrectedCascade {
 public:
  explicit CorrectedCascade(const FactorChain& chain, CascadeOptions opts = {});

  /// Advances one sample and returns y_p(n).
  double step(double u_n);

  /// z_{i,j} after the last step; available for stages i <= p-2 (j = 1..i+1)
  /// and for j = 1 at stage p-1.
  const Vector& z(int stage, int j) const;

  /// Reordered final correction sum_{j>=2} z_{p-1,j}/j! after the last step.
  const Vector& final_correction() const { return final_correction_; }

  const OpCounter& counter() const { return counter_; }
  int order() const { return p_; }

 private:
  int p_;
  CascadeOptions opts_;
  std::vector<DiscreteFactor> stage_blocks_;  // feedthrough-suppressed, 1..p-1
  DiscreteFactor final_block_;                // full block for H_p
  std::vector<Matrix> h0_;                    // H_i(0), i = 1..p-1
  std::vector<std::int64_t> h0_nnz_;
  std::vector<Vector> states_;
  Vector final_state_;
  std::vector<std::vector<Vector>> z_;
  Vector final_correction_;
  OpCounter counter_;

  Vector run_block(const DiscreteFactor& blk, Vector& state, const Vector& in);
};

/// Corrected cascade over a whole input signal (p >= 2). The counter, when
/// given, receives the run's multiplication tallies.
SignalSequence corrected_cascade(const FactorChain& chain,
                                 const SignalSequence& u,
                                 OpCounter* counter = nullptr,
                                 CascadeOptions opts = {});

/// Impulse-invariant linear response of a scalar-in scalar-out factor.
SignalSequence order1(const LtiFactor& f, const SignalSequence& u, double T);

}  // namespace volterra
