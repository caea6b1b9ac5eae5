#include "volterra/cascade.hpp"

#include <stdexcept>

namespace volterra {

namespace {

std::int64_t nnz(const Matrix& m) {
  std::int64_t count = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) ++count;
    }
  }
  return count;
}

// Counted kernels for the correction path. One tally per scalar multiply;
// structural zeros (the pattern matrix is constant over the run) are skipped,
// zeros that arrive through the signal are not.
Vector counted_matvec(const Matrix& m, const Matrix& pattern, const Vector& v,
                      std::uint64_t& tally) {
  Vector out = Vector::Zero(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (pattern(i, j) != 0.0) {
        out(i) += m(i, j) * v(j);
        ++tally;
      }
    }
  }
  return out;
}

Matrix counted_matscale(const Matrix& m, double s, std::uint64_t& tally) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) {
        out(i, j) = m(i, j) * s;
        ++tally;
      }
    }
  }
  return out;
}

Vector counted_vecscale(const Vector& v, double s, std::uint64_t& tally) {
  tally += static_cast<std::uint64_t>(v.size());
  return v * s;
}

double inverse_factorial(int j) {
  double f = 1.0;
  for (int i = 2; i <= j; ++i) f *= static_cast<double>(i);
  return 1.0 / f;
}

}  // namespace

DiscreteFactor discretize_factor(const LtiFactor& f, double T,
                                 bool feedthrough) {
  f.validate();
  if (!(T > 0.0)) {
    throw std::invalid_argument("discretize_factor: T must be > 0");
  }
  DiscreteFactor df;
  df.A_d = expm(f.A * T);
  df.B_d = df.A_d * f.B;
  df.C = f.C;
  df.D = f.C * f.B;
  df.feedthrough = feedthrough;
  return df;
}

VectorSignal filter_run(const DiscreteFactor& df, const VectorSignal& v,
                        OpCounter* counter) {
  if (v.width() != df.in_width()) {
    throw std::invalid_argument("filter_run: input width mismatch");
  }
  const int s = df.state_dim();
  const int len = v.length();
  const std::int64_t d_nnz = nnz(df.D);

  VectorSignal out;
  out.T = v.T;
  out.samples.setZero(df.out_width(), len);

  Vector xi = Vector::Zero(s);
  for (int n = 0; n < len; ++n) {
    Vector y = df.C * xi;
    if (df.feedthrough) y += df.D * v.samples.col(n);
    out.samples.col(n) = y;
    xi = df.A_d * xi + df.B_d * v.samples.col(n);
    if (counter != nullptr) {
      counter->base_filter += static_cast<std::uint64_t>(
          s * s + s * df.in_width() + df.out_width() * s +
          (df.feedthrough ? d_nnz : 0));
    }
  }
  return out;
}

SignalSequence naive_cascade(const FactorChain& chain, const SignalSequence& u,
                             OpCounter* counter) {
  chain.validate();
  u.validate();
  const int p = chain.order();
  if (p < 2) {
    throw std::invalid_argument("naive_cascade: order must be >= 2");
  }
  if (counter != nullptr) *counter = OpCounter{};

  VectorSignal z = to_vector_signal(u);
  for (int i = 1; i < p; ++i) {
    const DiscreteFactor df =
        discretize_factor(chain.factors[static_cast<std::size_t>(i - 1)], chain.T, true);
    z = filter_run(df, z, counter);
    for (int n = 0; n < z.length(); ++n) {
      z.samples.col(n) *= u[n];
    }
    if (counter != nullptr) {
      counter->base_product +=
          static_cast<std::uint64_t>(z.width()) * static_cast<std::uint64_t>(z.length());
    }
  }
  const DiscreteFactor last =
      discretize_factor(chain.factors[static_cast<std::size_t>(p - 1)], chain.T, true);
  const VectorSignal y = filter_run(last, z, counter);
  if (counter != nullptr) counter->samples += static_cast<std::uint64_t>(u.length());
  return to_scalar_signal(y);
}

CorrectedCascade::CorrectedCascade(const FactorChain& chain,
                                   CascadeOptions opts)
    : p_(chain.order()), opts_(opts) {
  chain.validate();
  if (p_ < 2) {
    throw std::invalid_argument("CorrectedCascade: order must be >= 2");
  }
  if (opts_.absorb_half && p_ != 2) {
    throw std::invalid_argument("CorrectedCascade: absorb_half applies to order 2 only");
  }

  for (int i = 1; i < p_; ++i) {
    const auto& f = chain.factors[static_cast<std::size_t>(i - 1)];
    stage_blocks_.push_back(discretize_factor(f, chain.T, false));
    Matrix h0 = f.C * f.B;
    if (opts_.absorb_half && i == 1) h0 *= 0.5;
    h0_.push_back(h0);
    h0_nnz_.push_back(nnz(h0));
    states_.push_back(Vector::Zero(f.state_dim()));
  }
  final_block_ =
      discretize_factor(chain.factors[static_cast<std::size_t>(p_ - 1)], chain.T, true);
  final_state_ = Vector::Zero(final_block_.state_dim());
  z_.resize(static_cast<std::size_t>(p_ - 1));
}

Vector CorrectedCascade::run_block(const DiscreteFactor& blk, Vector& state,
                                   const Vector& in) {
  Vector out = blk.C * state;
  if (blk.feedthrough) out += blk.D * in;
  state = blk.A_d * state + blk.B_d * in;
  counter_.base_filter += static_cast<std::uint64_t>(
      blk.state_dim() * blk.state_dim() + blk.state_dim() * blk.in_width() +
      blk.out_width() * blk.state_dim() +
      (blk.feedthrough ? nnz(blk.D) : 0));
  return out;
}

double CorrectedCascade::step(double u_n) {
  ++counter_.samples;
  std::vector<Vector> prev{Vector::Constant(1, u_n)};  // z_{0,1}

  double y = 0.0;
  for (int i = 1; i <= p_ - 1; ++i) {
    // s_i = sum_{j=1}^{i} z_{i-1,j} / j!
    Vector s = prev[0];
    for (int j = 2; j <= i; ++j) {
      s += counted_vecscale(prev[static_cast<std::size_t>(j - 1)],
                            inverse_factorial(j), counter_.correction_scaling);
    }

    const auto& blk = stage_blocks_[static_cast<std::size_t>(i - 1)];
    Vector filtered = run_block(blk, states_[static_cast<std::size_t>(i - 1)], s);
    Vector z1 = filtered * u_n;
    counter_.base_product += static_cast<std::uint64_t>(z1.size());

    if (i <= p_ - 2) {
      const Matrix w = counted_matscale(h0_[static_cast<std::size_t>(i - 1)],
                                        u_n, counter_.feedthrough_product);
      std::vector<Vector> cur;
      cur.reserve(static_cast<std::size_t>(i) + 1);
      cur.push_back(std::move(z1));
      for (int j = 2; j <= i + 1; ++j) {
        cur.push_back(counted_matvec(w, h0_[static_cast<std::size_t>(i - 1)],
                                     prev[static_cast<std::size_t>(j - 2)],
                                     counter_.correction_product));
      }
      z_[static_cast<std::size_t>(i - 1)] = cur;
      prev = std::move(cur);
    } else {
      // Last stage, reordered: scale and sum the previous-stage signals,
      // then one product by H_{p-1}(0) and one by u(n).
      Vector q;
      if (opts_.absorb_half) {
        q = prev[0];  // the 1/2! lives inside h0_
      } else {
        q = counted_vecscale(prev[0], inverse_factorial(2),
                             counter_.correction_scaling);
        for (int j = 3; j <= p_; ++j) {
          q += counted_vecscale(prev[static_cast<std::size_t>(j - 2)],
                                inverse_factorial(j),
                                counter_.correction_scaling);
        }
      }
      const Vector r = counted_matvec(h0_[static_cast<std::size_t>(i - 1)],
                                      h0_[static_cast<std::size_t>(i - 1)], q,
                                      counter_.correction_product);
      const Vector t = counted_vecscale(r, u_n, counter_.correction_product);
      final_correction_ = t;
      z_[static_cast<std::size_t>(i - 1)] = {z1};

      const Vector y_vec = run_block(final_block_, final_state_, z1 + t);
      y = y_vec(0);
    }
  }
  return y;
}

const Vector& CorrectedCascade::z(int stage, int j) const {
  if (stage < 1 || stage > p_ - 1) {
    throw std::invalid_argument("CorrectedCascade::z: stage out of range");
  }
  const auto& signals = z_[static_cast<std::size_t>(stage - 1)];
  if (j < 1 || j > static_cast<int>(signals.size())) {
    throw std::invalid_argument("CorrectedCascade::z: signal index out of range");
  }
  return signals[static_cast<std::size_t>(j - 1)];
}

SignalSequence corrected_cascade(const FactorChain& chain,
                                 const SignalSequence& u, OpCounter* counter,
                                 CascadeOptions opts) {
  u.validate();
  CorrectedCascade cascade(chain, opts);
  SignalSequence y = zeros(u.length(), chain.T);
  for (int n = 0; n < u.length(); ++n) y[n] = cascade.step(u[n]);
  if (counter != nullptr) *counter = cascade.counter();
  return y;
}

SignalSequence order1(const LtiFactor& f, const SignalSequence& u, double T) {
  f.validate();
  u.validate();
  if (f.in_width() != 1 || f.out_width() != 1) {
    throw std::invalid_argument("order1: factor must be scalar-in scalar-out");
  }
  const DiscreteFactor df = discretize_factor(f, T, true);
  return to_scalar_signal(filter_run(df, to_vector_signal(u)));
}

}  // namespace volterra
