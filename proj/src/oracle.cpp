#include "volterra/oracle.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace volterra {

namespace {

// Per-factor samples H_i(nT) for n = 0..memory, each from a direct matrix
// exponential so the oracle path stays independent of the filter recursions.
std::vector<std::vector<Matrix>> factor_tables(const FactorChain& chain,
                                               int memory) {
  std::vector<std::vector<Matrix>> tables(chain.factors.size());
  for (std::size_t i = 0; i < chain.factors.size(); ++i) {
    tables[i].reserve(static_cast<std::size_t>(memory) + 1);
    for (int n = 0; n <= memory; ++n) {
      tables[i].push_back(chain.factors[i].at(n * chain.T));
    }
  }
  return tables;
}

// Same association order as kernel_value: H_p, then multiply down to H_1.
double chain_product(const std::vector<std::vector<Matrix>>& tables,
                     std::span<const int> lags) {
  const int p = static_cast<int>(tables.size());
  Matrix acc = tables[static_cast<std::size_t>(p - 1)]
                     [static_cast<std::size_t>(lags[static_cast<std::size_t>(p - 1)])];
  for (int i = p - 2; i >= 0; --i) {
    acc = acc * tables[static_cast<std::size_t>(i)]
                      [static_cast<std::size_t>(lags[static_cast<std::size_t>(i)])];
  }
  return acc(0, 0);
}

struct KahanSums {
  std::vector<double> sum;
  std::vector<double> comp;

  explicit KahanSums(int n) : sum(static_cast<std::size_t>(n), 0.0),
                              comp(static_cast<std::size_t>(n), 0.0) {}

  void add(int i, double v) {
    const double y = v - comp[static_cast<std::size_t>(i)];
    const double t = sum[static_cast<std::size_t>(i)] + y;
    comp[static_cast<std::size_t>(i)] = (t - sum[static_cast<std::size_t>(i)]) - y;
    sum[static_cast<std::size_t>(i)] = t;
  }
};

void check_args(const FactorChain& chain, const SignalSequence& u, int memory) {
  chain.validate();
  u.validate();
  if (memory < 0) {
    throw std::invalid_argument("oracle: memory bound must be >= 0");
  }
}

}  // namespace

SignalSequence eval_regular(const FactorChain& chain, const SignalSequence& u,
                            int memory) {
  check_args(chain, u, memory);
  const int p = chain.order();
  const int len = u.length();
  const auto tables = factor_tables(chain, memory);

  KahanSums acc(len);
  std::vector<int> lags(static_cast<std::size_t>(p), 0);
  std::vector<int> totals(static_cast<std::size_t>(p), 0);  // suffix sums

  // Enumerates all tuples (n_1..n_p) with n_1 + ... + n_p <= memory.
  std::function<void(int, int)> visit = [&](int pos, int budget) {
    if (pos == p) {
      const MultiplicityFactor m = multiplicity_regular(
          std::span<const int>(lags).subspan(0, static_cast<std::size_t>(p - 1)));
      const double v = m.value() * chain_product(tables, lags);
      int suffix = 0;
      for (int i = p - 1; i >= 0; --i) {
        suffix += lags[static_cast<std::size_t>(i)];
        totals[static_cast<std::size_t>(i)] = suffix;
      }
      for (int n = totals[0]; n < len; ++n) {
        double prod = v;
        for (int i = 0; i < p; ++i) {
          prod *= u[n - totals[static_cast<std::size_t>(i)]];
        }
        acc.add(n, prod);
      }
      return;
    }
    for (int k = 0; k <= budget; ++k) {
      lags[static_cast<std::size_t>(pos)] = k;
      visit(pos + 1, budget - k);
    }
  };
  visit(0, memory);

  SignalSequence y = zeros(len, u.T);
  for (int n = 0; n < len; ++n) y[n] = acc.sum[static_cast<std::size_t>(n)];
  return y;
}

SignalSequence eval_triangular(const FactorChain& chain,
                               const SignalSequence& u, int memory) {
  check_args(chain, u, memory);
  const int p = chain.order();
  const int len = u.length();
  const auto tables = factor_tables(chain, memory);

  KahanSums acc(len);
  std::vector<int> taus(static_cast<std::size_t>(p), 0);

  // Enumerates 0 <= tau_1 <= ... <= tau_p <= memory.
  std::function<void(int, int)> visit = [&](int pos, int lower) {
    if (pos == p) {
      const MultiplicityFactor m = multiplicity_triangular(taus);
      const std::vector<int> regular = triangular_to_regular(taus);
      const double v = m.value() * chain_product(tables, regular);
      for (int n = taus[static_cast<std::size_t>(p - 1)]; n < len; ++n) {
        double prod = v;
        for (int i = 0; i < p; ++i) prod *= u[n - taus[static_cast<std::size_t>(i)]];
        acc.add(n, prod);
      }
      return;
    }
    for (int k = lower; k <= memory; ++k) {
      taus[static_cast<std::size_t>(pos)] = k;
      visit(pos + 1, k);
    }
  };
  visit(0, 0);

  SignalSequence y = zeros(len, u.T);
  for (int n = 0; n < len; ++n) y[n] = acc.sum[static_cast<std::size_t>(n)];
  return y;
}

SignalSequence total_output(std::span<const FactorChain> chains,
                            const SignalSequence& u, int memory) {
  if (chains.empty()) {
    throw std::invalid_argument("total_output: no chains");
  }
  for (const auto& chain : chains) {
    if (chain.T != chains.front().T) {
      throw std::invalid_argument("total_output: inconsistent sample periods");
    }
  }
  SignalSequence y = zeros(u.length(), u.T);
  for (const auto& chain : chains) {
    const SignalSequence yp = eval_regular(chain, u, memory);
    for (int n = 0; n < y.length(); ++n) y[n] += yp[n];
  }
  return y;
}

int auto_memory(const FactorChain& chain, double threshold) {
  chain.validate();
  constexpr int kMaxMemory = 4096;
  std::vector<Matrix> steps;
  std::vector<Matrix> powers;
  for (const auto& f : chain.factors) {
    steps.push_back(expm(f.A * chain.T));
    powers.push_back(Matrix::Identity(f.state_dim(), f.state_dim()));
  }
  for (int memory = 1; memory <= kMaxMemory; ++memory) {
    double worst = 0.0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      powers[i] = powers[i] * steps[i];
      worst = std::max(worst, powers[i].norm());
    }
    if (worst < threshold) return memory;
  }
  throw std::invalid_argument(
      "auto_memory: factor flows do not decay below the threshold");
}

}  // namespace volterra
