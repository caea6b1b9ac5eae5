#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "volterra/system.hpp"

namespace volterra {

enum class IndexConvention { regular, triangular };

/// Tuple of p nonnegative integer lags. Triangular convention requires
/// nondecreasing lags.
struct KernelIndex {
  IndexConvention convention = IndexConvention::regular;
  std::vector<int> lags;

  int order() const { return static_cast<int>(lags.size()); }
  void validate() const;
};

struct MultiplicityGroup {
  int multiplicity;        // m_k
  std::uint64_t factorial;  // m_k!
};

/// Rational factor 1 / (m_1! ... m_q!) correcting sampled kernel values.
struct MultiplicityFactor {
  std::uint64_t denominator = 1;
  std::vector<MultiplicityGroup> groups;

  double value() const { return 1.0 / static_cast<double>(denominator); }
  bool operator==(const MultiplicityFactor& o) const {
    return denominator == o.denominator;
  }
};

/// Triangular rule: one group per distinct value, m_k = its occurrence count.
MultiplicityFactor multiplicity_triangular(std::span<const int> taus);

/// Regular rule over the first p-1 lags: each maximal run of L consecutive
/// zeros contributes 1/(L+1)!. An empty input (order 1) gives factor 1.
MultiplicityFactor multiplicity_regular(std::span<const int> ns);

/// tau_k = n_p + n_{p-1} + ... + n_{p-k+1} (suffix sums, reversed).
std::vector<int> regular_to_triangular(std::span<const int> ns);

/// theta_k = tau_{p-k+1} - tau_{p-k} with tau_0 = 0; inverse of the above.
std::vector<int> triangular_to_regular(std::span<const int> taus);

KernelIndex regular_to_triangular(const KernelIndex& idx);
KernelIndex triangular_to_regular(const KernelIndex& idx);

/// Impulse-invariant kernel sample on the regular grid:
/// multiplicity_regular(n_1..n_{p-1}) * kernel_value at (n_1 T, ..., n_p T).
double sample_regular(const FactorChain& chain, std::span<const int> ns);

/// Triangular-grid sample: multiplicity_triangular(taus) * kernel_value at
/// the transformed regular instants.
double sample_triangular(const FactorChain& chain, std::span<const int> taus);

}  // namespace volterra
