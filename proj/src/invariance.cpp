#include "volterra/invariance.hpp"

#include <stdexcept>
#include <string>

namespace volterra {

namespace {

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) {
    throw std::invalid_argument("factorial: argument out of range");
  }
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void require_nonnegative(std::span<const int> lags, const char* what) {
  for (int v : lags) {
    if (v < 0) {
      throw std::invalid_argument(std::string(what) + ": lags must be >= 0");
    }
  }
}

void require_nondecreasing(std::span<const int> lags, const char* what) {
  require_nonnegative(lags, what);
  for (std::size_t i = 1; i < lags.size(); ++i) {
    if (lags[i] < lags[i - 1]) {
      throw std::invalid_argument(std::string(what) + ": lags must be nondecreasing");
    }
  }
}

}  // namespace

void KernelIndex::validate() const {
  if (convention == IndexConvention::triangular) {
    require_nondecreasing(lags, "KernelIndex");
  } else {
    require_nonnegative(lags, "KernelIndex");
  }
}

MultiplicityFactor multiplicity_triangular(std::span<const int> taus) {
  require_nondecreasing(taus, "multiplicity_triangular");
  MultiplicityFactor m;
  std::size_t i = 0;
  while (i < taus.size()) {
    std::size_t j = i;
    while (j < taus.size() && taus[j] == taus[i]) ++j;
    const int count = static_cast<int>(j - i);
    const std::uint64_t f = factorial(count);
    m.groups.push_back({count, f});
    m.denominator *= f;
    i = j;
  }
  return m;
}

MultiplicityFactor multiplicity_regular(std::span<const int> ns) {
  require_nonnegative(ns, "multiplicity_regular");
  MultiplicityFactor m;
  std::size_t i = 0;
  while (i < ns.size()) {
    if (ns[i] != 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < ns.size() && ns[j] == 0) ++j;
    const int run = static_cast<int>(j - i);  // run of zeros -> (run+1)!
    const std::uint64_t f = factorial(run + 1);
    m.groups.push_back({run + 1, f});
    m.denominator *= f;
    i = j;
  }
  return m;
}

std::vector<int> regular_to_triangular(std::span<const int> ns) {
  require_nonnegative(ns, "regular_to_triangular");
  const std::size_t p = ns.size();
  std::vector<int> taus(p, 0);
  int sum = 0;
  for (std::size_t k = 0; k < p; ++k) {
    sum += ns[p - 1 - k];  // tau_k = n_p + ... + n_{p-k+1}
    taus[k] = sum;
  }
  return taus;
}

std::vector<int> triangular_to_regular(std::span<const int> taus) {
  require_nondecreasing(taus, "triangular_to_regular");
  const std::size_t p = taus.size();
  std::vector<int> ns(p, 0);
  for (std::size_t k = 0; k < p; ++k) {
    const int lower = (k + 1 < p) ? taus[p - 2 - k] : 0;
    ns[k] = taus[p - 1 - k] - lower;  // theta_k = tau_{p-k+1} - tau_{p-k}
  }
  return ns;
}

KernelIndex regular_to_triangular(const KernelIndex& idx) {
  if (idx.convention != IndexConvention::regular) {
    throw std::invalid_argument("regular_to_triangular: index is not regular");
  }
  idx.validate();
  return {IndexConvention::triangular, regular_to_triangular(std::span<const int>(idx.lags))};
}

KernelIndex triangular_to_regular(const KernelIndex& idx) {
  if (idx.convention != IndexConvention::triangular) {
    throw std::invalid_argument("triangular_to_regular: index is not triangular");
  }
  idx.validate();
  return {IndexConvention::regular, triangular_to_regular(std::span<const int>(idx.lags))};
}

double sample_regular(const FactorChain& chain, std::span<const int> ns) {
  const int p = chain.order();
  if (static_cast<int>(ns.size()) != p) {
    throw std::invalid_argument("sample_regular: lag count must equal the order");
  }
  const MultiplicityFactor m =
      multiplicity_regular(ns.subspan(0, static_cast<std::size_t>(p - 1)));
  std::vector<double> taus(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) taus[i] = ns[i] * chain.T;
  return m.value() * kernel_value(chain, taus);
}

double sample_triangular(const FactorChain& chain, std::span<const int> taus) {
  const int p = chain.order();
  if (static_cast<int>(taus.size()) != p) {
    throw std::invalid_argument("sample_triangular: lag count must equal the order");
  }
  const MultiplicityFactor m = multiplicity_triangular(taus);
  const std::vector<int> ns = triangular_to_regular(taus);
  std::vector<double> instants(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) instants[i] = ns[i] * chain.T;
  return m.value() * kernel_value(chain, instants);
}

}  // namespace volterra
