#pragma once

#include <cstdint>
#include <vector>

#include "volterra/cascade.hpp"

namespace volterra {

/// Structural description of a chain for the closed-form operation counts:
/// stage widths M_1..M_{p-1} (M_0 = M_p = 1) and the nonzero counts
/// mu_1..mu_{p-1} of the feedthrough matrices H_i(0).
struct ComplexityProfile {
  int order = 0;
  std::vector<int> widths;
  std::vector<int> nonzeros;

  void validate() const;
};

ComplexityProfile profile_from_chain(const FactorChain& chain);

/// Additional multiplications of the corrected cascade over the naive one,
/// scalar factors: p(p-2) + 2.
std::int64_t a_scalar(int p);

/// Matrix-factor count:
///   p = 2: mu_1 + M_1
///   p > 2: mu_{p-1} + p M_{p-1} + sum_{i=1}^{p-2} mu_i + i (mu_i + M_i)
std::int64_t a_matrix(const ComplexityProfile& profile);

/// a_matrix at unit widths and nonzeros, converted to the scalar accounting:
/// the W_i = H_i(0) u(n) formations are treated as free (their cost is repaid
/// by the cheaper feedthrough-suppressed blocks) and the order-2 count does
/// not fold the 1/2 into H_1(0). Equals a_scalar(p) for every p >= 2.
std::int64_t a_matrix_scalar_reduction(int p);

/// Which accounting the additional-multiplication count follows.
/// scalar_factors: raw corrected-minus-naive total (the feedthrough-suppressed
/// blocks really do save the multiplications that pay for the W_i products).
/// matrix_factors: sum of the correction categories, no savings credit.
enum class CountingConvention { scalar_factors, matrix_factors };

struct ReconcileReport {
  std::int64_t per_sample_additional = 0;
  std::int64_t predicted = 0;
  bool match = false;
  // per-sample category breakdown of the corrected run
  std::int64_t feedthrough = 0;
  std::int64_t product = 0;
  std::int64_t scaling = 0;
  std::int64_t base_filter_diff = 0;   // corrected minus naive
  std::int64_t base_product_diff = 0;
};

/// Compares instrumented per-sample additional multiplications against a
/// closed-form prediction. Both counters must come from runs of equal length.
ReconcileReport reconcile(const OpCounter& corrected, const OpCounter& naive,
                          std::int64_t predicted,
                          CountingConvention convention);

}  // namespace volterra
