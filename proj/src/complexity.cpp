#include "volterra/complexity.hpp"

#include <stdexcept>

namespace volterra {

void ComplexityProfile::validate() const {
  if (order < 2) {
    throw std::invalid_argument("ComplexityProfile: order must be >= 2");
  }
  const std::size_t stages = static_cast<std::size_t>(order - 1);
  if (widths.size() != stages || nonzeros.size() != stages) {
    throw std::invalid_argument("ComplexityProfile: need order-1 widths and nonzero counts");
  }
  int prev_width = 1;  // M_0 = 1
  for (std::size_t i = 0; i < stages; ++i) {
    if (widths[i] < 1) {
      throw std::invalid_argument("ComplexityProfile: widths must be >= 1");
    }
    if (nonzeros[i] < 0 || nonzeros[i] > widths[i] * prev_width) {
      throw std::invalid_argument("ComplexityProfile: nonzero count out of range");
    }
    prev_width = widths[i];
  }
}

ComplexityProfile profile_from_chain(const FactorChain& chain) {
  chain.validate();
  const int p = chain.order();
  ComplexityProfile profile;
  profile.order = p;
  for (int i = 1; i <= p - 1; ++i) {
    const auto& f = chain.factors[static_cast<std::size_t>(i - 1)];
    profile.widths.push_back(f.out_width());
    const Matrix h0 = f.C * f.B;
    int count = 0;
    for (Eigen::Index r = 0; r < h0.rows(); ++r) {
      for (Eigen::Index c = 0; c < h0.cols(); ++c) {
        if (h0(r, c) != 0.0) ++count;
      }
    }
    profile.nonzeros.push_back(count);
  }
  profile.validate();
  return profile;
}

std::int64_t a_scalar(int p) {
  if (p < 2) {
    throw std::invalid_argument("a_scalar: order must be >= 2");
  }
  return static_cast<std::int64_t>(p) * (p - 2) + 2;
}

std::int64_t a_matrix(const ComplexityProfile& profile) {
  profile.validate();
  const int p = profile.order;
  const auto mu = [&](int i) {
    return static_cast<std::int64_t>(profile.nonzeros[static_cast<std::size_t>(i - 1)]);
  };
  const auto width = [&](int i) {
    return static_cast<std::int64_t>(profile.widths[static_cast<std::size_t>(i - 1)]);
  };
  if (p == 2) {
    return mu(1) + width(1);
  }
  std::int64_t total = mu(p - 1) + static_cast<std::int64_t>(p) * width(p - 1);
  for (int i = 1; i <= p - 2; ++i) {
    total += mu(i) + static_cast<std::int64_t>(i) * (mu(i) + width(i));
  }
  return total;
}

std::int64_t a_matrix_scalar_reduction(int p) {
  if (p < 2) {
    throw std::invalid_argument("a_matrix_scalar_reduction: order must be >= 2");
  }
  ComplexityProfile ones;
  ones.order = p;
  ones.widths.assign(static_cast<std::size_t>(p - 1), 1);
  ones.nonzeros.assign(static_cast<std::size_t>(p - 1), 1);
  std::int64_t value = a_matrix(ones) - (p - 1);
  if (p == 2) value += 1;  // the order-2 count folds the 1/2 into H_1(0)
  return value;
}

ReconcileReport reconcile(const OpCounter& corrected, const OpCounter& naive,
                          std::int64_t predicted,
                          CountingConvention convention) {
  if (corrected.samples == 0 || corrected.samples != naive.samples) {
    throw std::invalid_argument("reconcile: counters must cover the same nonzero run length");
  }
  const auto samples = static_cast<std::int64_t>(corrected.samples);
  const auto per_sample = [&](std::int64_t total) {
    if (total % samples != 0) {
      throw std::invalid_argument("reconcile: count not divisible by run length");
    }
    return total / samples;
  };

  ReconcileReport report;
  report.predicted = predicted;
  report.feedthrough = per_sample(static_cast<std::int64_t>(corrected.feedthrough_product));
  report.product = per_sample(static_cast<std::int64_t>(corrected.correction_product));
  report.scaling = per_sample(static_cast<std::int64_t>(corrected.correction_scaling));
  report.base_filter_diff = per_sample(static_cast<std::int64_t>(corrected.base_filter) -
                                       static_cast<std::int64_t>(naive.base_filter));
  report.base_product_diff = per_sample(static_cast<std::int64_t>(corrected.base_product) -
                                        static_cast<std::int64_t>(naive.base_product));

  if (convention == CountingConvention::scalar_factors) {
    // The suppressed feedthroughs genuinely save multiplications; the raw
    // total difference already nets them against the W_i formations.
    report.per_sample_additional = per_sample(
        static_cast<std::int64_t>(corrected.total()) -
        static_cast<std::int64_t>(naive.total()));
  } else {
    report.per_sample_additional =
        report.feedthrough + report.product + report.scaling;
  }
  report.match = report.per_sample_additional == predicted;
  return report;
}

}  // namespace volterra
