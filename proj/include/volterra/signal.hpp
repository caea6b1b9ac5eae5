#pragma once

#include <vector>

#include "volterra/matexp.hpp"

namespace volterra {

/// Scalar discrete-time signal with sample period T.
struct SignalSequence {
  std::vector<double> samples;
  double T = 1.0;

  int length() const { return static_cast<int>(samples.size()); }
  double operator[](int n) const { return samples[static_cast<std::size_t>(n)]; }
  double& operator[](int n) { return samples[static_cast<std::size_t>(n)]; }

  void validate() const;  // finite samples, T > 0
};

/// Vector-valued discrete-time signal; column n holds the sample at time n.
struct VectorSignal {
  Matrix samples;  // width x length
  double T = 1.0;

  int width() const { return static_cast<int>(samples.rows()); }
  int length() const { return static_cast<int>(samples.cols()); }
};

SignalSequence unit_impulse(int length, double T);
SignalSequence zeros(int length, double T);

VectorSignal to_vector_signal(const SignalSequence& u);
SignalSequence to_scalar_signal(const VectorSignal& v);  // requires width 1

double max_abs(const SignalSequence& s);

/// Largest |a - b| over common samples; signals must have equal length.
double max_abs_diff(const SignalSequence& a, const SignalSequence& b);

}  // namespace volterra
