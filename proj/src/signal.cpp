#include "volterra/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace volterra {

void SignalSequence::validate() const {
  if (!(T > 0.0)) {
    throw std::invalid_argument("SignalSequence: sample period must be > 0");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("SignalSequence: non-finite sample");
    }
  }
}

SignalSequence unit_impulse(int length, double T) {
  SignalSequence s;
  s.T = T;
  s.samples.assign(static_cast<std::size_t>(length), 0.0);
  if (length > 0) s.samples[0] = 1.0;
  return s;
}

SignalSequence zeros(int length, double T) {
  SignalSequence s;
  s.T = T;
  s.samples.assign(static_cast<std::size_t>(length), 0.0);
  return s;
}

VectorSignal to_vector_signal(const SignalSequence& u) {
  VectorSignal v;
  v.T = u.T;
  v.samples.resize(1, u.length());
  for (int n = 0; n < u.length(); ++n) v.samples(0, n) = u[n];
  return v;
}

SignalSequence to_scalar_signal(const VectorSignal& v) {
  if (v.width() != 1) {
    throw std::invalid_argument("to_scalar_signal: width must be 1");
  }
  SignalSequence s;
  s.T = v.T;
  s.samples.resize(static_cast<std::size_t>(v.length()));
  for (int n = 0; n < v.length(); ++n) s[n] = v.samples(0, n);
  return s;
}

double max_abs(const SignalSequence& s) {
  double m = 0.0;
  for (double v : s.samples) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const SignalSequence& a, const SignalSequence& b) {
  if (a.length() != b.length()) {
    throw std::invalid_argument("max_abs_diff: length mismatch");
  }
  double m = 0.0;
  for (int n = 0; n < a.length(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

}  // namespace volterra
