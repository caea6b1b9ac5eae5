#pragma once

#include <span>

#include "volterra/invariance.hpp"

namespace volterra {

// Brute-force evaluation of homogeneous outputs directly from the kernel
// definition. Deliberately the slow trusted path: O(memory^p) terms per run.

/// y_p(n) = sum over tuples (n_1..n_p) with n_1+...+n_p <= memory of
/// sample_regular(chain, ns) * prod_i u(n - nbar_i), nbar_i the suffix sums.
SignalSequence eval_regular(const FactorChain& chain, const SignalSequence& u,
                            int memory);

/// Same sum in triangular coordinates: 0 <= tau_1 <= ... <= tau_p <= memory,
/// term-for-term identical to eval_regular under the index transform.
SignalSequence eval_triangular(const FactorChain& chain,
                               const SignalSequence& u, int memory);

/// Sample-wise sum of per-order outputs, one chain per order.
SignalSequence total_output(std::span<const FactorChain> chains,
                            const SignalSequence& u, int memory);

/// Smallest L with ||exp(A_i L T)||_F below the threshold for every factor,
/// so kernel mass beyond the memory bound is negligible.
int auto_memory(const FactorChain& chain, double threshold = 1e-12);

}  // namespace volterra
