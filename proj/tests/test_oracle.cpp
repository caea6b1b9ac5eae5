#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "volterra/cascade.hpp"
#include "volterra/oracle.hpp"

using namespace volterra;
using volterra::testing::nested_eval_regular;
using volterra::testing::nilpotent_fixture;
using volterra::testing::random_signal;
using volterra::testing::random_stable_system;
using volterra::testing::rel_error;
using volterra::testing::scalar_fixture;

TEST_CASE("eval_regular on impulse input reduces to edge samples") {
  const FactorChain chain = bilinear_to_chain(scalar_fixture(), 3);
  const SignalSequence y = eval_regular(chain, unit_impulse(10, 1.0), 16);
  for (int n = 0; n < 10; ++n) {
    const std::vector<int> edge{0, 0, n};
    CHECK(y[n] == doctest::Approx(sample_regular(chain, edge)).epsilon(1e-14));
  }
}

TEST_CASE("eval_regular of the zero signal is zero") {
  const FactorChain chain = bilinear_to_chain(scalar_fixture(), 2);
  CHECK(max_abs(eval_regular(chain, zeros(12, 1.0), 10)) == 0.0);
}

TEST_CASE("two-impulse input matches the hand enumeration and the nested loops") {
  const FactorChain chain = bilinear_to_chain(scalar_fixture(), 2);
  SignalSequence u = zeros(8, 1.0);
  u[0] = 1.0;
  u[1] = 1.0;
  const int memory = 20;
  const SignalSequence y = eval_regular(chain, u, memory);

  // n = 0: only the (0,0) tuple contributes: h(0)h(0)/2 = 1/2.
  CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-13));
  // n = 1: (0,0) at the second impulse, (1,0) and (0,1) across both:
  // 1/2 + e^{-1} + e^{-1}/2.
  CHECK(y[1] == doctest::Approx(0.5 + 1.5 * std::exp(-1.0)).epsilon(1e-13));

  const SignalSequence reference = nested_eval_regular(chain, u, memory);
  CHECK(rel_error(y, reference) <= 1e-14);
}

TEST_CASE("triangular evaluation: impulse input hits coincident lags") {
  const FactorChain chain = bilinear_to_chain(scalar_fixture(), 3);
  const SignalSequence y = eval_triangular(chain, unit_impulse(8, 1.0), 10);
  for (int n = 0; n < 8; ++n) {
    const std::vector<int> coincident{n, n, n};
    CHECK(y[n] ==
          doctest::Approx(sample_triangular(chain, coincident)).epsilon(1e-14));
  }
}

TEST_CASE("regular and triangular evaluations sum identical terms") {
  const BilinearSystem sys = random_stable_system(2, 111);
  const SignalSequence u = random_signal(32, 41, sys.T);
  for (int p = 1; p <= 4; ++p) {
    const FactorChain chain = bilinear_to_chain(sys, p);
    const SignalSequence yr = eval_regular(chain, u, 12);
    const SignalSequence yt = eval_triangular(chain, u, 12);
    CHECK(rel_error(yr, yt) <= 1e-12);
  }
}

TEST_CASE("order-1 evaluation is a truncated convolution") {
  const BilinearSystem sys = random_stable_system(2, 113);
  const FactorChain chain = bilinear_to_chain(sys, 1);
  const SignalSequence u = random_signal(24, 43, sys.T);
  const int memory = 40;
  const SignalSequence y = eval_triangular(chain, u, memory);
  for (int n = 0; n < y.length(); ++n) {
    double expected = 0.0;
    for (int k = 0; k <= std::min(n, memory); ++k) {
      const double h = (sys.c.transpose() * expm(sys.F * (k * sys.T)) * sys.b)(0);
      expected += h * u[n - k];
    }
    CHECK(y[n] == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("homogeneity of degree p in the input") {
  const BilinearSystem sys = random_stable_system(2, 117);
  const FactorChain chain = bilinear_to_chain(sys, 3);
  const SignalSequence u = random_signal(20, 47, sys.T);
  SignalSequence scaled = u;
  for (double& v : scaled.samples) v *= -1.5;

  const SignalSequence base = eval_regular(chain, u, 10);
  const SignalSequence out = eval_regular(chain, scaled, 10);
  SignalSequence expected = base;
  for (double& v : expected.samples) v *= std::pow(-1.5, 3);
  CHECK(rel_error(out, expected) <= 1e-10);
}

TEST_CASE("time invariance within the truncation-safe region") {
  const BilinearSystem sys = random_stable_system(2, 119);
  const FactorChain chain = bilinear_to_chain(sys, 2);
  const SignalSequence u = random_signal(20, 53, sys.T);

  const int delay = 5;
  SignalSequence shifted = zeros(u.length() + delay, sys.T);
  for (int n = 0; n < u.length(); ++n) shifted[n + delay] = u[n];

  const SignalSequence y = eval_regular(chain, u, 14);
  const SignalSequence y_shifted = eval_regular(chain, shifted, 14);
  for (int n = 0; n < y.length(); ++n) {
    CHECK(y_shifted[n + delay] == doctest::Approx(y[n]).epsilon(1e-12));
  }
}

TEST_CASE("total_output sums per-order evaluations") {
  const BilinearSystem sys = nilpotent_fixture();
  const SignalSequence u = random_signal(24, 59, sys.T);

  SUBCASE("single order is the order itself") {
    const std::vector<FactorChain> chains{bilinear_to_chain(sys, 1)};
    const SignalSequence total = total_output(chains, u, 20);
    const SignalSequence single = eval_regular(chains[0], u, 20);
    CHECK(rel_error(total, single) <= 1e-15);
  }

  SUBCASE("zero input gives zero") {
    const std::vector<FactorChain> chains{bilinear_to_chain(sys, 1),
                                          bilinear_to_chain(sys, 2)};
    CHECK(max_abs(total_output(chains, zeros(12, sys.T), 10)) == 0.0);
  }

  SUBCASE("nilpotent fixture: orders 1..3 reproduce the exact response") {
    std::vector<FactorChain> chains;
    for (int p = 1; p <= 3; ++p) chains.push_back(bilinear_to_chain(sys, p));
    const int memory = auto_memory(chains[0]);
    const SignalSequence total = total_output(chains, u, memory);
    const SignalSequence exact = ct_impulse_train_response(sys, u);
    CHECK(rel_error(total, exact) <= 1e-8);
  }
}

TEST_CASE("auto_memory finds the decay horizon") {
  const FactorChain chain = bilinear_to_chain(scalar_fixture(), 2);
  // exp(-27) = 1.9e-12 is still above the threshold, exp(-28) = 6.9e-13 is not.
  CHECK(auto_memory(chain) == 28);

  FactorChain undamped = chain;
  undamped.factors[0].A = Matrix::Zero(1, 1);
  CHECK_THROWS_AS(auto_memory(undamped), std::invalid_argument);
}

TEST_CASE("oracle argument validation") {
  const FactorChain chain = bilinear_to_chain(scalar_fixture(), 2);
  CHECK_THROWS_AS(eval_regular(chain, unit_impulse(4, 1.0), -1),
                  std::invalid_argument);
  const std::vector<FactorChain> none;
  CHECK_THROWS_AS(total_output(none, unit_impulse(4, 1.0), 4),
                  std::invalid_argument);

  FactorChain other_period = bilinear_to_chain(scalar_fixture(), 1);
  other_period.T = 0.5;
  const std::vector<FactorChain> mixed{chain, other_period};
  CHECK_THROWS_AS(total_output(mixed, unit_impulse(4, 1.0), 4),
                  std::invalid_argument);
}
