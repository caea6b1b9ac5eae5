#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "volterra/invariance.hpp"

using namespace volterra;

namespace {

// All tuples of the given length with entries in 0..max_lag.
template <typename F>
void for_all_tuples(int length, int max_lag, F&& visit) {
  std::vector<int> tuple(static_cast<std::size_t>(length), 0);
  const auto loop = [&](auto&& self, int pos) -> void {
    if (pos == length) {
      visit(tuple);
      return;
    }
    for (int k = 0; k <= max_lag; ++k) {
      tuple[static_cast<std::size_t>(pos)] = k;
      self(self, pos + 1);
    }
  };
  loop(loop, 0);
}

}  // namespace

TEST_CASE("triangular multiplicity factors") {
  CHECK(multiplicity_triangular(std::vector<int>{1, 2, 5}).denominator == 1);
  CHECK(multiplicity_triangular(std::vector<int>{3, 3, 7}).denominator == 2);
  CHECK(multiplicity_triangular(std::vector<int>{0, 0, 0, 4}).denominator == 6);
  CHECK_THROWS_AS(multiplicity_triangular(std::vector<int>{2, 1}),
                  std::invalid_argument);
}

TEST_CASE("regular multiplicity factors, including the worked order-4 cases") {
  CHECK(multiplicity_regular(std::vector<int>{1, 2, 3}).denominator == 1);
  CHECK(multiplicity_regular(std::vector<int>{0, 2, 3}).denominator == 2);
  CHECK(multiplicity_regular(std::vector<int>{0, 0, 3}).denominator == 6);
  CHECK(multiplicity_regular(std::vector<int>{0, 2, 0}).denominator == 4);
  CHECK(multiplicity_regular(std::vector<int>{}).denominator == 1);  // order 1
  CHECK_THROWS_AS(multiplicity_regular(std::vector<int>{1, -1}),
                  std::invalid_argument);
}

TEST_CASE("index transform, both directions") {
  CHECK(regular_to_triangular(std::vector<int>{1, 2, 3}) ==
        std::vector<int>{3, 5, 6});
  CHECK(regular_to_triangular(std::vector<int>{0, 0, 0}) ==
        std::vector<int>{0, 0, 0});
  // Zero-run structure: gaps (0,2,0,0) put the coincidences at the low end.
  CHECK(regular_to_triangular(std::vector<int>{0, 2, 0, 0}) ==
        std::vector<int>{0, 0, 2, 2});
  CHECK(triangular_to_regular(std::vector<int>{3, 5, 6}) ==
        std::vector<int>{1, 2, 3});
  CHECK(triangular_to_regular(std::vector<int>{2, 2, 2}) ==
        std::vector<int>{0, 0, 2});
  CHECK_THROWS_AS(triangular_to_regular(std::vector<int>{3, 1}),
                  std::invalid_argument);
}

TEST_CASE("KernelIndex wrappers check the convention") {
  KernelIndex regular{IndexConvention::regular, {1, 2, 3}};
  const KernelIndex tri = regular_to_triangular(regular);
  CHECK(tri.convention == IndexConvention::triangular);
  CHECK(tri.lags == std::vector<int>{3, 5, 6});
  CHECK(triangular_to_regular(tri).lags == regular.lags);
  CHECK_THROWS_AS(regular_to_triangular(tri), std::invalid_argument);
}

TEST_CASE("round trip is the identity, exhaustively") {
  for (int p = 1; p <= 5; ++p) {
    for_all_tuples(p, 4, [&](const std::vector<int>& ns) {
      CHECK(triangular_to_regular(regular_to_triangular(ns)) == ns);
    });
  }
}

TEST_CASE("transform consistency of the multiplicity factors, exhaustively") {
  for (int p = 1; p <= 5; ++p) {
    for_all_tuples(p, 3, [&](const std::vector<int>& ns) {
      const auto m_reg = multiplicity_regular(
          std::span<const int>(ns).subspan(0, static_cast<std::size_t>(p - 1)));
      const auto m_tri = multiplicity_triangular(regular_to_triangular(ns));
      CHECK(m_reg == m_tri);  // exact rational equality
    });
  }
}

TEST_CASE("suffix sums equal the reversed triangular tuple") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 5);
    std::vector<int> ns(static_cast<std::size_t>(p));
    for (int& v : ns) v = static_cast<int>(rng() % 5);
    const std::vector<int> taus = regular_to_triangular(ns);
    for (int i = 0; i < p; ++i) {
      int suffix = 0;
      for (int j = i; j < p; ++j) suffix += ns[static_cast<std::size_t>(j)];
      CHECK(suffix == taus[static_cast<std::size_t>(p - 1 - i)]);
    }
  }
}

TEST_CASE("multiplicity factors lie in (0, 1] and hit 1 exactly off the border") {
  for (int p = 2; p <= 4; ++p) {
    for_all_tuples(p, 2, [&](const std::vector<int>& ns) {
      const auto m = multiplicity_regular(
          std::span<const int>(ns).subspan(0, static_cast<std::size_t>(p - 1)));
      CHECK(m.value() > 0.0);
      CHECK(m.value() <= 1.0);
      bool any_zero = false;
      for (int i = 0; i + 1 < p; ++i) any_zero = any_zero || ns[static_cast<std::size_t>(i)] == 0;
      CHECK((m.denominator == 1) == !any_zero);
    });
  }
}

TEST_CASE("sample_regular on the scalar fixture") {
  const FactorChain chain = bilinear_to_chain(testing::scalar_fixture(), 2);

  // Interior of the domain: the factor is 1.
  const std::vector<int> interior{1, 2};
  std::vector<double> taus{1.0, 2.0};
  CHECK(sample_regular(chain, interior) ==
        doctest::Approx(kernel_value(chain, taus)).epsilon(1e-14));

  // One leading zero: exp(-1)/2!.
  CHECK(sample_regular(chain, std::vector<int>{0, 1}) ==
        doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-13));

  // All-but-last zeros collapse to 1/p!.
  const FactorChain chain4 = bilinear_to_chain(testing::scalar_fixture(), 4);
  const std::vector<int> edge{0, 0, 0, 2};
  std::vector<double> edge_taus{0.0, 0.0, 0.0, 2.0};
  CHECK(sample_regular(chain4, edge) ==
        doctest::Approx(kernel_value(chain4, edge_taus) / 24.0).epsilon(1e-13));

  CHECK_THROWS_AS(sample_regular(chain, std::vector<int>{1}), std::invalid_argument);
}

TEST_CASE("sample_triangular agrees with sample_regular through the transform") {
  const FactorChain chain = bilinear_to_chain(testing::scalar_fixture(), 3);

  // Strictly increasing lags carry factor 1.
  const std::vector<int> increasing{1, 3, 4};
  CHECK(multiplicity_triangular(increasing).denominator == 1);

  // Coincident lags carry 1/p!.
  const std::vector<int> coincident{2, 2, 2};
  const std::vector<int> as_regular = triangular_to_regular(coincident);
  std::vector<double> taus(as_regular.size());
  for (std::size_t i = 0; i < taus.size(); ++i) taus[i] = static_cast<double>(as_regular[i]);
  CHECK(sample_triangular(chain, coincident) ==
        doctest::Approx(kernel_value(chain, taus) / 6.0).epsilon(1e-13));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> ns(3);
    for (int& v : ns) v = static_cast<int>(rng() % 4);
    const std::vector<int> tri = regular_to_triangular(ns);
    CHECK(sample_triangular(chain, tri) ==
          doctest::Approx(sample_regular(chain, ns)).epsilon(1e-14));
  }

  CHECK_THROWS_AS(sample_triangular(chain, std::vector<int>{3, 1, 2}),
                  std::invalid_argument);
}
