#include "l1cert/bounds.hpp"
#include "l1cert/errors.hpp"
#include "l1cert/oracle.hpp"

#include "test_matrices.hpp"

#include <gtest/gtest.h>

namespace l1cert {
namespace {

using testing::gaussian;
using testing::identity;
using testing::ones_row;

TEST(GammahatExact, Examples) {
  EXPECT_EQ(gammahat_exact(identity(4), 2), 0.0);
  EXPECT_NEAR(gammahat_exact(ones_row(), 1), 0.5, 1e-9);
  EXPECT_NEAR(gammahat_exact(ones_row(), 2), 1.0, 1e-9);
}

TEST(GammahatExact, TwoFormulationsAgree) {
  for (Index k = 1; k <= 3; ++k) {
    for (Index n = k + 1; n <= 8; n += 2) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const SensingMatrix a = gaussian(k, n, 1000 * k + 10 * n + seed);
        for (Index s = 1; s <= std::min<Index>(n, 3); ++s) {
          EXPECT_NEAR(gammahat_exact(a, s), gammahat_by_supports(a, s), 1e-7)
              << k << "x" << n << " seed " << seed << " s " << s;
        }
      }
    }
  }
}

TEST(GammahatExact, MonotoneAndBounded) {
  const SensingMatrix a = gaussian(3, 7, 77);
  double prev = 0.0;
  for (Index s = 1; s <= 7; ++s) {
    const double g = gammahat_by_supports(a, s);
    EXPECT_GE(g, prev - 1e-12);
    EXPECT_LE(g, 1.0 + 1e-12);
    prev = g;
  }
  EXPECT_NEAR(prev, 1.0, 1e-12);
}

TEST(GammahatExact, SizeGuard) {
  OracleOptions tight;
  tight.size_guard = 50;
  EXPECT_THROW(gammahat_exact(gaussian(3, 10, 1), 3, tight), ResourceError);
  EXPECT_THROW(gammahat_exact(gaussian(3, 10, 1), 0), ArgumentError);
}

TEST(SStar, Examples) {
  EXPECT_EQ(s_star_exact(identity(5)), 5);
  EXPECT_EQ(s_star_exact(ones_row()), 0);
}

TEST(SStar, AboveCertifiedLevel) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SensingMatrix a = gaussian(4, 8, 300 + seed);
    const Index s_star = s_star_exact(a);
    EXPECT_GE(s_star, s_bound_alphas(a).s_certified);
    if (s_star < 8) EXPECT_GE(gammahat_exact(a, s_star + 1), 0.5 - 1e-8);
    if (s_star > 0) EXPECT_LT(gammahat_exact(a, s_star), 0.5);
  }
}

TEST(Empirical, Examples) {
  const EmpiricalResult vacuous = empirical_goodness(ones_row(), 0, 10, 1);
  EXPECT_EQ(vacuous.successes, 10);
  EXPECT_EQ(vacuous.failures, 0);

  const EmpiricalResult boundary = empirical_goodness(ones_row(), 1, 100, 1);
  EXPECT_GT(boundary.failures, 0);
  ASSERT_TRUE(boundary.counterexample.has_value());
  EXPECT_EQ(boundary.successes + boundary.failures, 100);

  const EmpiricalResult id = empirical_goodness(identity(6), 3, 20, 2);
  EXPECT_EQ(id.failures, 0);
  EXPECT_LE(id.worst_error, 1e-6);
}

TEST(Empirical, CertifiedLevelsRecover) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const SensingMatrix a = gaussian(10, 20, 500 + seed);
    const GoodnessCertificate c = s_bound_alpha1(a);
    if (c.s_certified == 0) continue;
    const EmpiricalResult r = empirical_goodness(a, c.s_certified, 30, seed);
    EXPECT_EQ(r.failures, 0) << "seed " << seed << " worst " << r.worst_error;
  }
}

TEST(Empirical, Deterministic) {
  const SensingMatrix a = gaussian(4, 8, 9);
  const EmpiricalResult r1 = empirical_goodness(a, 2, 15, 4);
  const EmpiricalResult r2 = empirical_goodness(a, 2, 15, 4);
  EXPECT_EQ(r1.successes, r2.successes);
  EXPECT_EQ(r1.worst_error, r2.worst_error);
}

TEST(SubmatrixCheck, Examples) {
  for (Index s = 0; s <= 5; ++s) EXPECT_TRUE(submatrix_kernel_check(identity(5), s, 100));
  Matrix m = gaussian(3, 5, 1).entries();
  m.col(4) = m.col(1);
  EXPECT_FALSE(submatrix_kernel_check(SensingMatrix(m), 2, 100));
  EXPECT_THROW(submatrix_kernel_check(identity(3), 4, 10), ArgumentError);
}

TEST(SubmatrixCheck, CertifiedLevels) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SensingMatrix a = gaussian(8, 16, 700 + seed);
    const GoodnessCertificate c = s_bound_alpha1(a);
    if (c.s_certified == 0) continue;
    EXPECT_TRUE(submatrix_kernel_check(a, c.s_certified, 500, seed));
  }
}

}  // namespace
}  // namespace l1cert
