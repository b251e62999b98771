#include "l1cert/bounds.hpp"
#include "l1cert/oracle.hpp"

#include "test_matrices.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace l1cert {
namespace {

using testing::gaussian;
using testing::identity;
using testing::ones_row;

void expect_in_dual_ball(const CorrectorMatrix& c, double tol = 1e-9) {
  if (c.beta.is_infinite()) return;
  for (Index j = 0; j < c.y.cols(); ++j) {
    EXPECT_LE(norm_value(dual_norm(c.norm), c.y.col(j)), c.beta.value() + tol) << "column " << j;
  }
}

TEST(MuBound, Examples) {
  // mu = max |A_i^T A_j| / ||A_i||^2 = 1/5, attained at (e1, (1/5, 0, 2, 0)).
  Matrix m = Matrix::Zero(4, 3);
  m(0, 0) = 1.0;
  m.col(1) << 0.2, 0.0, 2.0, 0.0;
  m(1, 2) = 1.0;
  ASSERT_EQ(mutual_incoherence(SensingMatrix(m)), 0.2);
  EXPECT_EQ(s_bound_mu(SensingMatrix(m)).s_certified, 2);

  EXPECT_EQ(s_bound_mu(ones_row()).s_certified, 0);
  EXPECT_EQ(s_bound_mu(identity(5)).s_certified, 5);
  EXPECT_EQ(s_bound_mu(SensingMatrix(Matrix::Identity(3, 3).leftCols(2))).s_certified, 2);
}

TEST(MuBound, CertificateCondition) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SensingMatrix a = gaussian(20, 30, seed);
    const double mu = mutual_incoherence(a);
    const GoodnessCertificate c = s_bound_mu(a);
    const double s = static_cast<double>(c.s_certified);
    EXPECT_LT(s * mu / (1.0 - (s - 1.0) * mu), 1.0);
    if (c.s_certified < std::min(a.rows(), a.cols())) {
      EXPECT_GE((s + 1.0) * mu / (1.0 - s * mu), 1.0);
    }
  }
}

TEST(Alpha1, Examples) {
  const AlphaResult id = compute_alpha1(identity(4));
  EXPECT_NEAR(id.value, 0.0, 1e-9);
  EXPECT_TRUE(id.corrector.y.isApprox(Matrix::Identity(4, 4), 1e-6));

  const AlphaResult r = compute_alpha1(ones_row());
  EXPECT_NEAR(r.value, 0.5, 1e-8);
  EXPECT_NEAR(r.corrector.y(0, 0), 0.5, 1e-6);
  EXPECT_NEAR(r.corrector.y(0, 1), 0.5, 1e-6);
}

TEST(Alpha1, MatchesExactGammahat1) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const SensingMatrix a = gaussian(3, 6, seed);
    const double exact = gammahat_exact(a, 1);
    EXPECT_NEAR(compute_alpha1(a).value, exact, 1e-6) << "seed " << seed;
  }
}

TEST(Alpha1, RangeAndKernelFormsAgree) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const SensingMatrix a = gaussian(5, 14, 100 + seed);
    BoundOptions range;
    range.alpha1_form = Alpha1Form::Range;
    BoundOptions kernel;
    kernel.alpha1_form = Alpha1Form::Kernel;
    const AlphaResult r = compute_alpha1(a, {}, ObservationNorm::L2, range);
    const AlphaResult q = compute_alpha1(a, {}, ObservationNorm::L2, kernel);
    EXPECT_NEAR(r.value, q.value, 1e-7);
    EXPECT_NEAR(corrector_value(a, q.corrector.y, 1), q.value, 1e-12);
  }
}

TEST(Alpha1, KernelFormRejectsFiniteBeta) {
  BoundOptions kernel;
  kernel.alpha1_form = Alpha1Form::Kernel;
  EXPECT_THROW(compute_alpha1(gaussian(3, 6, 1), Beta(2.0), ObservationNorm::L1, kernel), ArgumentError);
}

TEST(Alpha1, FiniteBetaNeedsPolyhedralNorm) {
  EXPECT_THROW(compute_alpha1(gaussian(3, 6, 1), Beta(2.0), ObservationNorm::L2), UnsupportedError);
}

TEST(Alpha1, ColumnsMatchResidualRows) {
  const SensingMatrix a = gaussian(4, 10, 3);
  const AlphaResult r = compute_alpha1(a);
  const auto cols = alpha1_columns(a, r.corrector.y);
  ASSERT_EQ(cols.size(), 10U);
  EXPECT_NEAR(*std::max_element(cols.begin(), cols.end()), r.value, 1e-12);
}

TEST(ImprovedS, Examples) {
  EXPECT_EQ(improved_s_from_corrector(identity(6), Matrix::Identity(6, 6)), 6);
  EXPECT_EQ(improved_s_from_corrector(ones_row(), Matrix::Constant(1, 2, 0.5)), 0);
}

TEST(ImprovedS, MatchesDirectRescan) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SensingMatrix a = gaussian(4, 16, seed);
    const Matrix y = compute_alpha1(a).corrector.y;
    const Matrix r = Matrix::Identity(16, 16) - y.transpose() * a.entries();
    Index expected = 0;
    for (Index s = 1; s <= 16; ++s) {
      double worst = 0.0;
      for (Index j = 0; j < 16; ++j) worst = std::max(worst, norm_s1(r.col(j), s));
      if (worst < 0.5) expected = s;
    }
    EXPECT_EQ(improved_s_from_corrector(a, y), expected);
  }
}

TEST(ImprovedS, AtLeastTheAlpha1Multiple) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SensingMatrix a = gaussian(20, 30, seed);
    const AlphaResult r = compute_alpha1(a);
    const Index s = improved_s_from_corrector(a, r.corrector.y);
    Index plain = 0;
    while (plain < 30 && static_cast<double>(plain + 1) * r.value < 0.5) ++plain;
    EXPECT_GE(s, plain);
  }
}

TEST(AlphaS, Examples) {
  const SensingMatrix a = gaussian(3, 7, 9);
  EXPECT_NEAR(compute_alphas(a, 1).value, compute_alpha1(a).value, 1e-8);
  for (Index s = 1; s <= 4; ++s) EXPECT_NEAR(compute_alphas(identity(4), s).value, 0.0, 1e-8);
}

TEST(AlphaS, SandwichesExactValue) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const SensingMatrix a = gaussian(3, 8, seed);
    const double alpha1 = compute_alpha1(a).value;
    const double alpha2 = compute_alphas(a, 2).value;
    EXPECT_GE(alpha2, gammahat_exact(a, 2) - 1e-6) << "seed " << seed;
    EXPECT_LE(alpha2, 2.0 * alpha1 + 1e-8) << "seed " << seed;
  }
}

TEST(AlphaS, MonotoneInSAndBeta) {
  const SensingMatrix a = gaussian(4, 9, 21);
  double prev = 0.0;
  for (Index s = 1; s <= 4; ++s) {
    const double v = compute_alphas(a, s).value;
    EXPECT_GE(v, prev - 1e-8);
    prev = v;
  }
  for (const ObservationNorm norm : {ObservationNorm::L1, ObservationNorm::Linf}) {
    double last = 2.0;
    for (const double b : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const AlphaResult r = compute_alphas(a, 2, Beta(b), norm);
      expect_in_dual_ball(r.corrector);
      EXPECT_LE(r.value, last + 1e-8) << "beta " << b;
      last = r.value;
    }
    EXPECT_GE(last, compute_alphas(a, 2).value - 1e-8);
  }
}

TEST(AlphaS, ProgramSizeGuard) {
  BoundOptions tight;
  tight.lp_limit = 100;
  EXPECT_THROW(compute_alphas(gaussian(3, 8, 1), 2, {}, ObservationNorm::L2, tight), ResourceError);
  EXPECT_GT(alphas_program_size(4, 128, {}, ObservationNorm::L2), std::size_t{200000});
  EXPECT_GT(alphas_program_size(4, 8, Beta(1.0), ObservationNorm::Linf),
            alphas_program_size(4, 8, {}, ObservationNorm::Linf));
}

TEST(SBoundAlphas, Examples) {
  EXPECT_EQ(s_bound_alphas(identity(5)).s_certified, 5);
  EXPECT_EQ(s_bound_alphas(ones_row()).s_certified, 0);
  EXPECT_EQ(s_bound_alpha1(ones_row()).s_certified, 0);
}

TEST(SBoundAlphas, BetweenMuBoundAndExactLevel) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SensingMatrix a = gaussian(4, 12, seed);
    const GoodnessCertificate c = s_bound_alphas(a);
    EXPECT_GE(c.s_certified, s_bound_mu(a).s_certified);
    EXPECT_GE(c.s_certified, s_bound_alpha1(a).s_certified);
    EXPECT_LE(c.s_certified, s_star_exact(a)) << "seed " << seed;
  }
}

TEST(SBoundAlphas, WitnessCertifiesTheLevel) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SensingMatrix a = gaussian(6, 12, 40 + seed);
    for (const GoodnessCertificate& c : {s_bound_alpha1(a), s_bound_alphas(a)}) {
      ASSERT_TRUE(c.corrector.has_value());
      if (c.s_certified == 0) continue;
      EXPECT_LT(corrector_value(a, c.corrector->y, c.s_certified), 0.5);
      EXPECT_NEAR(corrector_value(a, c.corrector->y, c.s_certified), c.bound_value, 1e-12);
    }
  }
}

TEST(SBoundAlphas, GuardKeepsBestCertificate) {
  const SensingMatrix a = gaussian(8, 16, 5);
  BoundOptions tight;
  tight.lp_limit = 1000;
  const GoodnessCertificate alpha1 = s_bound_alpha1(a);
  if (alpha1.s_certified == 0) GTEST_SKIP() << "instance not 1-good";
  try {
    s_bound_alphas(a, {}, ObservationNorm::L2, tight);
    FAIL() << "expected the size guard to stop the search";
  } catch (const PartialCertificateError& e) {
    EXPECT_EQ(e.best().s_certified, alpha1.s_certified);
  }
}

TEST(Conversions, Examples) {
  const GammaPair p = convert_from_gammahat(1.0 / 3.0, Beta(1.0));
  EXPECT_NEAR(p.gamma, 0.5, 1e-15);
  EXPECT_NEAR(p.beta_gamma.value(), 1.5, 1e-15);

  const GammaPair z = convert_from_gamma(0.0, Beta(2.0));
  EXPECT_EQ(z.gammahat, 0.0);
  EXPECT_EQ(z.beta_gammahat, Beta(2.0));

  const GammaPair inf = convert_from_gamma(0.3, Beta::infinity());
  EXPECT_TRUE(inf.beta_gammahat.is_infinite());

  EXPECT_THROW(convert_from_gamma(1.0, Beta(1.0)), ArgumentError);
  EXPECT_THROW(convert_from_gammahat(0.5, Beta(1.0)), ArgumentError);
}

TEST(Conversions, RoundTrip) {
  for (double g = 0.0; g < 1.0; g += 0.07) {
    const GammaPair p = convert_from_gamma(g, Beta(1.7));
    EXPECT_NEAR(p.gammahat, g / (1.0 + g), 1e-15);
    const GammaPair q = convert_from_gammahat(p.gammahat, p.beta_gammahat);
    EXPECT_NEAR(q.gamma, g, 1e-12);
    EXPECT_NEAR(q.beta_gamma.value(), 1.7, 1e-12);
  }
}

TEST(PerformanceLimit, Examples) {
  PerformanceLimit p = performance_limit(4, 128, 100);
  EXPECT_TRUE(p.applicable);
  EXPECT_DOUBLE_EQ(p.value, 0.5);

  p = performance_limit(4, 127, 3);
  EXPECT_FALSE(p.applicable);
  EXPECT_EQ(p.value, 0.0);

  p = performance_limit(4, 128, 3);
  EXPECT_NEAR(p.value, 9.0 / (4.0 * (3.0 + std::sqrt(8.0))), 1e-15);
  EXPECT_NEAR(p.value, 0.386, 1e-3);
}

TEST(BetaSufficient, Identity) {
  EXPECT_NEAR(beta_sufficient_for_alpha(identity(4), ObservationNorm::L2).value(), 3.0, 1e-9);
  EXPECT_NEAR(image_ball_radius(identity(4)), 1.0, 1e-8);
  EXPECT_NEAR(beta_sufficient_for_alpha(identity(4), ObservationNorm::L1).value(), 1.5, 1e-7);
}

TEST(BetaSufficient, PivotedSubmatrixAgainstEnumeration) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SensingMatrix a = gaussian(4, 8, seed);
    std::vector<Index> picked;
    const double pivoted = pivoted_sigma_min(a, &picked);
    ASSERT_EQ(picked.size(), 4U);
    Matrix sub(4, 4);
    for (Index c = 0; c < 4; ++c) sub.col(c) = a.column(picked[static_cast<std::size_t>(c)]);
    EXPECT_NEAR(Eigen::JacobiSVD<Matrix>(sub).singularValues()(3), pivoted, 1e-12);

    double best = 0.0;
    std::vector<int> mask(8, 0);
    std::fill(mask.begin(), mask.begin() + 4, 1);
    do {
      Matrix m(4, 4);
      Index c = 0;
      for (Index j = 0; j < 8; ++j) {
        if (mask[static_cast<std::size_t>(j)]) m.col(c++) = a.column(j);
      }
      best = std::max(best, Eigen::JacobiSVD<Matrix>(m).singularValues()(3));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    EXPECT_LE(pivoted, best + 1e-12);
    EXPECT_GE(beta_sufficient_for_alpha(a, ObservationNorm::L2).value(), 1.5 * 2.0 / best - 1e-12);
  }
}

TEST(BetaSufficient, RankDeficientRejected) {
  Matrix m(2, 3);
  m << 1, 2, 3, 2, 4, 6;
  EXPECT_THROW(pivoted_sigma_min(SensingMatrix(m)), ArgumentError);
}

TEST(BetaSufficient, RecoversUnconstrainedAlpha) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const SensingMatrix a = gaussian(6, 10, 60 + seed);
    for (const ObservationNorm norm : {ObservationNorm::L1, ObservationNorm::Linf}) {
      const Beta b = beta_sufficient_for_alpha(a, norm);
      for (Index s = 1; s <= 2; ++s) {
        const double free = compute_alphas(a, s).value;
        if (free >= 0.5) continue;
        EXPECT_NEAR(compute_alphas(a, s, b, norm).value, free, 1e-6) << to_string(norm) << " s=" << s;
      }
    }
  }
}

}  // namespace
}  // namespace l1cert
