#include "support.hpp"

#include "locps/harness.hpp"

#include <gtest/gtest.h>

using namespace locps;
using namespace testing_support;

TEST(PsdVerdict, NamedExamples) {
  const auto rank_one = psd_verdict(SymMatrix<double>{{1.0, -1.0}, {-1.0, 1.0}});
  EXPECT_EQ(rank_one.verdict, Definiteness::PSD);
  EXPECT_NEAR(rank_one.min_eigenvalue, 0.0, 1e-15);
  EXPECT_EQ(psd_verdict(SymMatrix<Rational>{{q(1), q(-1)}, {q(-1), q(1)}}).verdict, Definiteness::PSD);

  const auto u = psd_verdict(uniform_offdiag<Rational>(3, q(1)));
  EXPECT_EQ(u.verdict, Definiteness::Indefinite);
  EXPECT_NEAR(u.min_eigenvalue, -1.0, 1e-12);

  const auto id = psd_verdict(SymMatrix<double>::identity(5));
  EXPECT_EQ(id.verdict, Definiteness::PD);
  EXPECT_NEAR(id.min_eigenvalue, 1.0, 1e-15);
}

TEST(LocallyPsdVerdict, NamedExamples) {
  const auto two = locally_psd_verdict(counterexample_2x2<Rational>(q(2)), 1);
  EXPECT_TRUE(two.all_psd);
  EXPECT_EQ(two.witnesses.size(), 2u);

  const auto k = locally_psd_verdict(kotel_example<Rational>(), 5);
  EXPECT_TRUE(k.all_psd);
  EXPECT_FALSE(k.all_pd);
  ASSERT_EQ(k.witnesses.size(), 6u);
  for (const auto& w : k.witnesses) {
    EXPECT_EQ(w.verdict, Definiteness::PSD);
    EXPECT_NEAR(w.min_eigenvalue, 0.0, 1e-12);
  }
  EXPECT_EQ(k.witnesses.front().indices, IndexSet::from_one_based({1, 2, 3, 4, 5}));

  const auto u = locally_psd_verdict(uniform_offdiag<double>(4, 0.5), 3);
  EXPECT_TRUE(u.all_psd);
  for (const auto& w : u.witnesses) EXPECT_NEAR(w.min_eigenvalue, 0.0, 1e-12);

  EXPECT_THROW(locally_psd_verdict(SymMatrix<double>::identity(3), 0), std::out_of_range);
  EXPECT_THROW(locally_psd_verdict(SymMatrix<double>::identity(40), 20), GuardExceeded);
}

TEST(ClassifyMembership, NamedExamples) {
  EXPECT_EQ(classify_membership(uniform_offdiag<Rational>(3, q(1))).classification, Classification::LocallyPSD);
  EXPECT_EQ(classify_membership(uniform_offdiag<double>(3, 1.0)).classification, Classification::LocallyPSD);
  EXPECT_EQ(classify_membership(ar_family<Rational>(4, q(-2, 5))).classification, Classification::LocallyPD);
  EXPECT_EQ(classify_membership(ar_family<double>(4, -0.4)).classification, Classification::LocallyPD);
  EXPECT_EQ(classify_membership(SymMatrix<Rational>::identity(4)).classification, Classification::PD);
  EXPECT_EQ(classify_membership(SymMatrix<double>{{1.0, 1.0}, {1.0, 1.0}}).classification, Classification::PSD);
  EXPECT_EQ(classify_membership(kotel_example<Rational>()).classification, Classification::LocallyPSD);
}

TEST(ClassifyMembership, UniformFamilyRegimes) {
  // det < 0 needs x > 1/(n-1); PD submatrices need x < 1/(n-2).
  for (std::size_t n = 3; n <= 8; ++n) {
    const Rational lo = q(1, std::int64_t(n - 1)), hi = q(1, std::int64_t(n - 2));
    EXPECT_EQ(classify_membership(uniform_offdiag<Rational>(n, hi)).classification, Classification::LocallyPSD);
    EXPECT_EQ(classify_membership(uniform_offdiag<Rational>(n, (lo + hi) / 2)).classification,
              Classification::LocallyPD);
    EXPECT_EQ(classify_membership(uniform_offdiag<Rational>(n, lo)).classification, Classification::PSD);
    EXPECT_EQ(classify_membership(uniform_offdiag<Rational>(n, lo / 2)).classification, Classification::PD);
    EXPECT_EQ(classify_membership(uniform_offdiag<Rational>(n, hi * 2, true)).classification, Classification::None);
  }
}

TEST(ClassifyMembership, OrderOneIsRejected) {
  EXPECT_THROW(classify_membership(SymMatrix<double>::identity(1)), std::invalid_argument);
}

TEST(EigenSignature, NamedExamples) {
  EXPECT_EQ(eigen_signature(uniform_offdiag<double>(3, 1.0)), (Signature{1, 0, 2}));
  EXPECT_EQ(eigen_signature(uniform_offdiag<Rational>(3, q(1))), (Signature{1, 0, 2}));
  EXPECT_EQ(eigen_signature(kotel_example<double>()), (Signature{1, 0, 5}));
  EXPECT_EQ(eigen_signature(SymMatrix<double>(4)), (Signature{0, 4, 0}));
  EXPECT_EQ(eigen_signature(SymMatrix<Rational>(4)), (Signature{0, 4, 0}));
}

TEST(ClassifyMembership, DefaultTolerancesAreRelative) {
  const TolerancePolicy t;
  EXPECT_DOUBLE_EQ(t.eig_tol(0.5), 1e-9);
  EXPECT_DOUBLE_EQ(t.eig_tol(100.0), 1e-7);
  EXPECT_DOUBLE_EQ(t.det_neg_tol(10.0, 3), -1e-9);
}

// --- properties on sampled members ----------------------------------------

class SampledMembers : public ::testing::TestWithParam<std::size_t> {};

TEST_P(SampledMembers, ConeInvariants) {
  const std::size_t n = GetParam();
  SampleConfig cfg;
  cfg.n = n;
  cfg.count = 60;
  cfg.seed = 1000 + n;
  const auto batch = sample_cone(cfg);
  ASSERT_EQ(batch.matrices.size(), cfg.count);
  for (const auto& a : batch.matrices) {
    const auto rep = classify_membership(a);
    ASSERT_TRUE(in_locally_psd_cone(rep.classification));
    EXPECT_EQ(rep.signature.negative, 1u);
    if (rep.classification == Classification::LocallyPD) {
      EXPECT_EQ(rep.signature.zero, 0u);
      EXPECT_EQ(rep.signature.positive, n - 1);
      EXPECT_GT(sum_principal_minors(a, n - 1), 0.0);
    }
    const auto unit = normalize_unit_diagonal(a);
    const double eps = TolerancePolicy{}.eig_tol(unit.norm_inf());
    const double lmin = eigenvalues(unit).min();
    EXPECT_GE(lmin, -1.0 / double(n - 2) - eps);
    if (rep.classification == Classification::LocallyPD) {
      EXPECT_GT(lmin, -1.0 / double(n - 2));
    }
    for (double x : unit.entries()) EXPECT_LE(std::abs(x), 1.0 + eps);
  }
}

TEST_P(SampledMembers, SoundAfterExactRecheck) {
  const std::size_t n = GetParam();
  SampleConfig cfg;
  cfg.n = n;
  cfg.count = 25;
  cfg.seed = 77 + n;
  for (const auto& a : sample_cone(cfg).matrices) {
    const auto exact = rationalize(a, 1'000'000'000'000);
    EXPECT_TRUE(in_locally_psd_cone(classify_membership(exact).classification));
  }
}

TEST_P(SampledMembers, DiagonalCongruenceKeepsClassificationExactly) {
  const std::size_t n = GetParam();
  SampleConfig cfg;
  cfg.n = n;
  cfg.count = 10;
  cfg.seed = 5 + n;
  std::mt19937_64 rng(n);
  std::uniform_int_distribution<int> num(1, 9);
  for (const auto& a : sample_cone(cfg).matrices) {
    const auto exact = rationalize(a, 1'000'000'000'000);
    std::vector<Rational> d(n);
    for (auto& x : d) x = q(num(rng), num(rng));
    const auto scaled = diagonal_congruence<Rational>(exact, d);
    EXPECT_EQ(classify_membership(scaled).classification, classify_membership(exact).classification);
    EXPECT_EQ(determinant(scaled) / scaled.diagonal_product(), determinant(exact) / exact.diagonal_product());
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, SampledMembers, ::testing::Values(3, 4, 5, 6, 7, 8));
