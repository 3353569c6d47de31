#include "dppdesign/cb_tables.hpp"
#include "dppdesign/dpp.hpp"
#include "dppdesign/error.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

using namespace dppdesign;

namespace {

std::vector<double> random_spectrum(std::mt19937_64 &rng, Index n) {
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<double> l(static_cast<std::size_t>(n));
  for (double &x : l)
    x = u(rng);
  std::sort(l.rbegin(), l.rend());
  return l;
}

} // namespace

TEST(CBTables, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(1);
  for (Index N = 1; N <= 10; ++N) {
    const std::vector<double> l = random_spectrum(rng, N);
    const CBTables t = build_cb_tables(l, N);
    for (Index j = 0; j <= N; ++j) {
      const std::vector<double> suffix(l.begin() + j, l.end());
      for (Index k = 0; k <= N; ++k) {
        const double want = k <= N - j ? oracle::esp_enumerated(suffix, k) : 0.0;
        const double got = t.r(k, j);
        if (want == 0.0)
          EXPECT_EQ(got, 0.0);
        else
          EXPECT_NEAR(got / want, 1.0, 1e-10) << "N=" << N << " j=" << j << " k=" << k;
      }
    }
  }
}

TEST(CBTables, AgreesWithNewtonIdentities) {
  std::mt19937_64 rng(2);
  for (Index N = 1; N <= 12; ++N) {
    const std::vector<double> l = random_spectrum(rng, N);
    const CBTables t = build_cb_tables(l, N);
    const std::vector<double> e = oracle::esp_newton(l, N);
    for (Index k = 0; k <= N; ++k)
      EXPECT_NEAR(t.r(k, 0) / e[static_cast<std::size_t>(k)], 1.0, 1e-8);
  }
}

TEST(CBTables, DomainAndCardinalityErrors) {
  const std::vector<double> l{1.0, -0.5};
  EXPECT_THROW(build_cb_tables(l, 1), DomainError);
  const std::vector<double> ok{1.0, 0.5};
  EXPECT_THROW(build_cb_tables(ok, 3), CardinalityError);
}

TEST(CBTables, SampledCardinalityIsExact) {
  std::mt19937_64 cfg(3);
  Rng rng(4);
  for (int draw = 0; draw < 10000; ++draw) {
    const Index N = 1 + static_cast<Index>(cfg() % 20);
    const Index n = static_cast<Index>(cfg() % static_cast<std::uint64_t>(N + 1));
    const std::vector<double> l = random_spectrum(cfg, N);
    const CBTables t = build_cb_tables(l, n);
    const std::vector<Index> s = sample_conditional_bernoulli(t, rng);
    ASSERT_EQ(static_cast<Index>(s.size()), n);
    for (std::size_t i = 1; i < s.size(); ++i)
      ASSERT_LT(s[i - 1], s[i]);
  }
}

TEST(CBTables, FailsWhenTooFewPositiveEigenvalues) {
  const std::vector<double> l{2.0, 0.0, 0.0};
  const CBTables t = build_cb_tables(l, 2);
  Rng rng(1);
  EXPECT_THROW(sample_conditional_bernoulli(t, rng), SamplerError);
}

TEST(CBTables, SubsetLawProportionalToEigenvalueProducts) {
  const std::vector<double> l{3.0, 2.0, 1.0, 0.5};
  const CBTables t = build_cb_tables(l, 2);
  Rng rng(9);
  std::map<std::vector<Index>, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i)
    ++counts[sample_conditional_bernoulli(t, rng)];
  const double total = oracle::esp_enumerated(l, 2);
  oracle::for_each_subset(4, 2, [&](const oracle::Subset &s) {
    const double p = l[static_cast<std::size_t>(s[0])] * l[static_cast<std::size_t>(s[1])] / total;
    const double se = std::sqrt(p * (1 - p) / draws);
    EXPECT_NEAR(counts[s] / static_cast<double>(draws), p, 4 * se);
  });
}

TEST(ProjectionBasis, WeightsNonnegativeAndNormalisedAtEveryStep) {
  std::mt19937_64 gen(5);
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Index N = 6 + trial % 10;
    const KernelMatrix k = KernelMatrix::from_entries(oracle::random_psd(N, gen));
    const EigenSystem e = eigendecompose(k);
    const Index n = 1 + trial % 4;
    ProjectionBasis p(e.eigenvectors.leftCols(n));
    for (Index step = 0; step < n; ++step) {
      const Eigen::VectorXd raw = p.raw_weights();
      EXPECT_GE(raw.minCoeff(), -1e-12);
      EXPECT_NEAR(raw.sum(), 1.0, 1e-9);
      const Eigen::VectorXd w = p.weights();
      EXPECT_GE(w.minCoeff(), 0.0);
      const std::size_t pick = sample_discrete(rng, w.data(), static_cast<std::size_t>(N), 1.0);
      p.condition_on(static_cast<Index>(pick));
      if (p.remaining() > 0)
        EXPECT_NEAR(p.raw_weights()[static_cast<Index>(pick)], 0.0, 1e-12);
    }
  }
}

TEST(Dpp, FixedRankDrawsHaveExactCardinality) {
  std::mt19937_64 gen(7);
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Index N = 2 + static_cast<Index>(gen() % 19);
    const Index n = 1 + static_cast<Index>(gen() % static_cast<std::uint64_t>(N));
    Eigen::MatrixXd pts(N, 1);
    for (Index i = 0; i < N; ++i)
      pts(i, 0) = (static_cast<double>(i) + 0.5) / static_cast<double>(N);
    const CandidateSet c(pts, true);
    const KernelMatrix k = KernelMatrix::from_entries(oracle::random_psd(N, gen));
    const Design d = sample_fixed_rank_dpp(k, n, c, rng);
    ASSERT_EQ(d.size(), n);
    ASSERT_TRUE(d.log_det.has_value());
  }
}

TEST(Dpp, SameSeedSameDraw) {
  const CandidateSet c = CandidateSet::grid(6, 2);
  const KernelMatrix k = build_kernel_matrix(c, {});
  Rng a(42), b(42);
  EXPECT_EQ(sample_fixed_rank_dpp(k, 5, c, a).indices,
            sample_fixed_rank_dpp(k, 5, c, b).indices);
}

TEST(Dpp, RejectsBadCardinality) {
  const CandidateSet c = CandidateSet::grid(3, 1);
  const KernelMatrix k = build_kernel_matrix(c, {});
  Rng rng(1);
  EXPECT_THROW(sample_fixed_rank_dpp(k, 0, c, rng), CardinalityError);
  EXPECT_THROW(sample_fixed_rank_dpp(k, 4, c, rng), CardinalityError);
}

TEST(LogPmf, SinglePointIsLogOnePlusNugget) {
  const CandidateSet c = CandidateSet::grid(4, 2);
  const KernelMatrix k = build_kernel_matrix(c, {KernelFamily::GaussianIso, 0.2, 0.3});
  const std::vector<Index> one{5};
  EXPECT_NEAR(dpp_log_pmf(k, one).value, std::log(1.3), 1e-15);
  EXPECT_EQ(dpp_log_pmf(k, {}).value, 0.0);
}

TEST(LogPmf, MatchesCofactorExpansion) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXd m = oracle::random_psd(8, gen);
    const KernelMatrix k = KernelMatrix::from_entries(m);
    std::vector<Index> all{0, 1, 2, 3, 4, 5, 6, 7};
    std::shuffle(all.begin(), all.end(), gen);
    const std::vector<Index> pick(all.begin(), all.begin() + 4);
    const double want = std::log(oracle::cofactor_det(oracle::principal(m, pick)));
    const LogDet got = dpp_log_pmf(k, pick);
    EXPECT_FALSE(got.singular);
    EXPECT_NEAR(got.value, want, 1e-10);
  }
}

TEST(LogPmf, RankDeficientMinorIsSingular) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(0, 1) = m(1, 0) = 1.0; // rows 0 and 1 describe the same point
  const std::vector<Index> pair{0, 1};
  const LogDet d = dpp_log_pmf(KernelMatrix::from_entries(m), pair);
  EXPECT_TRUE(d.singular);
  EXPECT_TRUE(std::isinf(d.value));
  const std::vector<Index> rep{2, 2};
  EXPECT_THROW(dpp_log_pmf(KernelMatrix::from_entries(m), rep), InvalidArgument);
}
