#include "dppdesign/baselines.hpp"
#include "dppdesign/diagnostics.hpp"
#include "dppdesign/error.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace dppdesign;

namespace {

bool is_permutation_column(const Eigen::MatrixXi &bins, Index col) {
  std::vector<int> v(bins.col(col).data(), bins.col(col).data() + bins.rows());
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != static_cast<int>(i) + 1)
      return false;
  return true;
}

} // namespace

TEST(Lhs, SinglePointAtCentre) {
  Rng rng(1);
  const LhsDesign l = lhs_design(1, 3, Placement::Centroid, rng);
  EXPECT_TRUE(l.points.isApproxToConstant(0.5));
}

TEST(Lhs, ColumnsArePermutations) {
  Rng rng(2);
  for (int rep = 0; rep < 1000; ++rep) {
    const Index n = 1 + rep % 17;
    const Index d = 1 + rep % 4;
    const LhsDesign l = lhs_design(n, d, rep % 2 ? Placement::Uniform : Placement::Centroid, rng);
    for (Index j = 0; j < d; ++j)
      ASSERT_TRUE(is_permutation_column(l.bins, j));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < d; ++j) {
        const double lo = (l.bins(i, j) - 1.0) / static_cast<double>(n);
        ASSERT_GE(l.points(i, j), lo);
        ASSERT_LE(l.points(i, j), lo + 1.0 / static_cast<double>(n));
      }
  }
}

TEST(Lhs, CentroidCoordinates) {
  Rng rng(3);
  const LhsDesign l = lhs_design(5, 2, Placement::Centroid, rng);
  for (Index i = 0; i < 5; ++i)
    EXPECT_DOUBLE_EQ(l.points(i, 0), (l.bins(i, 0) - 0.5) / 5.0);
}

TEST(Lhs, SpaceFillingSignature) {
  Rng rng(4);
  const Eigen::MatrixXd ref = reference_grid(20, 2);
  const Eigen::VectorXd h = linspace(0.05, 0.25, 9);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(h.size()), g = f;
  for (int rep = 0; rep < 1000; ++rep) {
    const LhsDesign l = lhs_design(20, 2, Placement::Uniform, rng);
    f += f_function(l.points, ref, h);
    g += g_function(l.points, h);
  }
  for (Index i = 0; i < h.size(); ++i)
    EXPECT_GT(f[i], g[i]) << "h=" << h[i];
}

TEST(RandomDesign, FullAndDistinct) {
  const CandidateSet c = CandidateSet::grid(4, 2);
  Rng rng(5);
  const Design all = random_design(c, 16, rng);
  EXPECT_EQ(std::set<Index>(all.indices.begin(), all.indices.end()).size(), 16u);
  for (int draw = 0; draw < 10000; ++draw) {
    const Design d = random_design(c, 5, rng);
    ASSERT_EQ(std::set<Index>(d.indices.begin(), d.indices.end()).size(), 5u);
  }
  EXPECT_THROW(random_design(c, 17, rng), CardinalityError);
}

TEST(RandomDesign, InclusionFrequencyBinomial) {
  const CandidateSet c = CandidateSet::grid(10, 1);
  Rng rng(6);
  const int draws = 20000;
  std::vector<int> hits(10, 0);
  for (int i = 0; i < draws; ++i)
    for (Index id : random_design(c, 3, rng).indices)
      ++hits[static_cast<std::size_t>(id)];
  const double p = 0.3;
  const double se = std::sqrt(p * (1 - p) / draws);
  for (int h : hits)
    EXPECT_NEAR(h / static_cast<double>(draws), p, 3 * se);
}

TEST(Exchange, ZeroIterationsKeepsInitialDesign) {
  const CandidateSet c = CandidateSet::grid(6, 1);
  const KernelMatrix k = build_kernel_matrix(c, {KernelFamily::GaussianIso, 0.3, 0.0});
  Rng a(9), b(9);
  const ExchangeResult r = fedorov_exchange(k, 3, 0, a, c);
  ASSERT_EQ(r.trace.size(), 1u);
  // The initial design is the leading slice of a uniform shuffle.
  std::vector<Index> perm(6);
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = 0; i < 6; ++i)
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(i) + uniform_index(b, static_cast<std::size_t>(6 - i))]);
  EXPECT_EQ(r.design.indices, std::vector<Index>(perm.begin(), perm.begin() + 3));
  EXPECT_EQ(r.design.provenance, Provenance::Exchange);
}

TEST(Exchange, TraceNondecreasing) {
  const CandidateSet c = CandidateSet::grid(9, 2);
  const KernelMatrix k = build_kernel_matrix(c, {KernelFamily::ExponentialL1, 0.2, 0.0});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const ExchangeResult r = fedorov_exchange(k, 7, 300, rng, c);
    ASSERT_EQ(r.trace.size(), 301u);
    for (std::size_t i = 1; i < r.trace.size(); ++i)
      ASSERT_GE(r.trace[i], r.trace[i - 1]);
    EXPECT_DOUBLE_EQ(r.trace.back(), *r.design.log_det);
  }
}

TEST(Exchange, ReachesEnumeratedOptimum) {
  const CandidateSet c = CandidateSet::grid(8, 1);
  const KernelMatrix k = build_kernel_matrix(c, {KernelFamily::GaussianIso, 0.3, 0.0});
  const double best = std::log(oracle::best_minor(k.entries, 2).det);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    hits += fedorov_exchange(k, 2, 500, rng, c).trace.back() >= best - 1e-12;
  }
  EXPECT_GE(hits, 95);
}

TEST(Clustered, ZeroSdCollapsesToMean) {
  Rng rng(1);
  EXPECT_TRUE(clustered_design(10, 2, 0.5, 0.0, rng).isApproxToConstant(0.5));
  EXPECT_THROW(clustered_design(3, 2, 1.5, 0.1, rng), DomainError);
  EXPECT_THROW(clustered_design(3, 2, 0.5, -0.1, rng), DomainError);
}

TEST(Clustered, SampleMeanNearCentre) {
  Rng rng(2);
  const int reps = 200;
  const Index n = 20;
  double sum = 0.0;
  for (int r = 0; r < reps; ++r) {
    const Eigen::MatrixXd p = clustered_design(n, 2, 0.5, 0.125, rng);
    EXPECT_GE(p.minCoeff(), 0.0);
    EXPECT_LE(p.maxCoeff(), 1.0);
    sum += p.col(0).sum();
  }
  const double mean = sum / (reps * n);
  EXPECT_NEAR(mean, 0.5, 3 * 0.125 / std::sqrt(static_cast<double>(n * reps)));
}

TEST(Clustered, ClusterSignature) {
  Rng rng(3);
  const Eigen::MatrixXd ref = reference_grid(20, 2);
  const Eigen::VectorXd h = linspace(0.05, 0.25, 9);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(h.size()), g = f;
  for (int rep = 0; rep < 1000; ++rep) {
    const Eigen::MatrixXd p = clustered_design(20, 2, 0.5, 0.125, rng);
    f += f_function(p, ref, h);
    g += g_function(p, h);
  }
  for (Index i = 0; i < h.size(); ++i)
    EXPECT_GT(g[i], f[i]) << "h=" << h[i];
}
