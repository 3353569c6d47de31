#include "dppdesign/dpp.hpp"
#include "dppdesign/emulator.hpp"
#include "dppdesign/error.hpp"

#include "instances.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace dppdesign;

namespace {

EigenSystem system_with(std::vector<double> values) {
  EigenSystem e;
  const auto n = static_cast<Index>(values.size());
  e.eigenvalues = Eigen::Map<Eigen::VectorXd>(values.data(), n);
  e.eigenvectors = Eigen::MatrixXd::Identity(n, n);
  for (Index i = 0; i < n; ++i)
    e.candidate_ids.push_back(i);
  return e;
}

CandidateSet line_grid(Index m) { return CandidateSet::grid(m, 1); }

bool shares_coordinate(const Design &d) {
  for (Index i = 0; i < d.size(); ++i)
    for (Index j = i + 1; j < d.size(); ++j)
      for (Index k = 0; k < d.coords.cols(); ++k)
        if (d.coords(i, k) == d.coords(j, k))
          return true;
  return false;
}

} // namespace

TEST(ModeSubset, LeadingIndices) {
  const EigenSystem e = system_with({5, 3, 2, 1});
  EXPECT_EQ(select_mode_subset(e, 2), (std::vector<Index>{0, 1}));
  EXPECT_EQ(select_mode_subset(e, 4), (std::vector<Index>{0, 1, 2, 3}));
  EXPECT_THROW(select_mode_subset(e, 5), CardinalityError);
  EXPECT_THROW(select_mode_subset(e, 0), CardinalityError);
}

TEST(ModeSubset, TiedEigenvaluesKeepStableOrder) {
  const EigenSystem e = system_with({4, 2, 2, 1});
  EXPECT_EQ(select_mode_subset(e, 2), (std::vector<Index>{0, 1}));
}

TEST(Emulator, SinglePointIsArgmaxOfLeadingEigenvector) {
  const CandidateSet c = line_grid(3);
  const KernelMatrix k = build_kernel_matrix(c, {KernelFamily::GaussianIso, 0.3, 0.0});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k.entries);
  const Eigen::VectorXd phi = solver.eigenvectors().col(2);
  Index want = 0;
  phi.cwiseAbs2().maxCoeff(&want);
  const Design d = emulate_design(k, 1, c);
  ASSERT_EQ(d.size(), 1);
  EXPECT_EQ(d.indices[0], want);
  EXPECT_EQ(d.indices[0], 1);
}

TEST(Emulator, WithinTopTwoOfEnumeration) {
  const CandidateSet c = line_grid(8);
  const KernelMatrix k = build_kernel_matrix(c, {KernelFamily::GaussianIso, 0.3, 0.0});
  std::vector<double> dets;
  oracle::for_each_subset(8, 3, [&](const oracle::Subset &s) {
    dets.push_back(oracle::cofactor_det(oracle::principal(k.entries, s)));
  });
  ASSERT_EQ(dets.size(), 56u);
  std::sort(dets.rbegin(), dets.rend());
  const Design d = emulate_design(k, 3, c);
  EXPECT_GE(*d.log_det, std::log(dets[1]) - 1e-9);
}

TEST(Emulator, DeterministicAndIdempotent) {
  const CandidateSet c = CandidateSet::grid(7, 2);
  const KernelMatrix k = build_kernel_matrix(c, {});
  const Design a = emulate_design(k, 6, c);
  const Design b = emulate_design(k, 6, c);
  EXPECT_EQ(a.indices, b.indices);
  EXPECT_EQ(*a.log_det, *b.log_det);
  EXPECT_EQ(a.provenance, Provenance::Emulated);
  EXPECT_EQ(std::set<Index>(a.indices.begin(), a.indices.end()).size(), 6u);
}

TEST(Emulator, TieRngOnlyPermutesAmongTies) {
  const CandidateSet c = CandidateSet::grid(5, 2);
  const KernelMatrix k = build_kernel_matrix(c, {KernelFamily::GaussianIso, 1e-6, 0.0});
  Rng r1(1), r2(1);
  EXPECT_EQ(emulate_design(k, 4, c, &r1).indices, emulate_design(k, 4, c, &r2).indices);
  const Design plain = emulate_design(k, 4, c);
  Rng r3(99);
  EXPECT_NEAR(*emulate_design(k, 4, c, &r3).log_det, *plain.log_det, 1e-8);
}

TEST(Emulator, CardinalityErrors) {
  const CandidateSet c = line_grid(4);
  const KernelMatrix k = build_kernel_matrix(c, {});
  EXPECT_THROW(emulate_design(k, 0, c), CardinalityError);
  EXPECT_THROW(emulate_design(k, 5, c), CardinalityError);
  EXPECT_EQ(emulate_design(k, 4, c).size(), 4);
}

TEST(ViolatingSet, EmptyDesign) {
  const CandidateSet c = CandidateSet::grid(4, 2);
  EXPECT_TRUE(violating_set(c, make_design(c, {}, Provenance::Random)).empty());
}

TEST(ViolatingSet, OnePointCountsRowAndColumn) {
  for (Index m = 2; m <= 7; ++m) {
    const CandidateSet c = CandidateSet::grid(m, 2);
    const std::vector<Index> one{m + 1};
    const auto s = violating_set(c, make_design(c, one, Provenance::Random));
    EXPECT_EQ(static_cast<Index>(s.size()), 2 * (m - 1));
  }
}

TEST(ViolatingSet, TwoPointsInGeneralPositionMatchEnumeration) {
  const CandidateSet c = CandidateSet::grid(5, 2);
  const std::vector<Index> pts{0 * 5 + 1, 3 * 5 + 4}; // rows 0,3 and cols 1,4
  const auto s = violating_set(c, make_design(c, pts, Provenance::Random));
  Index want = 0;
  for (Index i = 0; i < 25; ++i) {
    if (i == pts[0] || i == pts[1])
      continue;
    const Index r = i / 5, col = i % 5;
    if (r == 0 || r == 3 || col == 1 || col == 4)
      ++want;
  }
  EXPECT_EQ(want, 14);
  EXPECT_EQ(static_cast<Index>(s.size()), want);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
}

TEST(ViolatingSet, ToleranceOffLattice) {
  Eigen::MatrixXd p(3, 2);
  p << 0.2, 0.3, 0.2 + 5e-10, 0.9, 0.7, 0.3 + 1e-6;
  const CandidateSet c(p);
  const std::vector<Index> first{0};
  const auto s = violating_set(c, make_design(c, first, Provenance::Random));
  EXPECT_EQ(s, std::vector<Index>{1});
}

TEST(Sequential, SingleBatchReducesToEmulator) {
  const CandidateSet c = CandidateSet::grid(8, 2);
  KernelSpec spec;
  spec.rho = 0.02;
  SequentialState st;
  st.batch_sizes = {7};
  st.rho_schedule = {0.02};
  const Design seq = sequential_design(c, spec, st, false);
  const Design emu = emulate_design(build_kernel_matrix(c, spec), 7, c);
  EXPECT_EQ(seq.indices, emu.indices);
  EXPECT_EQ(seq.provenance, Provenance::Sequential);
}

TEST(Sequential, SelectedPointsNeverReappear) {
  std::mt19937_64 gen(21);
  for (int run = 0; run < 100; ++run) {
    const Index m = 5 + static_cast<Index>(gen() % 4);
    const CandidateSet c = CandidateSet::grid(m, 2);
    SequentialState st;
    const Index batches = 1 + static_cast<Index>(gen() % 3);
    for (Index b = 0; b < batches; ++b) {
      st.batch_sizes.push_back(1 + static_cast<Index>(gen() % 3));
      st.rho_schedule.push_back(std::pow(10.0, -1.0 - static_cast<double>(gen() % 6)));
    }
    const Index pre = static_cast<Index>(gen() % 3);
    std::vector<Index> existing;
    while (static_cast<Index>(existing.size()) < pre) {
      const Index id = static_cast<Index>(gen() % static_cast<std::uint64_t>(m * m));
      if (std::find(existing.begin(), existing.end(), id) == existing.end())
        existing.push_back(id);
    }
    st.existing = make_design(c, existing, Provenance::Random);
    st.excluded = {static_cast<Index>(gen() % static_cast<std::uint64_t>(m * m))};
    Rng tie(gen());
    const Design d = sequential_design(c, {}, st, false, &tie);
    Index total = pre;
    for (Index b : st.batch_sizes)
      total += b;
    ASSERT_EQ(d.size(), total);
    EXPECT_EQ(std::set<Index>(d.indices.begin(), d.indices.end()).size(),
              static_cast<std::size_t>(total));
    EXPECT_TRUE(std::equal(existing.begin(), existing.end(), d.indices.begin()));
    for (Index i = pre; i < d.size(); ++i)
      EXPECT_NE(d.indices[static_cast<std::size_t>(i)], st.excluded[0]);
  }
}

TEST(Sequential, ProjectionInvariantHolds) {
  std::mt19937_64 gen(31);
  for (int run = 0; run < 40; ++run) {
    const CandidateSet c = CandidateSet::grid(10 + static_cast<Index>(gen() % 4), 2);
    SequentialState st;
    st.batch_sizes = {4, 3, 2};
    st.rho_schedule = {1e-10, 1e-5, 1e-3};
    Rng tie(gen());
    const Design d = sequential_design(c, {}, st, true, &tie);
    EXPECT_FALSE(shares_coordinate(d));
  }
}

TEST(Sequential, CapacityErrorNamesBatch) {
  const CandidateSet c = CandidateSet::grid(3, 2);
  SequentialState st;
  st.batch_sizes = {2, 2};
  st.rho_schedule = {0.01, 0.01};
  try {
    sequential_design(c, {}, st, true);
    FAIL() << "expected a capacity error";
  } catch (const CapacityError &e) {
    EXPECT_EQ(e.batch(), 1u);
  }
}

TEST(Sequential, ScheduleMustMatchBatches) {
  const CandidateSet c = CandidateSet::grid(4, 2);
  SequentialState st;
  st.batch_sizes = {2, 2};
  st.rho_schedule = {0.01};
  EXPECT_THROW(sequential_design(c, {}, st, false), InvalidArgument);
}

// Regression guard on small problems: greedy stays within a factor 2 of the
// exhaustive optimum.
TEST(EmulatorProperty, WithinHalfOfEnumeratedOptimum) {
  std::mt19937_64 gen(2024);
  for (int i = 0; i < 50; ++i) {
    const auto inst = testing_support::small_instance(gen);
    const Design d = emulate_design(inst.kernel, inst.n, inst.candidates);
    const double best = oracle::best_minor(inst.kernel.entries, inst.n).det;
    EXPECT_GE(std::exp(*d.log_det), 0.5 * best) << "instance " << i;
  }
}

TEST(EmulatorProperty, DominatesRandomDpp) {
  std::mt19937_64 gen(2025);
  int dominant = 0;
  const int instances = 50;
  for (int i = 0; i < instances; ++i) {
    const auto inst = testing_support::small_instance(gen);
    const double emu = *emulate_design(inst.kernel, inst.n, inst.candidates).log_det;
    Rng rng(gen());
    bool all = true;
    for (int draw = 0; draw < 100 && all; ++draw) {
      const Design s = sample_fixed_rank_dpp(inst.kernel, inst.n, inst.candidates, rng);
      all = emu >= *s.log_det - 1e-12;
    }
    dominant += all;
  }
  RecordProperty("dominant_instances", dominant);
  EXPECT_GE(dominant, 48) << dominant << " of " << instances;
}
