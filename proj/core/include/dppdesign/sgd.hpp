#ifndef DPPDESIGN_SGD_HPP
#define DPPDESIGN_SGD_HPP

#include "dppdesign/candidates.hpp"
#include "dppdesign/kernel.hpp"
#include "dppdesign/random.hpp"

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace dppdesign {

inline constexpr Index kFriedmanInputs = 5;
inline constexpr Index kFriedmanFeatures = 6;

/// y = beta . feature_map(x) + N(0, noise_sd^2), x uniform on [0,1]^5.
struct FriedmanDataset {
  Eigen::MatrixXd X; ///< m x 5
  Eigen::VectorXd y;
  Eigen::VectorXd beta_true; ///< beta_0..beta_5
  double noise_sd = 1.0;

  Index size() const noexcept { return X.rows(); }
};

using Batches = std::vector<std::vector<Index>>;

struct SgdConfig {
  Index batchsize = 23;
  Index num_batches = 50; ///< dataset size is batchsize * num_batches
  int epochs = 200;
  double lr0 = 0.05;  ///< lr_t = lr0 / (1 + t / tau), t counts steps
  double tau = 1000.0;
  int replicates = 20;
  double rho = 0.01;  ///< gaussian kernel parameter for designed batches
  double noise_sd = 1.0;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  void validate() const;
};

/// (1, sin(2 pi x1 x2), (x3 - .5)^2, (x4 - .5)^2, x4, x5).
Eigen::Matrix<double, kFriedmanFeatures, 1>
feature_map(const Eigen::Ref<const Eigen::RowVectorXd> &x);

/// feature_map applied to every row.
Eigen::MatrixXd feature_matrix(const Eigen::MatrixXd &X);

/// Draws beta ~ Unif(-10, 10)^6, X ~ Unif[0,1]^(m x 5) with
/// m = batchsize * num_batches, then y.
FriedmanDataset friedman_generate(Index batchsize, Rng &rng,
                                  Index num_batches = 50,
                                  double noise_sd = 1.0);

/// Mean squared error over `rows`, and its gradient (2/|b|) sum f (f.beta - y).
double squared_loss(const Eigen::MatrixXd &features, const Eigen::VectorXd &y,
                    const Eigen::VectorXd &beta, const std::vector<Index> &rows);
Eigen::VectorXd squared_loss_gradient(const Eigen::MatrixXd &features,
                                      const Eigen::VectorXd &y,
                                      const Eigen::VectorXd &beta,
                                      const std::vector<Index> &rows);

/// Throws InvalidArgument unless `batches` partitions 0..m-1.
void check_partition(const Batches &batches, Index m);

struct SgdFit {
  Eigen::VectorXd beta;
  std::vector<double> loss_trace; ///< full-data mean squared error per epoch
};

/// Mini-batch SGD from beta = 0. Every epoch visits all batches in an order
/// freshly shuffled with `rng`.
SgdFit sgd_fit(const FriedmanDataset &data, const Batches &batches,
               const SgdConfig &config, Rng &rng);

/// Uniformly random partition into consecutive chunks of `batchsize`.
Batches random_batches(Index m, Index batchsize, Rng &rng);

/// Space-filling partition: each batch is the emulated design of size
/// `batchsize` over the rows not yet consumed, under a gaussian kernel that
/// is Schur-conditioned on every earlier batch. m must be a multiple of
/// batchsize. Rows must be distinct.
Batches designed_batches(const Eigen::MatrixXd &X, Index batchsize, double rho);

using BatchStrategy =
    std::function<Batches(const FriedmanDataset &, const SgdConfig &, Rng &)>;

BatchStrategy random_strategy();
BatchStrategy designed_strategy();

struct MseRatioRow {
  Index batchsize = 0;
  std::array<double, 5> mse_a{}; ///< beta_1..beta_5 under strategy a
  std::array<double, 5> mse_b{};
  std::array<double, 5> ratio{}; ///< mse_a / mse_b
};

/// Per replicate: fresh dataset and beta, one partition per strategy, and
/// both fits run with the same epoch-order stream. Replicate r draws from
/// derive_seed(config.seed, r), so results do not depend on config.jobs.
MseRatioRow mse_ratio_experiment(const SgdConfig &config,
                                 const BatchStrategy &a,
                                 const BatchStrategy &b);

/// Random batches (a) against designed batches (b).
MseRatioRow mse_ratio_experiment(const SgdConfig &config);

} // namespace dppdesign

#endif // DPPDESIGN_SGD_HPP
