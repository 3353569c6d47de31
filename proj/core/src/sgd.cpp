#include "dppdesign/sgd.hpp"

#include "dppdesign/emulator.hpp"
#include "dppdesign/error.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

namespace dppdesign {

namespace {

void shuffle(std::vector<Index> &v, Rng &rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

double uniform(Rng &rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

} // namespace

void SgdConfig::validate() const {
  if (batchsize < 1)
    throw InvalidArgument("batchsize must be positive");
  if (num_batches < 1)
    throw InvalidArgument("number of batches must be positive");
  if (epochs < 1)
    throw InvalidArgument("epochs must be positive");
  if (!(lr0 > 0.0) || !(tau > 0.0))
    throw InvalidArgument("learning rate and decay horizon must be positive");
  if (replicates < 1)
    throw InvalidArgument("replicates must be positive");
  if (!(rho > 0.0 && rho < 1.0))
    throw InvalidArgument("rho must lie in (0, 1)");
  if (!(noise_sd >= 0.0))
    throw InvalidArgument("noise sd must be nonnegative");
}

Eigen::Matrix<double, kFriedmanFeatures, 1>
feature_map(const Eigen::Ref<const Eigen::RowVectorXd> &x) {
  if (x.size() != kFriedmanInputs)
    throw InvalidArgument("feature_map expects 5 inputs");
  Eigen::Matrix<double, kFriedmanFeatures, 1> f;
  f << 1.0, std::sin(2.0 * std::numbers::pi * x[0] * x[1]),
      (x[2] - 0.5) * (x[2] - 0.5), (x[3] - 0.5) * (x[3] - 0.5), x[3], x[4];
  return f;
}

Eigen::MatrixXd feature_matrix(const Eigen::MatrixXd &X) {
  Eigen::MatrixXd F(X.rows(), kFriedmanFeatures);
  for (Index i = 0; i < X.rows(); ++i)
    F.row(i) = feature_map(X.row(i)).transpose();
  return F;
}

FriedmanDataset friedman_generate(Index batchsize, Rng &rng, Index num_batches,
                                  double noise_sd) {
  if (batchsize < 1 || num_batches < 1)
    throw InvalidArgument("friedman_generate needs positive batch size and count");
  const Index m = batchsize * num_batches;
  FriedmanDataset data;
  data.noise_sd = noise_sd;
  data.beta_true.resize(kFriedmanFeatures);
  for (Index k = 0; k < kFriedmanFeatures; ++k)
    data.beta_true[k] = uniform(rng, -10.0, 10.0);
  data.X.resize(m, kFriedmanInputs);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < kFriedmanInputs; ++j)
      data.X(i, j) = uniform01(rng);
  data.y = feature_matrix(data.X) * data.beta_true;
  if (noise_sd > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_sd);
    for (Index i = 0; i < m; ++i)
      data.y[i] += noise(rng);
  }
  return data;
}

double squared_loss(const Eigen::MatrixXd &features, const Eigen::VectorXd &y,
                    const Eigen::VectorXd &beta, const std::vector<Index> &rows) {
  double sum = 0.0;
  for (Index r : rows) {
    const double e = features.row(r).dot(beta) - y[r];
    sum += e * e;
  }
  return sum / static_cast<double>(rows.size());
}

Eigen::VectorXd squared_loss_gradient(const Eigen::MatrixXd &features,
                                      const Eigen::VectorXd &y,
                                      const Eigen::VectorXd &beta,
                                      const std::vector<Index> &rows) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(beta.size());
  for (Index r : rows)
    g += (features.row(r).dot(beta) - y[r]) * features.row(r).transpose();
  return (2.0 / static_cast<double>(rows.size())) * g;
}

void check_partition(const Batches &batches, Index m) {
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  Index total = 0;
  for (const auto &b : batches) {
    if (b.empty())
      throw InvalidArgument("batches must be nonempty");
    for (Index i : b) {
      if (i < 0 || i >= m)
        throw InvalidArgument("batch index " + std::to_string(i) +
                              " is out of range");
      if (seen[static_cast<std::size_t>(i)]++)
        throw InvalidArgument("row " + std::to_string(i) +
                              " appears in more than one batch");
      ++total;
    }
  }
  if (total != m)
    throw InvalidArgument("batches cover " + std::to_string(total) + " of " +
                          std::to_string(m) + " rows");
}

SgdFit sgd_fit(const FriedmanDataset &data, const Batches &batches,
               const SgdConfig &config, Rng &rng) {
  const Index m = data.size();
  check_partition(batches, m);
  if (config.epochs < 1 || !(config.lr0 > 0.0) || !(config.tau > 0.0))
    throw InvalidArgument("SGD needs positive epochs, lr0 and tau");

  const Eigen::MatrixXd F = feature_matrix(data.X);
  std::vector<Index> all(static_cast<std::size_t>(m));
  std::iota(all.begin(), all.end(), Index{0});
  std::vector<Index> order(batches.size());
  std::iota(order.begin(), order.end(), Index{0});

  SgdFit fit;
  fit.beta = Eigen::VectorXd::Zero(kFriedmanFeatures);
  fit.loss_trace.reserve(static_cast<std::size_t>(config.epochs));
  double t = 0.0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle(order, rng);
    for (Index b : order) {
      const double lr = config.lr0 / (1.0 + t / config.tau);
      fit.beta -= lr * squared_loss_gradient(F, data.y, fit.beta,
                                             batches[static_cast<std::size_t>(b)]);
      t += 1.0;
    }
    fit.loss_trace.push_back(squared_loss(F, data.y, fit.beta, all));
  }
  return fit;
}

Batches random_batches(Index m, Index batchsize, Rng &rng) {
  if (batchsize < 1 || m % batchsize != 0)
    throw InvalidArgument("dataset size must be a positive multiple of batchsize");
  std::vector<Index> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), Index{0});
  shuffle(perm, rng);
  Batches out;
  for (Index start = 0; start < m; start += batchsize)
    out.emplace_back(perm.begin() + start, perm.begin() + start + batchsize);
  return out;
}

Batches designed_batches(const Eigen::MatrixXd &X, Index batchsize, double rho) {
  const Index m = X.rows();
  if (batchsize < 1 || m % batchsize != 0)
    throw InvalidArgument("dataset size must be a positive multiple of batchsize");
  const CandidateSet rows(X); // rejects duplicate rows
  KernelSpec spec;
  spec.family = KernelFamily::GaussianIso;
  spec.rho = rho;
  KernelMatrix k = build_kernel_matrix(rows, spec);

  Batches out;
  while (k.size() > batchsize) {
    std::vector<Index> batch = emulate_ids(k, batchsize);
    k = condition_kernel(k, batch);
    out.push_back(std::move(batch));
  }
  out.push_back(k.candidate_ids);
  return out;
}

BatchStrategy random_strategy() {
  return [](const FriedmanDataset &data, const SgdConfig &config, Rng &rng) {
    return random_batches(data.size(), config.batchsize, rng);
  };
}

BatchStrategy designed_strategy() {
  return [](const FriedmanDataset &data, const SgdConfig &config, Rng &) {
    return designed_batches(data.X, config.batchsize, config.rho);
  };
}

MseRatioRow mse_ratio_experiment(const SgdConfig &config,
                                 const BatchStrategy &a,
                                 const BatchStrategy &b) {
  config.validate();
  const auto reps = static_cast<std::size_t>(config.replicates);
  std::vector<std::array<double, 5>> err_a(reps), err_b(reps);

  parallel_for(reps, config.jobs, [&](std::size_t r) {
    const std::uint64_t seed = derive_seed(config.seed, r);
    Rng data_rng(derive_seed(seed, 0));
    const FriedmanDataset data = friedman_generate(
        config.batchsize, data_rng, config.num_batches, config.noise_sd);
    Rng batch_rng_a(derive_seed(seed, 1));
    Rng batch_rng_b(derive_seed(seed, 2));
    const Batches ba = a(data, config, batch_rng_a);
    const Batches bb = b(data, config, batch_rng_b);
    Rng order_a(derive_seed(seed, 3));
    Rng order_b(derive_seed(seed, 3));
    const SgdFit fa = sgd_fit(data, ba, config, order_a);
    const SgdFit fb = sgd_fit(data, bb, config, order_b);
    for (Index j = 1; j < kFriedmanFeatures; ++j) {
      const double ea = fa.beta[j] - data.beta_true[j];
      const double eb = fb.beta[j] - data.beta_true[j];
      err_a[r][static_cast<std::size_t>(j - 1)] = ea * ea;
      err_b[r][static_cast<std::size_t>(j - 1)] = eb * eb;
    }
  });

  MseRatioRow row;
  row.batchsize = config.batchsize;
  for (std::size_t j = 0; j < 5; ++j) {
    for (std::size_t r = 0; r < reps; ++r) {
      row.mse_a[j] += err_a[r][j];
      row.mse_b[j] += err_b[r][j];
    }
    row.mse_a[j] /= static_cast<double>(reps);
    row.mse_b[j] /= static_cast<double>(reps);
    row.ratio[j] = row.mse_a[j] / row.mse_b[j];
  }
  return row;
}

MseRatioRow mse_ratio_experiment(const SgdConfig &config) {
  return mse_ratio_experiment(config, random_strategy(), designed_strategy());
}

} // namespace dppdesign
