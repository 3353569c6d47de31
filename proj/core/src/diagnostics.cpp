#include "dppdesign/diagnostics.hpp"

#include "dppdesign/candidates.hpp"
#include "dppdesign/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace dppdesign {

namespace {

void check_points(const Eigen::MatrixXd &points, Index min_count,
                  const char *what) {
  if (points.rows() < min_count)
    throw InvalidArgument(std::string(what) + " needs at least " +
                          std::to_string(min_count) + " point(s), got " +
                          std::to_string(points.rows()));
  if (points.cols() < 1)
    throw InvalidArgument(std::string(what) + " needs d >= 1");
}

// ECDF of `dist` evaluated at each h.
Eigen::VectorXd ecdf(std::vector<double> dist, const Eigen::VectorXd &h_grid) {
  std::sort(dist.begin(), dist.end());
  Eigen::VectorXd out(h_grid.size());
  const auto total = static_cast<double>(dist.size());
  for (Index i = 0; i < h_grid.size(); ++i) {
    const auto hits = std::upper_bound(dist.begin(), dist.end(), h_grid[i]) -
                      dist.begin();
    out[i] = static_cast<double>(hits) / total;
  }
  return out;
}

} // namespace

Eigen::VectorXd linspace(double lo, double hi, Index count) {
  if (count < 1)
    throw InvalidArgument("linspace needs count >= 1");
  return Eigen::VectorXd::LinSpaced(count, lo, hi);
}

Eigen::MatrixXd reference_grid(Index m, Index d) {
  return CandidateSet::grid(m, d).points();
}

Eigen::MatrixXd default_reference_grid(Index candidate_count, Index d) {
  if (candidate_count < 1)
    throw InvalidArgument("reference grid needs a positive candidate count");
  const auto m = static_cast<Index>(
      std::ceil(std::sqrt(static_cast<double>(candidate_count))));
  return reference_grid(m, d);
}

Eigen::VectorXd f_function(const Eigen::MatrixXd &points,
                           const Eigen::MatrixXd &reference,
                           const Eigen::VectorXd &h_grid) {
  check_points(points, 1, "F function");
  check_points(reference, 1, "F reference grid");
  if (reference.cols() != points.cols())
    throw InvalidArgument("F reference grid dimension does not match design");
  std::vector<double> dist(static_cast<std::size_t>(reference.rows()));
  for (Index i = 0; i < reference.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < points.rows(); ++j)
      best = std::min(best, (reference.row(i) - points.row(j)).squaredNorm());
    dist[static_cast<std::size_t>(i)] = std::sqrt(best);
  }
  return ecdf(std::move(dist), h_grid);
}

Eigen::VectorXd g_function(const Eigen::MatrixXd &points,
                           const Eigen::VectorXd &h_grid) {
  check_points(points, 2, "G function");
  const Index n = points.rows();
  std::vector<double> dist(static_cast<std::size_t>(n),
                           std::numeric_limits<double>::infinity());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double dd = (points.row(i) - points.row(j)).squaredNorm();
      dist[static_cast<std::size_t>(i)] = std::min(dist[static_cast<std::size_t>(i)], dd);
      dist[static_cast<std::size_t>(j)] = std::min(dist[static_cast<std::size_t>(j)], dd);
    }
  for (double &v : dist)
    v = std::sqrt(v);
  return ecdf(std::move(dist), h_grid);
}

Eigen::VectorXd ripley_k(const Eigen::MatrixXd &points, double area,
                         const Eigen::VectorXd &r_grid,
                         EdgeCorrection correction) {
  check_points(points, 2, "Ripley's K");
  if (!(area > 0.0))
    throw InvalidArgument("Ripley's K needs a positive region area");
  const Index n = points.rows();
  struct Pair {
    double dist;
    double weight;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Eigen::RowVectorXd diff = points.row(i) - points.row(j);
      double w = 1.0;
      if (correction == EdgeCorrection::Translation) {
        double overlap = 1.0;
        for (Index k = 0; k < diff.size(); ++k)
          overlap *= 1.0 - std::abs(diff[k]);
        w = overlap > 0.0 ? 1.0 / overlap : 0.0;
      }
      pairs.push_back({diff.norm(), w});
    }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair &a, const Pair &b) { return a.dist < b.dist; });

  // Each unordered pair counts twice in the sum over i != j.
  const double scale = 2.0 * area / (static_cast<double>(n) * static_cast<double>(n - 1));
  Eigen::VectorXd out(r_grid.size());
  for (Index i = 0; i < r_grid.size(); ++i) {
    double sum = 0.0;
    for (const Pair &p : pairs) {
      if (p.dist > r_grid[i])
        break;
      sum += p.weight;
    }
    out[i] = scale * sum;
  }
  return out;
}

double k_csr(double r, Index d) {
  if (d < 1)
    throw InvalidArgument("k_csr needs d >= 1");
  const double half = 0.5 * static_cast<double>(d);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) *
         std::pow(r, static_cast<double>(d));
}

LogDet entropy_criterion(const KernelMatrix &kernel, const Design &design) {
  return dpp_log_pmf(kernel, design.indices);
}

LhsIntensity lhs_intensity_check(Index n, Index d) {
  if (n < 2)
    throw InvalidArgument("LHS intensity needs n >= 2");
  if (d < 2)
    throw InvalidArgument("LHS intensity needs d >= 2; with d = 1 every cell "
                          "is occupied");
  const double cells = std::pow(static_cast<double>(n), static_cast<double>(d));
  const auto nn = static_cast<double>(n);
  LhsIntensity out;
  out.ez = nn / cells;
  out.ezz = nn * (nn - 1.0) / (cells * (cells - 1.0));
  const double cov = out.ezz - out.ez * out.ez;
  out.cov_sign = (cov > 0.0) - (cov < 0.0);
  return out;
}

PointPatternSummary summarize(const Eigen::MatrixXd &points,
                              const Eigen::MatrixXd &reference,
                              const Eigen::VectorXd &h_grid,
                              const Eigen::VectorXd &r_grid,
                              EdgeCorrection correction) {
  PointPatternSummary s;
  s.h_grid = h_grid;
  s.r_grid = r_grid;
  s.n = points.rows();
  s.d = points.cols();
  s.f_hat = f_function(points, reference, h_grid);
  s.g_hat = g_function(points, h_grid);
  s.k_hat = ripley_k(points, s.area, r_grid, correction);
  return s;
}

} // namespace dppdesign
