#pragma once

// Central Wishart distributions over R, C, H and O, after the beta-scaled
// convention: X ~ N(0, Sigma, I_n) has density proportional to
// etr(-(beta/2) Sigma^{-1} X* X), i.e. each real component of X Sigma^{-1/2}
// has variance 1/beta, and S = X* X.  E[S] = n Sigma for every beta.
//
// Analytic results depend on Sigma (and Omega) only through eigenvalues.

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "jackdiv/core.hpp"
#include "jackdiv/hypergeom.hpp"

namespace jackdiv {

struct WishartModel {
  int m = 1;
  double n = 1.0;
  std::vector<double> sigma_eigs{1.0};
  DivisionAlgebra algebra{1};

  // Throws DomainError unless m >= 1, sigma_eigs has m positive finite
  // entries and n > m - 1.
  void validate() const;
  double trace_sigma_inv() const;
  double log_det_sigma() const;
};

struct EigenSample {
  // Descending.
  std::vector<double> eigenvalues;
  // Two eigenvalues compared exactly equal.
  bool tied = false;
};

// One draw of the spectrum of S.  Requires beta in {1,2,4} and integer n >= m.
EigenSample draw_wishart(const WishartModel& model, std::mt19937_64& rng);

// `count` independent draws; sample i depends only on (seed, i), not on the
// thread count.
std::vector<EigenSample> sample_wishart(const WishartModel& model, std::uint64_t seed,
                                        std::size_t count, int threads = 1);

// P(S < Omega) for Omega commuting with Sigma: omega_eigs[i] pairs with
// sigma_eigs[i].  Kummer-transformed (all terms positive).
SeriesResult cdf_wishart_region(const WishartModel& model, const std::vector<double>& omega_eigs,
                                const SeriesTruncation& trunc = {});

// General real symmetric (beta=1) Omega and Sigma: the series depends on the
// spectrum of Omega Sigma^{-1}.  model.sigma_eigs is not used.
SeriesResult cdf_wishart_region(const WishartModel& model, const Eigen::MatrixXd& omega,
                                const Eigen::MatrixXd& sigma,
                                const SeriesTruncation& trunc = {});

// Same from the spectrum of Omega Sigma^{-1} directly.
SeriesResult cdf_wishart_region_spectrum(const WishartModel& model,
                                         const std::vector<double>& omega_sigma_inv,
                                         const SeriesTruncation& trunc = {});

// P(lambda_max < x), Kummer-transformed series.
SeriesResult cdf_lambda_max(const WishartModel& model, double x,
                            const SeriesTruncation& trunc = {});

// P(lambda_max < x) from the untransformed alternating series; for
// comparison only.
SeriesResult cdf_lambda_max_raw(const WishartModel& model, double x,
                                const SeriesTruncation& trunc = {});

// r = (n-m+1)beta/2 - 1 when it is a positive integer; throws
// UnsupportedError otherwise.
int lambda_min_order(const WishartModel& model);

// P(lambda_min < y) as the exact finite sum; no truncation.
double cdf_lambda_min(const WishartModel& model, double y);

// Joint density of the ordered eigenvalues lambda_1 >= ... >= lambda_m > 0.
double joint_eigen_density(const WishartModel& model, const std::vector<double>& lambdas,
                           const SeriesTruncation& trunc = {});

}  // namespace jackdiv
