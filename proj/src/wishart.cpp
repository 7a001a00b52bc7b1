#include "jackdiv/wishart.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "jackdiv/errors.hpp"
#include "jackdiv/matrix.hpp"
#include "jackdiv/numeric.hpp"
#include "jackdiv/random.hpp"
#include "jackdiv/special.hpp"

namespace jackdiv {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// log of Gamma_m[(m-1)beta/2+1] / ((2/beta)^{beta m n/2} Gamma_m[(n+m-1)beta/2+1]).
long double log_cdf_constant(const WishartModel& w) {
  const double hb = w.algebra.half_beta();
  const double p = (w.m - 1) * hb + 1.0;
  const double c = (w.n + w.m - 1) * hb + 1.0;
  return log_mv_gamma(w.m, w.algebra, p) - log_mv_gamma(w.m, w.algebra, c) -
         static_cast<long double>(w.algebra.beta()) * w.m * w.n / 2.0L *
             std::log(2.0L / w.algebra.beta());
}

SeriesResult scaled(SeriesResult r, long double log_factor) {
  const long double mag = std::log(std::abs(r.value_ld)) + log_factor;
  r.value_ld = (r.value_ld < 0 ? -1.0L : 1.0L) * std::exp(mag);
  if (r.value_ld == 0.0L || !std::isfinite(static_cast<double>(mag))) r.value_ld = 0.0L;
  r.value = static_cast<double>(r.value_ld);
  return r;
}

}  // namespace

void WishartModel::validate() const {
  if (m < 1) throw DomainError("Wishart dimension m must be >= 1");
  if (static_cast<int>(sigma_eigs.size()) != m) {
    throw DomainError("Sigma needs m = " + std::to_string(m) + " eigenvalues (got " +
                      std::to_string(sigma_eigs.size()) + ")");
  }
  for (double s : sigma_eigs) {
    if (!(s > 0) || !std::isfinite(s)) throw DomainError("Sigma eigenvalues must be positive");
  }
  if (!(n > m - 1)) {
    throw DomainError("Wishart density requires beta*n/2 > (m-1)beta/2, i.e. n > m-1 (n = " +
                      fmt(n) + ", m = " + std::to_string(m) + ")");
  }
}

double WishartModel::trace_sigma_inv() const {
  double t = 0.0;
  for (double s : sigma_eigs) t += 1.0 / s;
  return t;
}

double WishartModel::log_det_sigma() const {
  double t = 0.0;
  for (double s : sigma_eigs) t += std::log(s);
  return t;
}

// ---------------------------------------------------------------------------

EigenSample draw_wishart(const WishartModel& model, std::mt19937_64& rng) {
  const int n = static_cast<int>(std::lround(model.n));
  const DivisionAlgebra& alg = model.algebra;
  CMatrix x = gaussian_matrix(n, model.m, alg, 1.0 / alg.beta(), rng);
  std::vector<double> root(model.sigma_eigs.size());
  for (std::size_t i = 0; i < root.size(); ++i) root[i] = std::sqrt(model.sigma_eigs[i]);
  x = x * real_diagonal(root, alg);
  const CMatrix s = x.adjoint() * x;
  EigenSample out;
  out.eigenvalues = hermitian_eigenvalues(s, alg);
  for (std::size_t i = 1; i < out.eigenvalues.size(); ++i) {
    if (out.eigenvalues[i] == out.eigenvalues[i - 1]) out.tied = true;
  }
  return out;
}

std::vector<EigenSample> sample_wishart(const WishartModel& model, std::uint64_t seed,
                                        std::size_t count, int threads) {
  model.validate();
  require_matrix_support(model.algebra, "Wishart sampling");
  if (!near_integer(model.n) || model.n < model.m) {
    throw DomainError("Wishart sampling needs integer n >= m (n = " + fmt(model.n) + ")");
  }
  std::vector<EigenSample> out(count);
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  run_blocks(blocks, threads, [&](std::size_t b) {
    auto rng = make_block_rng(seed, 0x57a11, b);
    const std::size_t end = std::min(count, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < end; ++i) out[i] = draw_wishart(model, rng);
  });
  return out;
}

// ---------------------------------------------------------------------------

SeriesResult cdf_wishart_region_spectrum(const WishartModel& model,
                                         const std::vector<double>& omega_sigma_inv,
                                         const SeriesTruncation& trunc) {
  model.validate();
  if (static_cast<int>(omega_sigma_inv.size()) != model.m) {
    throw DomainError("Omega needs m eigenvalues");
  }
  const double hb = model.algebra.half_beta();
  long double log_det = 0.0L;
  std::vector<double> y;
  for (double v : omega_sigma_inv) {
    if (!(v >= 0) || !std::isfinite(v)) throw DomainError("Omega must be positive definite");
    if (v == 0.0) {
      SeriesResult zero;
      zero.converged = true;
      return zero;
    }
    log_det += std::log(static_cast<long double>(v));
    y.push_back(hb * v);
  }
  // 1F1(beta n/2; c; -Y) = etr(-Y) 1F1(c - beta n/2; c; Y), c - beta n/2 = (m-1)beta/2 + 1.
  const double c = (model.n + model.m - 1) * hb + 1.0;
  const double p = (model.m - 1) * hb + 1.0;
  SpectralArgument ys(y);
  SeriesResult r = pfq(HypergeomSpec{{p}, {c}, model.algebra, model.m}, ys, trunc);
  const long double log_factor =
      log_cdf_constant(model) + hb * model.n * log_det - static_cast<long double>(ys.trace());
  return scaled(r, log_factor);
}

SeriesResult cdf_wishart_region(const WishartModel& model, const std::vector<double>& omega_eigs,
                                const SeriesTruncation& trunc) {
  model.validate();
  if (static_cast<int>(omega_eigs.size()) != model.m) {
    throw DomainError("Omega needs m = " + std::to_string(model.m) + " eigenvalues");
  }
  std::vector<double> ratio;
  for (int i = 0; i < model.m; ++i) {
    ratio.push_back(omega_eigs[static_cast<std::size_t>(i)] /
                    model.sigma_eigs[static_cast<std::size_t>(i)]);
  }
  return cdf_wishart_region_spectrum(model, ratio, trunc);
}

SeriesResult cdf_wishart_region(const WishartModel& model, const Eigen::MatrixXd& omega,
                                const Eigen::MatrixXd& sigma, const SeriesTruncation& trunc) {
  if (model.algebra.beta() != 1) {
    throw UnsupportedError("matrix-valued Omega/Sigma overload is for beta = 1");
  }
  if (omega.rows() != model.m || omega.cols() != model.m || sigma.rows() != model.m ||
      sigma.cols() != model.m) {
    throw DomainError("Omega and Sigma must be m x m");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  if (es.eigenvalues().minCoeff() <= 0) throw DomainError("Sigma must be positive definite");
  const Eigen::MatrixXd root_inv = es.operatorInverseSqrt();
  const Eigen::MatrixXd t = root_inv * omega * root_inv;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> et(0.5 * (t + t.transpose()), Eigen::EigenvaluesOnly);
  std::vector<double> spec(et.eigenvalues().data(), et.eigenvalues().data() + model.m);
  WishartModel unit = model;
  unit.sigma_eigs.assign(static_cast<std::size_t>(model.m), 1.0);
  return cdf_wishart_region_spectrum(unit, spec, trunc);
}

SeriesResult cdf_lambda_max(const WishartModel& model, double x, const SeriesTruncation& trunc) {
  model.validate();
  if (!(x >= 0) || !std::isfinite(x)) throw DomainError("cdf_lambda_max needs x > 0");
  std::vector<double> r;
  for (double s : model.sigma_eigs) r.push_back(x / s);
  return cdf_wishart_region_spectrum(model, r, trunc);
}

SeriesResult cdf_lambda_max_raw(const WishartModel& model, double x, const SeriesTruncation& trunc) {
  model.validate();
  if (!(x > 0)) throw DomainError("cdf_lambda_max_raw needs x > 0");
  const double hb = model.algebra.half_beta();
  std::vector<double> y;
  long double log_det = 0.0L;
  for (double s : model.sigma_eigs) {
    y.push_back(-hb * x / s);
    log_det += std::log(static_cast<long double>(x / s));
  }
  const double a = hb * model.n;
  const double c = (model.n + model.m - 1) * hb + 1.0;
  SeriesResult r = pfq(HypergeomSpec{{a}, {c}, model.algebra, model.m}, SpectralArgument(y), trunc);
  return scaled(r, log_cdf_constant(model) + a * log_det);
}

int lambda_min_order(const WishartModel& model) {
  const double r = (model.n - model.m + 1) * model.algebra.half_beta() - 1.0;
  if (!(r > 0.5) || !near_integer(r)) {
    throw UnsupportedError("requires r=(n−m+1)β/2−1 a positive integer (r = " + fmt(r) + ")");
  }
  return static_cast<int>(std::lround(r));
}

double cdf_lambda_min(const WishartModel& model, double y) {
  model.validate();
  const int r = lambda_min_order(model);
  if (!(y >= 0) || !std::isfinite(y)) throw DomainError("cdf_lambda_min needs y > 0");
  if (y == 0.0) return 0.0;
  const double hb = model.algebra.half_beta();
  std::vector<double> z;
  for (double s : model.sigma_eigs) z.push_back(hb * y / s);
  SpectralArgument zs(z);
  const SeriesResult sum =
      truncated_pfq_restricted(HypergeomSpec{{}, {}, model.algebra, model.m}, zs, r);
  const long double tail = std::exp(-static_cast<long double>(zs.trace())) * sum.value_ld;
  return static_cast<double>(1.0L - tail);
}

double joint_eigen_density(const WishartModel& model, const std::vector<double>& lambdas,
                           const SeriesTruncation& trunc) {
  model.validate();
  const int m = model.m;
  if (static_cast<int>(lambdas.size()) != m) throw DomainError("need m eigenvalues");
  for (int i = 0; i < m; ++i) {
    const double l = lambdas[static_cast<std::size_t>(i)];
    if (!(l > 0) || !std::isfinite(l)) throw DomainError("eigenvalues must be positive");
    if (i > 0 && l > lambdas[static_cast<std::size_t>(i - 1)]) {
      throw DomainError("eigenvalues must be sorted in descending order");
    }
  }
  for (int i = 1; i < m; ++i) {
    if (lambdas[static_cast<std::size_t>(i)] == lambdas[static_cast<std::size_t>(i - 1)]) return 0.0;
  }
  const long double beta = model.algebra.beta();
  const long double hb = beta / 2.0L;
  const long double log_pi = std::log(std::numbers::pi_v<long double>);
  // pi^rho = (Gamma(beta/2) / pi^{beta/2})^m
  const long double log_rho = m * (std::lgamma(hb) - hb * log_pi);
  long double log_c = static_cast<long double>(m) * m * beta / 2.0L * log_pi + log_rho -
                      beta * m * model.n / 2.0L * std::log(2.0L / beta) -
                      log_mv_gamma(m, model.algebra, hb * model.n) -
                      log_mv_gamma(m, model.algebra, hb * m) - hb * model.n * model.log_det_sigma();
  const long double e = hb * (model.n - m + 1) - 1.0L;
  for (int i = 0; i < m; ++i) {
    log_c += e * std::log(static_cast<long double>(lambdas[static_cast<std::size_t>(i)]));
    for (int j = i + 1; j < m; ++j) {
      log_c += beta * std::log(static_cast<long double>(lambdas[static_cast<std::size_t>(i)]) -
                               lambdas[static_cast<std::size_t>(j)]);
    }
  }
  // 0F0(X, L) = etr(c L) 0F0(X - cI, L) with c = min eig X, so every term of
  // the remaining series is nonnegative.
  std::vector<double> xs;
  double cmin = 0.0;
  for (double s : model.sigma_eigs) xs.push_back(-static_cast<double>(hb) / s);
  cmin = *std::min_element(xs.begin(), xs.end());
  for (double& v : xs) v -= cmin;
  SpectralArgument xa(xs), la(lambdas);
  const SeriesResult f = pfq_two(HypergeomSpec{{}, {}, model.algebra, m}, xa, la, trunc);
  log_c += cmin * static_cast<long double>(la.trace()) + std::log(f.value_ld);
  return static_cast<double>(std::exp(log_c));
}

}  // namespace jackdiv
