#pragma once

// Independent reference implementations used only by the tests.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "jackdiv/core.hpp"

namespace oracle {

// Every partition of k with at most m parts, found by filtering all
// m-tuples with entries in [0, k].
inline std::vector<std::vector<int>> brute_partitions(int k, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(m), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      int s = 0;
      for (int v : t) s += v;
      if (s != k) return;
      if (!std::is_sorted(t.rbegin(), t.rend())) return;
      std::vector<int> p;
      for (int v : t) if (v) p.push_back(v);
      out.push_back(p);
      return;
    }
    for (int v = 0; v <= k; ++v) {
      t[static_cast<std::size_t>(i)] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// Transpose of the Young diagram drawn as a boolean grid.
inline std::vector<int> transpose_diagram(const std::vector<int>& p) {
  if (p.empty()) return {};
  std::vector<std::vector<bool>> grid(p.size(), std::vector<bool>(static_cast<std::size_t>(p[0]), false));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int j = 0; j < p[i]; ++j) grid[i][static_cast<std::size_t>(j)] = true;
  std::vector<int> out;
  for (int j = 0; j < p[0]; ++j) {
    int c = 0;
    for (std::size_t i = 0; i < p.size(); ++i) c += grid[i][static_cast<std::size_t>(j)] ? 1 : 0;
    out.push_back(c);
  }
  return out;
}

// Product of squared classical hook lengths, found by walking the grid.
inline double squared_hook_product(const std::vector<int>& p) {
  double prod = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int j = 0; j < p[i]; ++j) {
      int arm = p[i] - j - 1;
      int leg = 0;
      for (std::size_t r = i + 1; r < p.size() && p[r] > j; ++r) ++leg;
      double h = arm + leg + 1;
      prod *= h * h;
    }
  }
  return prod;
}

// Schur polynomial via the bialternant formula in long double; requires
// distinct x.
inline double schur(const std::vector<int>& kappa, const std::vector<double>& x) {
  using M = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const int m = static_cast<int>(x.size());
  M num(m, m), den(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      int kj = j < static_cast<int>(kappa.size()) ? kappa[static_cast<std::size_t>(j)] : 0;
      const long double xi = x[static_cast<std::size_t>(i)];
      num(i, j) = std::pow(xi, kj + m - j - 1);
      den(i, j) = std::pow(xi, m - j - 1);
    }
  }
  return static_cast<double>(num.fullPivLu().determinant() / den.fullPivLu().determinant());
}

// Distinct exponent vectors that are permutations of tau padded to m.
inline std::vector<std::vector<int>> monomial_orbit(const std::vector<int>& tau, int m) {
  std::vector<int> e(static_cast<std::size_t>(m), 0);
  std::copy(tau.begin(), tau.end(), e.begin());
  std::sort(e.begin(), e.end());
  std::vector<std::vector<int>> out;
  do out.push_back(e);
  while (std::next_permutation(e.begin(), e.end()));
  return out;
}

inline double monomial_value(const std::vector<int>& e, const std::vector<double>& x) {
  double v = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) v *= std::pow(x[i], e[i]);
  return v;
}

// D_2^beta applied to the monomial x^e:
//   sum_i e_i(e_i-1) x^e + beta sum_i sum_{j!=i} e_i x_i x^e / (x_i - x_j)
inline double d2_monomial(const std::vector<int>& e, const std::vector<double>& x, double beta) {
  const double xe = monomial_value(e, x);
  double acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    acc += e[i] * (e[i] - 1.0) * xe;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (j == i) continue;
      acc += beta * e[i] * x[i] * xe / (x[i] - x[j]);
    }
  }
  return acc;
}

inline bool dominated(const std::vector<int>& tau, const std::vector<int>& kappa) {
  int st = 0, sk = 0;
  for (std::size_t i = 0; i < std::max(tau.size(), kappa.size()); ++i) {
    st += i < tau.size() ? tau[i] : 0;
    sk += i < kappa.size() ? kappa[i] : 0;
    if (st > sk) return false;
  }
  return true;
}

// J_kappa^(beta) from conditions (C1)-(C3): expand in monomial symmetric
// functions M_tau with tau <= kappa, pin the coefficients as the null vector
// of (D_2 - eigenvalue) sampled at random points, and normalize by the value
// at (1,...,1).  Returns J at the point y.
inline double jack_J_linear_system(const std::vector<int>& kappa, int m, int beta,
                                   const std::vector<double>& y) {
  int k = 0;
  for (int v : kappa) k += v;
  if (static_cast<int>(kappa.size()) > m) return 0.0;
  std::vector<std::vector<int>> basis;
  for (const auto& tau : brute_partitions(k, m)) {
    if (dominated(tau, kappa)) basis.push_back(tau);
  }
  const double b = beta;
  double eig = 0.0;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    eig += kappa[i] * (kappa[i] - 1.0 + b * (m - static_cast<double>(i) - 1.0));
  }
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const int rows = 4 * static_cast<int>(basis.size()) + 8;
  Eigen::MatrixXd a(rows, static_cast<int>(basis.size()));
  for (int r = 0; r < rows; ++r) {
    std::vector<double> x(static_cast<std::size_t>(m));
    for (auto& v : x) v = u(rng);
    for (std::size_t c = 0; c < basis.size(); ++c) {
      double val = 0.0;
      for (const auto& e : monomial_orbit(basis[c], m)) {
        val += d2_monomial(e, x, b) - eig * monomial_value(e, x);
      }
      a(r, static_cast<int>(c)) = val;
    }
  }
  Eigen::VectorXd coef;
  if (basis.size() == 1) {
    coef = Eigen::VectorXd::Ones(1);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    coef = svd.matrixV().col(static_cast<int>(basis.size()) - 1);
  }
  // Condition 2 normalization.
  double target = std::pow(2.0 / b, k);
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    const double base = (m - static_cast<double>(i)) * b / 2.0;
    for (int s = 0; s < kappa[i]; ++s) target *= base + s;
  }
  const std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
  double at_one = 0.0, at_y = 0.0;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    for (const auto& e : monomial_orbit(basis[c], m)) {
      at_one += coef(static_cast<int>(c)) * monomial_value(e, ones);
      at_y += coef(static_cast<int>(c)) * monomial_value(e, y);
    }
  }
  return at_y * target / at_one;
}

}  // namespace oracle
