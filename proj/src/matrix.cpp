#include "jackdiv/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "jackdiv/errors.hpp"

namespace jackdiv {

int representation_size(int logical, const DivisionAlgebra& algebra) {
  return algebra.beta() == 4 ? 2 * logical : logical;
}

void require_matrix_support(const DivisionAlgebra& algebra, const char* what) {
  if (algebra.beta() == 8) {
    throw UnsupportedError(std::string(what) +
                           " is not available for beta = 8 (octonion matrices); "
                           "only the analytic formulas cover beta = 8");
  }
}

CMatrix gaussian_matrix(int rows, int cols, const DivisionAlgebra& algebra,
                        double component_variance, std::mt19937_64& rng) {
  require_matrix_support(algebra, "matrix sampling");
  std::normal_distribution<double> g(0.0, std::sqrt(component_variance));
  const int beta = algebra.beta();
  if (beta <= 2) {
    CMatrix a(rows, cols);
    for (int j = 0; j < cols; ++j) {
      for (int i = 0; i < rows; ++i) {
        const double re = g(rng);
        const double im = beta == 2 ? g(rng) : 0.0;
        a(i, j) = {re, im};
      }
    }
    return a;
  }
  CMatrix a(2 * rows, 2 * cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const std::complex<double> z(g(rng), g(rng));
      const std::complex<double> w(g(rng), g(rng));
      a(i, j) = z;
      a(i, cols + j) = w;
      a(rows + i, j) = -std::conj(w);
      a(rows + i, cols + j) = std::conj(z);
    }
  }
  return a;
}

CMatrix real_diagonal(const std::vector<double>& d, const DivisionAlgebra& algebra) {
  const int m = static_cast<int>(d.size());
  const int n = representation_size(m, algebra);
  CMatrix out = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = d[static_cast<std::size_t>(i % m)];
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& s, const DivisionAlgebra& algebra) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  if (algebra.beta() != 4) return ev;
  double scale = 0.0;
  for (double v : ev) scale = std::max(scale, std::abs(v));
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < ev.size(); i += 2) {
    if (std::abs(ev[i] - ev[i + 1]) > 1e-9 * std::max(scale, 1e-300)) {
      throw std::logic_error("quaternion embedding produced unpaired eigenvalues");
    }
    out.push_back(0.5 * (ev[i] + ev[i + 1]));
  }
  return out;
}

Eigen::Vector4d logical_entry(const CMatrix& a, int i, int j, const DivisionAlgebra& algebra) {
  if (algebra.beta() != 4) return {a(i, j).real(), a(i, j).imag(), 0.0, 0.0};
  const int cols = static_cast<int>(a.cols()) / 2;
  const auto z = a(i, j);
  const auto w = a(i, cols + j);
  return {z.real(), z.imag(), w.real(), w.imag()};
}

}  // namespace jackdiv
