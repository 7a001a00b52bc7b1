#pragma once

// Truncated series for pFq^beta of one and two matrix arguments,
//
//   pFq(a; b; X)    = sum_k sum_{kappa |- k} [a]_kappa / [b]_kappa C_kappa(X) / k!
//   pFq(a; b; X, Y) = sum_k sum_{kappa |- k} [a]_kappa / [b]_kappa
//                         C_kappa(X) C_kappa(Y) / (k! C_kappa(I))
//
// where [a]_kappa stands for the product over all upper parameters.  Matrix
// arguments enter only through their eigenvalues.

#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "jackdiv/core.hpp"
#include "jackdiv/jack.hpp"

namespace jackdiv {

struct HypergeomSpec {
  std::vector<double> upper;
  std::vector<double> lower;
  DivisionAlgebra algebra{1};
  int m = 1;

  int p() const { return static_cast<int>(upper.size()); }
  int q() const { return static_cast<int>(lower.size()); }

  // Throws DomainError when some -b_i + (j-1)beta/2 is a nonnegative integer
  // for 1 <= j <= m, or when m < 1.
  void validate() const;

  // r >= 0 when some upper parameter equals -r: every term with k_1 > r
  // vanishes and the series is a polynomial of degree <= m*r.
  std::optional<int> terminating_order() const;
};

struct SeriesTruncation {
  int max_degree = 40;
  double rel_tol = 1e-10;
  int stall_window = 3;
  // Raise the degree cap from the size of the argument when needed.
  bool adaptive = true;

  void validate() const;
};

struct SeriesResult {
  double value = 0.0;
  long double value_ld = 0.0L;
  int degrees_used = 0;
  // |sum of degree K terms| / |sum of degree K-1 terms| at the last degree.
  double last_term_ratio = 0.0;
  bool converged = false;
};

// Reusable evaluator.  Per-partition coefficients [a]/[b] alpha^k/nu are
// cached across calls; one instance is not meant to be shared across threads.
class HypergeometricSeries {
 public:
  explicit HypergeometricSeries(HypergeomSpec spec);

  const HypergeomSpec& spec() const { return spec_; }

  // x.size() must equal spec.m.
  SeriesResult evaluate(const SpectralArgument& x, const SeriesTruncation& trunc,
                        std::optional<int> max_first_part = std::nullopt);
  SeriesResult evaluate_two(const SpectralArgument& x, const SpectralArgument& y,
                            const SeriesTruncation& trunc);

  // Degree cap the engine would use for an argument of the given spectral
  // norm (product of norms in the two-argument case) and trace bound.
  int degree_cap(double norm, double abs_trace, const SeriesTruncation& trunc) const;

 private:
  long double coefficient(PartitionIndex idx);
  void check_domain(double norm, const char* what) const;
  SeriesResult run(const std::vector<const SpectralArgument*>& args,
                   const SeriesTruncation& trunc, std::optional<int> cap_first,
                   int cap_degree);

  HypergeomSpec spec_;
  std::optional<int> terminating_;
  std::shared_ptr<const JackTable> table_;
  std::vector<std::vector<long double>> coeff_;
  JackEvaluator ev_x_;
  JackEvaluator ev_y_;
};

SeriesResult pfq(const HypergeomSpec& spec, const SpectralArgument& x,
                 const SeriesTruncation& trunc = {});
SeriesResult pfq_two(const HypergeomSpec& spec, const SpectralArgument& x,
                     const SpectralArgument& y, const SeriesTruncation& trunc = {});

// Same series with the sum restricted to partitions with k_1 <= max_first_part.
SeriesResult truncated_pfq_restricted(const HypergeomSpec& spec, const SpectralArgument& x,
                                      int max_first_part,
                                      const SeriesTruncation& trunc = {});

// (1F1(a;c;X), etr(X) 1F1(c-a;c;-X)).
std::pair<SeriesResult, SeriesResult> kummer_1f1(double a, double c, const SpectralArgument& x,
                                                 const DivisionAlgebra& algebra,
                                                 const SeriesTruncation& trunc = {});

// (2F1(a,b;c;X),
//  |I-X|^{-b} 2F1(c-a,b;c;-X(I-X)^{-1}),
//  |I-X|^{c-a-b} 2F1(c-a,c-b;c;X)).  Requires ||X|| < 1 and, for the middle
// value, ||X(I-X)^{-1}|| < 1.
std::tuple<SeriesResult, SeriesResult, SeriesResult> euler_2f1(
    double a, double b, double c, const SpectralArgument& x,
    const DivisionAlgebra& algebra, const SeriesTruncation& trunc = {});

}  // namespace jackdiv
