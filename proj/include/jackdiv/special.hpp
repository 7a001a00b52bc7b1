#pragma once

// Multivariate gamma and beta functions, weighted gammas and the generalized
// Pochhammer symbol over the cone of positive definite matrices.

#include <vector>

#include "jackdiv/core.hpp"

namespace jackdiv {

// A real number carried as sign * exp(log_abs).
struct SignedLog {
  long double log_abs = 0.0L;
  int sign = 1;

  // Throws DomainError when the magnitude does not fit in a double.
  double value() const;
  long double value_ld() const;
};

// sum_i log Gamma(args[i]) with sign tracking.  Arguments are sorted before
// accumulation, so any permutation of the same arguments gives a
// bit-identical result.  Throws DomainError at a pole (nonpositive integer).
SignedLog log_gamma_product(std::vector<long double> args);

// Gamma_m[a] = pi^{m(m-1)beta/4} prod_i Gamma(a - (i-1)beta/2).
// Requires a > (m-1)beta/2.
double mv_gamma(int m, const DivisionAlgebra& algebra, double a);
long double log_mv_gamma(int m, const DivisionAlgebra& algebra, double a);

// [a]_kappa = prod_i (a - (i-1)beta/2)_{k_i}.  Defined for every real a.
double gen_pochhammer(double a, const Partition& kappa, const DivisionAlgebra& algebra);
long double gen_pochhammer_ld(long double a, const Partition& kappa,
                              const DivisionAlgebra& algebra);

enum class WeightSign { kPlus, kMinus };

struct WeightedGammaQuery {
  double a = 0.0;
  int m = 1;
  DivisionAlgebra algebra{1};
  Partition weight;
  WeightSign sign = WeightSign::kPlus;
  // Skip the domain check (poles still raise).  Off by default.
  bool unchecked = false;

  // a > (m-1)beta/2 - k_m for kPlus, a > (m-1)beta/2 + k_1 for kMinus.
  double lower_bound() const;
  bool in_domain() const;
};

// Gamma_m[a, kappa] = pi^{m(m-1)beta/4} prod_i Gamma(a + k_i - (i-1)beta/2)
// Gamma_m[a,-kappa] = pi^{m(m-1)beta/4} prod_i Gamma(a - k_i - (m-i)beta/2)
// The product forms are valid over the whole corrected domain, including the
// strip where Gamma_m[a] itself is undefined.
double mv_gamma_weighted(const WeightedGammaQuery& q);
SignedLog log_mv_gamma_weighted(const WeightedGammaQuery& q);

// The same products written with the row index reversed
// (i -> m+1-i in both k_i and the shift).  Used to test ordering
// independence.
SignedLog log_mv_gamma_weighted_reversed(const WeightedGammaQuery& q);

// B_m[a,b] = Gamma_m[a] Gamma_m[b] / Gamma_m[a+b].  Requires a, b > (m-1)beta/2.
double mv_beta(int m, const DivisionAlgebra& algebra, double a, double b);
long double log_mv_beta(int m, const DivisionAlgebra& algebra, double a, double b);

}  // namespace jackdiv
