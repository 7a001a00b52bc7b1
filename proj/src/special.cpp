#include "jackdiv/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "jackdiv/errors.hpp"
#include "jackdiv/numeric.hpp"

namespace jackdiv {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

long double log_pi_factor(int m, const DivisionAlgebra& algebra) {
  return static_cast<long double>(m) * (m - 1) * algebra.beta() / 4.0L *
         std::log(std::numbers::pi_v<long double>);
}

void check_m(int m) {
  if (m < 1) throw DomainError("matrix dimension m must be >= 1 (got " + std::to_string(m) + ")");
}

}  // namespace

double SignedLog::value() const {
  const long double v = value_ld();
  if (std::abs(v) > std::numeric_limits<double>::max()) {
    throw DomainError("value exp(" + fmt(static_cast<double>(log_abs)) +
                      ") overflows double; use the log-scale variant");
  }
  return static_cast<double>(v);
}

long double SignedLog::value_ld() const {
  return sign * std::exp(log_abs);
}

SignedLog log_gamma_product(std::vector<long double> args) {
  std::sort(args.begin(), args.end());
  SignedLog out;
  for (long double x : args) {
    if (x <= 0 && x == std::floor(x)) {
      throw DomainError("gamma function pole at argument " + fmt(static_cast<double>(x)));
    }
    out.log_abs += std::lgamma(x);
    // Gamma(x) < 0 on (-1,0), (-3,-2), ...
    if (x < 0 && static_cast<long long>(std::floor(x)) % 2 != 0) out.sign = -out.sign;
  }
  return out;
}

long double log_mv_gamma(int m, const DivisionAlgebra& algebra, double a) {
  check_m(m);
  const double bound = (m - 1) * algebra.half_beta();
  if (!(a > bound)) {
    throw DomainError("Gamma_m^beta[a] requires a > (m-1)beta/2 = " + fmt(bound) +
                      " (a = " + fmt(a) + ")");
  }
  std::vector<long double> args;
  for (int i = 0; i < m; ++i) args.push_back(a - i * algebra.half_beta());
  return log_pi_factor(m, algebra) + log_gamma_product(std::move(args)).log_abs;
}

double mv_gamma(int m, const DivisionAlgebra& algebra, double a) {
  return SignedLog{log_mv_gamma(m, algebra, a), 1}.value();
}

long double gen_pochhammer_ld(long double a, const Partition& kappa,
                              const DivisionAlgebra& algebra) {
  long double prod = 1.0L;
  for (int i = 0; i < kappa.length(); ++i) {
    const long double base = a - i * static_cast<long double>(algebra.half_beta());
    for (int s = 0; s < kappa[i]; ++s) prod *= base + s;
  }
  return prod;
}

double gen_pochhammer(double a, const Partition& kappa, const DivisionAlgebra& algebra) {
  return static_cast<double>(gen_pochhammer_ld(a, kappa, algebra));
}

double WeightedGammaQuery::lower_bound() const {
  const double base = (m - 1) * algebra.half_beta();
  return sign == WeightSign::kPlus ? base - weight.part_at_row(m) : base + weight.first();
}

bool WeightedGammaQuery::in_domain() const { return a > lower_bound(); }

namespace {

void check_query(const WeightedGammaQuery& q) {
  check_m(q.m);
  if (q.weight.length() > q.m) {
    throw DomainError("weight " + q.weight.to_string() + " has more than m = " +
                      std::to_string(q.m) + " parts");
  }
  if (q.unchecked || q.in_domain()) return;
  if (q.sign == WeightSign::kPlus) {
    throw DomainError("Gamma_m^beta[a,kappa] requires a > (m-1)beta/2 - k_m = " +
                      fmt(q.lower_bound()) + " (a = " + fmt(q.a) + ")");
  }
  throw DomainError("Gamma_m^beta[a,-kappa] requires a > (m-1)beta/2 + k_1 = " +
                    fmt(q.lower_bound()) + " (a = " + fmt(q.a) + ")");
}

SignedLog weighted_product(const WeightedGammaQuery& q, bool reversed) {
  check_query(q);
  const long double hb = q.algebra.half_beta();
  std::vector<long double> args;
  for (int r = 0; r < q.m; ++r) {
    const int i = reversed ? q.m - 1 - r : r;  // 0-based row
    const long double k = q.weight[i];
    if (q.sign == WeightSign::kPlus) {
      args.push_back(q.a + k - i * hb);
    } else {
      args.push_back(q.a - k - (q.m - 1 - i) * hb);
    }
  }
  SignedLog out = log_gamma_product(std::move(args));
  out.log_abs += log_pi_factor(q.m, q.algebra);
  return out;
}

}  // namespace

SignedLog log_mv_gamma_weighted(const WeightedGammaQuery& q) {
  return weighted_product(q, false);
}

SignedLog log_mv_gamma_weighted_reversed(const WeightedGammaQuery& q) {
  return weighted_product(q, true);
}

double mv_gamma_weighted(const WeightedGammaQuery& q) {
  return log_mv_gamma_weighted(q).value();
}

long double log_mv_beta(int m, const DivisionAlgebra& algebra, double a, double b) {
  const double bound = (m - 1) * algebra.half_beta();
  if (!(a > bound) || !(b > bound)) {
    throw DomainError("B_m^beta[a,b] requires a, b > (m-1)beta/2 = " + fmt(bound) +
                      " (a = " + fmt(a) + ", b = " + fmt(b) + ")");
  }
  return log_mv_gamma(m, algebra, a) + log_mv_gamma(m, algebra, b) -
         log_mv_gamma(m, algebra, a + b);
}

double mv_beta(int m, const DivisionAlgebra& algebra, double a, double b) {
  return SignedLog{log_mv_beta(m, algebra, a, b), 1}.value();
}

}  // namespace jackdiv
