#include "jackdiv/hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jackdiv/errors.hpp"
#include "jackdiv/numeric.hpp"
#include "jackdiv/special.hpp"

namespace jackdiv {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

void HypergeomSpec::validate() const {
  if (m < 1) throw DomainError("hypergeometric series needs m >= 1");
  for (double b : lower) {
    if (!std::isfinite(b)) throw DomainError("lower parameters must be finite");
    for (int j = 1; j <= m; ++j) {
      const double v = -b + (j - 1) * algebra.half_beta();
      if (v >= -1e-12 && near_integer(v)) {
        throw DomainError("lower parameter b = " + fmt(b) +
                          " makes -b + (j-1)beta/2 a nonnegative integer (j = " +
                          std::to_string(j) + "); the series is undefined");
      }
    }
  }
  for (double a : upper) {
    if (!std::isfinite(a)) throw DomainError("upper parameters must be finite");
  }
}

std::optional<int> HypergeomSpec::terminating_order() const {
  std::optional<int> best;
  for (double a : upper) {
    if (a <= 1e-12 && near_integer(a)) {
      const int r = static_cast<int>(std::lround(-a));
      if (!best || r < *best) best = r;
    }
  }
  return best;
}

void SeriesTruncation::validate() const {
  if (max_degree < 0) throw DomainError("max_degree must be >= 0");
  if (!(rel_tol > 0)) throw DomainError("rel_tol must be > 0");
  if (stall_window < 1) throw DomainError("stall_window must be >= 1");
}

// ---------------------------------------------------------------------------

HypergeometricSeries::HypergeometricSeries(HypergeomSpec spec)
    : spec_(std::move(spec)),
      terminating_(spec_.terminating_order()),
      table_((spec_.validate(), JackTable::shared(spec_.algebra, spec_.m))),
      ev_x_(table_),
      ev_y_(table_) {}

long double HypergeometricSeries::coefficient(PartitionIndex idx) {
  while (static_cast<int>(coeff_.size()) <= idx.degree) {
    const int k = static_cast<int>(coeff_.size());
    table_->ensure_degree(k);
    const long double alpha = static_cast<long double>(spec_.algebra.alpha_quarters()) / 4.0L;
    const long double alpha_k = std::pow(alpha, static_cast<long double>(k));
    std::vector<long double> row(static_cast<std::size_t>(table_->count(k)));
    for (int pos = 0; pos < table_->count(k); ++pos) {
      const Partition& kappa = table_->partition({k, pos});
      long double c = kappa.empty() ? 1.0L : alpha_k / hook_product(kappa, spec_.algebra).nu;
      for (double a : spec_.upper) c *= gen_pochhammer_ld(a, kappa, spec_.algebra);
      for (double b : spec_.lower) c /= gen_pochhammer_ld(b, kappa, spec_.algebra);
      row[static_cast<std::size_t>(pos)] = c;
    }
    coeff_.push_back(std::move(row));
  }
  return coeff_[static_cast<std::size_t>(idx.degree)][static_cast<std::size_t>(idx.pos)];
}

void HypergeometricSeries::check_domain(double norm, const char* what) const {
  if (spec_.p() <= spec_.q() || terminating_) return;
  if (spec_.p() == spec_.q() + 1) {
    if (!(norm < 1.0)) {
      throw DomainError(std::string(what) + " = " + fmt(norm) + " must be < 1 for " +
                        std::to_string(spec_.p()) + "F" + std::to_string(spec_.q()) +
                        " (p = q+1); the series diverges");
    }
    return;
  }
  throw DomainError(std::to_string(spec_.p()) + "F" + std::to_string(spec_.q()) +
                    " with p > q+1 diverges unless it terminates");
}

int HypergeometricSeries::degree_cap(double norm, double abs_trace,
                                     const SeriesTruncation& trunc) const {
  if (terminating_) return std::min(spec_.m * *terminating_, JackTable::kMaxDegree);
  if (!trunc.adaptive) return std::min(trunc.max_degree, JackTable::kMaxDegree);
  double excess = 0.0;
  for (double a : spec_.upper) excess += std::abs(a);
  for (double b : spec_.lower) excess -= b;
  excess = std::max(0.0, excess);
  double need = 0.0;
  if (spec_.p() <= spec_.q()) {
    const double t = abs_trace;
    need = 2.0 * t + 10.0 * std::sqrt(t) + 30.0 + excess;
  } else if (norm > 0.0) {
    // Smallest k with k^A norm^k below a small fraction of rel_tol.
    const double a_pow = excess + spec_.m;
    const double target = std::log(trunc.rel_tol * 1e-3);
    int k = 1;
    while (k < JackTable::kMaxDegree &&
           a_pow * std::log(static_cast<double>(k)) + k * std::log(norm) > target) {
      ++k;
    }
    need = k + 10.0;
  }
  const int cap = std::max(trunc.max_degree, static_cast<int>(std::ceil(need)));
  return std::min(cap, JackTable::kMaxDegree);
}

SeriesResult HypergeometricSeries::run(const std::vector<const SpectralArgument*>& args,
                                       const SeriesTruncation& trunc,
                                       std::optional<int> cap_first, int cap_degree) {
  const bool two = args.size() == 2;
  if (terminating_) cap_first = cap_first ? std::min(*cap_first, *terminating_) : *terminating_;
  ev_x_ = JackEvaluator(table_, cap_first);
  ev_x_.reset(*args[0]);
  if (two) {
    ev_y_ = JackEvaluator(table_, cap_first);
    ev_y_.reset(*args[1]);
  }

  SeriesResult res;
  NeumaierSum<long double> acc;
  long double prev_deg = 0.0L;
  int small = 0;
  for (int k = 0; k <= cap_degree; ++k) {
    ev_x_.advance_to(k);
    if (two) ev_y_.advance_to(k);
    NeumaierSum<long double> deg;
    for (int pos = 0; pos < table_->count(k); ++pos) {
      const PartitionIndex idx{k, pos};
      if (!ev_x_.included(idx)) continue;
      long double term = coefficient(idx) * ev_x_.j_value(idx);
      if (two) term *= ev_y_.j_value(idx) / table_->j_at_identity(idx);
      deg.add(term);
    }
    const long double d = deg.value();
    acc.add(d);
    res.degrees_used = k;
    if (k > 0) {
      res.last_term_ratio =
          prev_deg != 0.0L ? static_cast<double>(std::abs(d / prev_deg)) : 0.0;
      const long double a = std::abs(acc.value());
      small = std::abs(d) <= trunc.rel_tol * a ? small + 1 : 0;
    }
    prev_deg = d;
    if (small >= trunc.stall_window) {
      res.converged = true;
      break;
    }
  }
  // A terminating series summed to its last nonzero degree is exact.
  if (terminating_ && res.degrees_used >= spec_.m * *terminating_) res.converged = true;
  if (cap_first && *cap_first == 0) res.converged = true;
  res.value_ld = acc.value();
  res.value = static_cast<double>(res.value_ld);
  return res;
}

SeriesResult HypergeometricSeries::evaluate(const SpectralArgument& x,
                                            const SeriesTruncation& trunc,
                                            std::optional<int> max_first_part) {
  trunc.validate();
  if (x.size() != spec_.m) {
    throw DomainError("argument has " + std::to_string(x.size()) +
                      " eigenvalues but the series was built for m = " + std::to_string(spec_.m));
  }
  if (max_first_part && *max_first_part < 0) throw DomainError("max_first_part must be >= 0");
  double abs_trace = 0.0;
  for (double v : x.values()) abs_trace += std::abs(v);
  // A first-part cap makes the sum finite.
  if (!max_first_part) check_domain(x.norm(), "||X||");
  int cap = degree_cap(x.norm(), abs_trace, trunc);
  if (max_first_part) cap = std::min(cap, spec_.m * *max_first_part);
  return run({&x}, trunc, max_first_part, cap);
}

SeriesResult HypergeometricSeries::evaluate_two(const SpectralArgument& x,
                                                const SpectralArgument& y,
                                                const SeriesTruncation& trunc) {
  trunc.validate();
  if (x.size() != y.size()) {
    throw DomainError("two-argument series needs equal sizes (" + std::to_string(x.size()) +
                      " vs " + std::to_string(y.size()) + ")");
  }
  if (x.size() != spec_.m) {
    throw DomainError("arguments have " + std::to_string(x.size()) +
                      " eigenvalues but the series was built for m = " + std::to_string(spec_.m));
  }
  const double norm = x.norm() * y.norm();
  check_domain(norm, "||X||*||Y||");
  double abs_trace = 0.0;
  for (double v : x.values()) abs_trace += std::abs(v);
  abs_trace *= y.norm();
  return run({&x, &y}, trunc, std::nullopt, degree_cap(norm, abs_trace, trunc));
}

// ---------------------------------------------------------------------------

SeriesResult pfq(const HypergeomSpec& spec, const SpectralArgument& x,
                 const SeriesTruncation& trunc) {
  HypergeometricSeries s(spec);
  return s.evaluate(x, trunc);
}

SeriesResult pfq_two(const HypergeomSpec& spec, const SpectralArgument& x,
                     const SpectralArgument& y, const SeriesTruncation& trunc) {
  HypergeometricSeries s(spec);
  return s.evaluate_two(x, y, trunc);
}

SeriesResult truncated_pfq_restricted(const HypergeomSpec& spec, const SpectralArgument& x,
                                      int max_first_part, const SeriesTruncation& trunc) {
  HypergeometricSeries s(spec);
  return s.evaluate(x, trunc, max_first_part);
}

std::pair<SeriesResult, SeriesResult> kummer_1f1(double a, double c, const SpectralArgument& x,
                                                 const DivisionAlgebra& algebra,
                                                 const SeriesTruncation& trunc) {
  const int m = x.size();
  SeriesResult lhs = pfq(HypergeomSpec{{a}, {c}, algebra, m}, x, trunc);
  SeriesResult rhs = pfq(HypergeomSpec{{c - a}, {c}, algebra, m}, x.scaled(-1.0), trunc);
  const long double e = std::exp(static_cast<long double>(x.trace()));
  rhs.value_ld *= e;
  rhs.value = static_cast<double>(rhs.value_ld);
  return {lhs, rhs};
}

std::tuple<SeriesResult, SeriesResult, SeriesResult> euler_2f1(
    double a, double b, double c, const SpectralArgument& x,
    const DivisionAlgebra& algebra, const SeriesTruncation& trunc) {
  const int m = x.size();
  if (!(x.norm() < 1.0)) {
    throw DomainError("Euler relations require ||X|| < 1 (got " + fmt(x.norm()) + ")");
  }
  long double det = 1.0L;
  std::vector<double> z;
  for (double v : x.values()) {
    det *= 1.0L - v;
    z.push_back(-v / (1.0 - v));
  }
  const SpectralArgument zx(z);
  if (!(zx.norm() < 1.0)) {
    throw DomainError("(er1) requires ||X(I-X)^{-1}|| < 1 (got " + fmt(zx.norm()) + ")");
  }
  SeriesResult f0 = pfq(HypergeomSpec{{a, b}, {c}, algebra, m}, x, trunc);
  SeriesResult f1 = pfq(HypergeomSpec{{c - a, b}, {c}, algebra, m}, zx, trunc);
  SeriesResult f2 = pfq(HypergeomSpec{{c - a, c - b}, {c}, algebra, m}, x, trunc);
  f1.value_ld *= std::pow(det, static_cast<long double>(-b));
  f1.value = static_cast<double>(f1.value_ld);
  f2.value_ld *= std::pow(det, static_cast<long double>(c - a - b));
  f2.value = static_cast<double>(f2.value_ld);
  return {f0, f1, f2};
}

}  // namespace jackdiv
