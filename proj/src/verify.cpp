#include "jackdiv/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "jackdiv/errors.hpp"
#include "jackdiv/hypergeom.hpp"
#include "jackdiv/jack.hpp"
#include "jackdiv/numeric.hpp"
#include "jackdiv/random.hpp"
#include "jackdiv/special.hpp"

namespace jackdiv {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class ParamWriter {
 public:
  ParamWriter& add(const std::string& key, double v) {
    out_ += key + "=" + num(v) + ";";
    return *this;
  }
  ParamWriter& add(const std::string& key, const std::vector<double>& v) {
    out_ += key + "=";
    for (std::size_t i = 0; i < v.size(); ++i) out_ += (i ? "|" : "") + num(v[i]);
    out_ += ";";
    return *this;
  }
  ParamWriter& add(const std::string& key, const std::string& v) {
    out_ += key + "=" + v + ";";
    return *this;
  }
  ParamWriter& common(const DivisionAlgebra& alg, const McOptions& opt) {
    add("beta", alg.beta());
    add("n_samples", static_cast<double>(opt.n_samples));
    add("seed", std::to_string(opt.seed));
    return *this;
  }
  std::string str() const { return out_; }

 private:
  std::string out_;
};

// Welford moments, merged with Chan's formula in a fixed order.
struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double tot = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / tot;
    m2 += o.m2 + d * d * n * o.n / tot;
    n = tot;
  }
  double std_error() const { return n > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0; }
};

using DrawFn = std::function<double(std::mt19937_64&)>;

Moments simulate(const McOptions& opt, std::uint64_t stream, const std::function<DrawFn()>& make) {
  if (opt.n_samples < 2) throw DomainError("Monte Carlo needs at least 2 samples");
  const std::size_t blocks = (opt.n_samples + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> parts(blocks);
  run_blocks(blocks, opt.threads, [&](std::size_t b) {
    auto rng = make_block_rng(opt.seed, stream, b);
    DrawFn draw = make();
    const std::size_t end = std::min(opt.n_samples, (b + 1) * kBlockSize);
    Moments mo;
    for (std::size_t i = b * kBlockSize; i < end; ++i) {
      const double w = draw(rng);
      if (!std::isfinite(w)) throw std::runtime_error("non-finite Monte Carlo weight");
      mo.add(w);
    }
    parts[b] = mo;
  });
  Moments total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

VerificationReport finish(const std::string& id, const std::string& params, double analytic,
                          long double log_scale, const Moments& mo, const McOptions& opt) {
  const long double scale = std::exp(log_scale);
  return make_report(id, params, analytic, static_cast<double>(scale * mo.mean),
                     static_cast<double>(scale * mo.std_error()), opt.n_samples, opt.criteria);
}

std::uint64_t stream_of(const std::string& id, const std::string& params) {
  return fnv1a64(id + "|" + params);
}

void require_cone_support(const DivisionAlgebra& alg) {
  if (alg.beta() > 2) {
    throw UnsupportedError("cone Monte Carlo is implemented for beta = 1, 2 (got beta = " +
                           std::to_string(alg.beta()) + ")");
  }
}

void require_positive(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x > 0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive");
  }
}

void require_size(const std::vector<double>& v, int m, const char* what) {
  if (static_cast<int>(v.size()) != m) {
    throw DomainError(std::string(what) + " needs " + std::to_string(m) + " eigenvalues");
  }
}

std::vector<double> eigs(const CMatrix& h, const DivisionAlgebra& alg) {
  const CMatrix s = 0.5 * (h + h.adjoint());
  return hermitian_eigenvalues(s, alg);
}

// D X D for the real diagonal D = diag(d) in representation form.
CMatrix sandwich(const CMatrix& x, const std::vector<double>& d) {
  const std::size_t m = d.size();
  CMatrix out = x;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out(i, j) *= d[static_cast<std::size_t>(i) % m] * d[static_cast<std::size_t>(j) % m];
    }
  }
  return out;
}

// Spectrum of X diag(r) for Hermitian X, X >= 0 whenever some r_i < 0.
std::vector<double> spectrum_times_diag(const CMatrix& x, const std::vector<double>& r,
                                        const DivisionAlgebra& alg) {
  if (std::all_of(r.begin(), r.end(), [](double v) { return v >= 0; })) {
    std::vector<double> s(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) s[i] = std::sqrt(r[i]);
    return eigs(sandwich(x, s), alg);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (x + x.adjoint()));
  const CMatrix root = es.operatorSqrt();
  return eigs(root * real_diagonal(r, alg) * root, alg);
}

CMatrix inverse(const CMatrix& x) {
  return x.llt().solve(CMatrix::Identity(x.rows(), x.cols()));
}

double log_det(const std::vector<double>& ev) {
  double s = 0.0;
  for (double v : ev) s += std::log(v);
  return s;
}

double sum_log(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::log(x);
  return s;
}

double jack_c(const Partition& kappa, const std::vector<double>& ev, const DivisionAlgebra& alg) {
  return jack_C(kappa, SpectralArgument(ev), alg);
}

// kappa - k_m (1^m) and (k_1 - k_m, ..., k_1 - k_1), with C_kappa(I) / C_mu(I).
std::pair<Partition, double> shifted_partition(const Partition& kappa, int m,
                                               const DivisionAlgebra& alg, bool complement) {
  std::vector<int> parts(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    parts[static_cast<std::size_t>(i)] = complement
                                             ? kappa.first() - kappa.part_at_row(m - i)
                                             : kappa.part_at_row(i + 1) - kappa.part_at_row(m);
  }
  Partition mu(parts);
  return {mu, jack_C_at_identity(kappa, m, alg) / jack_C_at_identity(mu, m, alg)};
}

double det_power(const std::vector<double>& r, int k) {
  double d = 1.0;
  for (double v : r) d *= v;
  return std::pow(d, k);
}

// |X|^{-k_m} C_kappa(XR) = c |R|^{k_m} C_{kappa - k_m}(XR).  Evaluated this way
// nothing is divided by a determinant that may underflow.
double c_over_det(const Partition& kappa, const CMatrix& x, const std::vector<double>& r,
                  const DivisionAlgebra& alg) {
  const int m = static_cast<int>(r.size());
  const auto [mu, c] = shifted_partition(kappa, m, alg, false);
  return c * det_power(r, kappa.part_at_row(m)) * jack_c(mu, spectrum_times_diag(x, r, alg), alg);
}

// |X|^{k_1} C_kappa(R X^{-1}) = c |R|^{k_1} C_{kappa~}(R^{-1} X) with
// kappa~_i = k_1 - k_{m+1-i}.
double c_inverse_times_det(const Partition& kappa, const CMatrix& x, const std::vector<double>& r,
                           const DivisionAlgebra& alg) {
  const int m = static_cast<int>(r.size());
  const auto [mu, c] = shifted_partition(kappa, m, alg, true);
  std::vector<double> rinv(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) rinv[i] = 1.0 / r[i];
  return c * det_power(r, kappa.first()) * jack_c(mu, spectrum_times_diag(x, rinv, alg), alg);
}

std::vector<double> elementwise(const std::vector<double>& a, const std::vector<double>& b,
                                const std::function<double(double, double)>& f) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return out;
}

long double log_gamma_weighted(double a, int m, const DivisionAlgebra& alg, const Partition& k,
                               WeightSign sign) {
  const SignedLog v = log_mv_gamma_weighted(WeightedGammaQuery{a, m, alg, k, sign, false});
  if (v.sign <= 0) throw DomainError("weighted multivariate gamma is not positive here");
  return v.log_abs;
}

void check_weighted_domain(double a, int m, const DivisionAlgebra& alg, const Partition& k,
                           WeightSign sign, const char* name) {
  WeightedGammaQuery q{a, m, alg, k, sign, false};
  if (!q.in_domain()) {
    std::ostringstream os;
    os << name << " = " << a << " violates " << name
       << (sign == WeightSign::kPlus ? " > (m-1)beta/2 - k_m" : " > (m-1)beta/2 + k_1") << " = "
       << q.lower_bound();
    throw DomainError(os.str());
  }
}

void check_classical_domain(double a, int m, const DivisionAlgebra& alg, const char* name) {
  const double lb = (m - 1) * alg.half_beta();
  if (!(a > lb)) {
    std::ostringstream os;
    os << name << " = " << a << " violates " << name << " > (m-1)beta/2 = " << lb;
    throw DomainError(os.str());
  }
}

int last_part(const Partition& k, int m) { return k.part_at_row(m); }

// Matrix beta draws from independent A ~ gamma(a0, I) and B = T*T ~ gamma(b0, I).
// X = T^{-1} A T^{-*} is beta type II: given B it is gamma with scale B^{-1},
// the same conditional law as B^{-1/2} A B^{-1/2} because the law of A is
// unitarily invariant.  The triangular form needs no square root of a
// possibly near-singular B.  U = I - (I+X)^{-1} = I - T*(TT* + A)^{-1} T is
// beta type I, and log|I+X| = log|TT* + A| - log|T*T|.
struct BetaDraw {
  CMatrix x;
  CMatrix u;
  double log_det_i_plus_x = 0.0;
};

BetaDraw draw_beta(const ConeSampler& sa, const ConeSampler& sb, std::mt19937_64& rng) {
  const CMatrix a = sa.sample(rng);
  const CMatrix t = sb.sample_factor(rng);
  const auto tri = t.triangularView<Eigen::Upper>();
  const CMatrix y = tri.solve(a);
  const CMatrix x = tri.solve(CMatrix(y.adjoint())).adjoint();
  const Eigen::LLT<CMatrix> llt(t * t.adjoint() + a);
  const CMatrix id = CMatrix::Identity(a.rows(), a.cols());
  const CMatrix u = id - t.adjoint() * llt.solve(t);
  double ld = 0.0;
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    ld += 2.0 * (std::log(llt.matrixL()(i, i).real()) - std::log(std::abs(t(i, i))));
  }
  return {0.5 * (x + x.adjoint()), 0.5 * (u + u.adjoint()), ld};
}

void phase_fix(CMatrix& q, const CMatrix& r) {
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const auto d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0) q.col(i) *= d / mag;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string VerificationReport::record_header() {
  return "identity_id,param_digest,analytic,estimate,std_error,z,rel,pass";
}

std::string VerificationReport::to_record() const {
  char digest[24];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(param_digest));
  return identity_id + "," + digest + "," + num(analytic) + "," + num(estimate) + "," +
         num(std_error) + "," + num(z_score) + "," + num(rel_error) + "," +
         (pass ? "pass" : "fail");
}

VerificationReport make_report(std::string identity_id, std::string params, double analytic,
                               double estimate, double std_error, std::size_t n_samples,
                               const PassCriteria& criteria) {
  VerificationReport r;
  r.identity_id = std::move(identity_id);
  r.params = std::move(params);
  r.param_digest = fnv1a64(r.params);
  r.analytic = analytic;
  r.estimate = estimate;
  r.std_error = std_error;
  r.n_samples = n_samples;
  r.criteria = criteria;
  const double diff = estimate - analytic;
  const double floor = 1e-13 * std::max(std::abs(analytic), 1e-300);
  r.z_score = diff / std::max(std_error, floor);
  r.rel_error = analytic != 0.0 ? std::abs(diff / analytic) : std::abs(diff);
  r.pass = std::isfinite(r.z_score) && std::isfinite(r.rel_error) &&
           std::abs(r.z_score) <= criteria.z_max && r.rel_error <= criteria.rel_max;
  return r;
}

// ---------------------------------------------------------------------------

CMatrix haar_sample(int m, const DivisionAlgebra& algebra, std::mt19937_64& rng) {
  require_matrix_support(algebra, "Haar sampling");
  if (m < 1) throw DomainError("Haar sampling needs m >= 1");
  CMatrix g = gaussian_matrix(m, m, algebra, 1.0, rng);
  if (algebra.beta() <= 2) {
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    phase_fix(q, r);
    return q;
  }
  // Quaternion: orthonormalise columns in the order (c_j, c_{m+j}).  The
  // antiunitary map v -> -J conj(v) sends c_j to c_{m+j} and commutes with
  // Gram-Schmidt, so the quaternion structure survives.
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(2 * m);
  for (int j = 0; j < m; ++j) {
    perm.indices()[2 * j] = j;
    perm.indices()[2 * j + 1] = m + j;
  }
  // (g * perm^T) puts column perm[k] at position k.
  CMatrix ordered(2 * m, 2 * m);
  for (int k = 0; k < 2 * m; ++k) ordered.col(k) = g.col(perm.indices()[k]);
  Eigen::HouseholderQR<CMatrix> qr(ordered);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  phase_fix(q, r);
  CMatrix out(2 * m, 2 * m);
  for (int k = 0; k < 2 * m; ++k) out.col(perm.indices()[k]) = q.col(k);
  return out;
}

CMatrix haar_sample(int m, const DivisionAlgebra& algebra, std::uint64_t seed) {
  auto rng = make_block_rng(seed, 0x4aa7, 0);
  return haar_sample(m, algebra, rng);
}

CMatrix stiefel_sample(int n, int m, const DivisionAlgebra& algebra, std::mt19937_64& rng) {
  if (algebra.beta() > 2) throw UnsupportedError("Stiefel sampling is implemented for beta = 1, 2");
  if (n < m || m < 1) throw DomainError("Stiefel manifold V_{m,n} needs n >= m >= 1");
  CMatrix g = gaussian_matrix(n, m, algebra, 1.0, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, m);
  const CMatrix r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  phase_fix(q, r);
  return q;
}

ConeSampler::ConeSampler(int m, const DivisionAlgebra& algebra, double shape,
                         std::vector<double> z_eigs)
    : m_(m), algebra_(algebra), shape_(shape) {
  require_cone_support(algebra);
  if (m < 1) throw DomainError("cone dimension m must be >= 1");
  require_size(z_eigs, m, "Z");
  require_positive(z_eigs, "Z");
  check_classical_domain(shape, m, algebra, "proposal shape");
  for (double z : z_eigs) scale_.push_back(1.0 / std::sqrt(z));
}

CMatrix ConeSampler::sample(std::mt19937_64& rng) const {
  const CMatrix f = sample_factor(rng);
  return f.adjoint() * f;
}

CMatrix ConeSampler::sample_factor(std::mt19937_64& rng) const {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CMatrix t = CMatrix::Zero(m_, m_);
  const double hb = algebra_.half_beta();
  for (int i = 0; i < m_; ++i) {
    std::gamma_distribution<double> chi(shape_ - i * hb, 1.0);
    t(i, i) = std::sqrt(chi(rng));
    for (int j = i + 1; j < m_; ++j) {
      const double re = g(rng);
      const double im = algebra_.beta() == 2 ? g(rng) : 0.0;
      t(i, j) = {re, im};
    }
  }
  for (int j = 0; j < m_; ++j) t.col(j) *= scale_[static_cast<std::size_t>(j)];
  return t;
}

// ---------------------------------------------------------------------------

std::string ScalarKernel::name() const {
  switch (kind) {
    case Kind::kExp:
      return "exp";
    case Kind::kExpPower:
      return "exp_power(" + num(j) + ")";
    case Kind::kPareto:
      return "pareto(" + num(eta) + ")";
  }
  return "?";
}

namespace {

double pareto_power(double a, int m, int beta, double eta) { return beta * (a * m + eta); }

// log of the closed form of int_0^inf f(y) y^{s-1} dy.
double log_kernel_moment_closed(const ScalarKernel& f, double s, double a, int m, int beta) {
  switch (f.kind) {
    case ScalarKernel::Kind::kExp:
      return std::lgamma(s);
    case ScalarKernel::Kind::kExpPower:
      return std::lgamma(s + f.j);
    case ScalarKernel::Kind::kPareto: {
      const double p = pareto_power(a, m, beta, f.eta);
      return s * std::log(f.eta / 2.0) + std::lgamma(s) + std::lgamma(p - s) - std::lgamma(p);
    }
  }
  return 0.0;
}

void check_kernel_moment(const ScalarKernel& f, double s, double a, int m, int beta) {
  bool ok = s > 0;
  if (f.kind == ScalarKernel::Kind::kExpPower) ok = s + f.j > 0;
  if (f.kind == ScalarKernel::Kind::kPareto) {
    ok = ok && f.eta > 0 && pareto_power(a, m, beta, f.eta) > s;
  }
  if (!ok) {
    throw DomainError("kernel moment int f(y) y^{s-1} dy diverges for " + f.name() +
                      " at s = " + num(s));
  }
}

}  // namespace

double kernel_moment(const ScalarKernel& f, double s, double a, int m, int beta) {
  check_kernel_moment(f, s, a, m, beta);
  const double p = pareto_power(a, m, beta, f.eta);
  // Integrate y^{s-1} f(y) scaled by its closed-form size so the quadrature
  // tolerance is relative.
  const double shift = log_kernel_moment_closed(f, s, a, m, beta);
  auto integrand = [&](double y) -> double {
    if (y <= 0) return 0.0;
    double lf = 0.0;
    switch (f.kind) {
      case ScalarKernel::Kind::kExp:
        lf = -y;
        break;
      case ScalarKernel::Kind::kExpPower:
        lf = -y + f.j * std::log(y);
        break;
      case ScalarKernel::Kind::kPareto:
        lf = -p * std::log1p(2.0 * y / f.eta);
        break;
    }
    return std::exp(lf + (s - 1) * std::log(y) - shift);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double tol = 1e-12;
  const double head = ts.integrate(integrand, 0.0, 1.0, tol);
  const double tail = es.integrate(integrand, 1.0, std::numeric_limits<double>::infinity(), tol);
  return (head + tail) * std::exp(shift);
}

// ---------------------------------------------------------------------------

VerificationReport verify_split_integral(const Partition& kappa, const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         const DivisionAlgebra& algebra, const McOptions& opt) {
  require_matrix_support(algebra, "Haar Monte Carlo");
  const int m = static_cast<int>(x.size());
  require_size(y, m, "Y");
  const bool x_nonneg = std::all_of(x.begin(), x.end(), [](double v) { return v >= 0; });
  const bool y_nonneg = std::all_of(y.begin(), y.end(), [](double v) { return v >= 0; });
  if (!x_nonneg && !y_nonneg) throw DomainError("split integral check needs X >= 0 or Y >= 0");
  const std::string id = "split_integral";
  const std::string params = ParamWriter()
                                 .add("kappa", kappa.to_string())
                                 .add("x", x)
                                 .add("y", y)
                                 .common(algebra, opt)
                                 .str();
  const double analytic = jack_c(kappa, x, algebra) * jack_c(kappa, y, algebra) /
                          jack_C_at_identity(kappa, m, algebra);
  const CMatrix dy = real_diagonal(y, algebra);
  const CMatrix dx = real_diagonal(x, algebra);
  const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
    return [&](std::mt19937_64& rng) {
      const CMatrix h = haar_sample(m, algebra, rng);
      std::vector<double> ev;
      if (x_nonneg) {
        ev = spectrum_times_diag(h.adjoint() * dy * h, x, algebra);
      } else {
        ev = spectrum_times_diag(h * dx * h.adjoint(), y, algebra);
      }
      return jack_c(kappa, ev, algebra);
    };
  });
  return finish(id, params, analytic, 0.0L, mo, opt);
}

VerificationReport verify_laplace_jack(double a, const Partition& kappa,
                                       const std::vector<double>& r, const std::vector<double>& z,
                                       const DivisionAlgebra& algebra, const McOptions& opt) {
  require_cone_support(algebra);
  const int m = static_cast<int>(z.size());
  require_size(r, m, "R");
  require_positive(z, "Z");
  check_weighted_domain(a, m, algebra, kappa, WeightSign::kPlus, "a");
  const std::string id = "laplace_jack";
  const std::string params =
      ParamWriter().add("a", a).add("kappa", kappa.to_string()).add("r", r).add("z", z)
          .common(algebra, opt).str();
  const int km = last_part(kappa, m);
  const double a0 = a + km;
  const auto rz = elementwise(r, z, [](double u, double v) { return u / v; });
  const double analytic = static_cast<double>(
      std::exp(log_gamma_weighted(a, m, algebra, kappa, WeightSign::kPlus) - a * sum_log(z)) *
      jack_c(kappa, rz, algebra));
  const ConeSampler sampler(m, algebra, a0, z);
  const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
    return [&](std::mt19937_64& rng) {
      const CMatrix xm = sampler.sample(rng);
      return c_over_det(kappa, xm, r, algebra);
    };
  });
  const long double log_scale = log_mv_gamma(m, algebra, a0) - a0 * sum_log(z);
  return finish(id, params, analytic, log_scale, mo, opt);
}

VerificationReport verify_beta_jack(double a, double b, const Partition& kappa,
                                    const std::vector<double>& r, bool inverse_arg,
                                    const DivisionAlgebra& algebra, const McOptions& opt) {
  require_cone_support(algebra);
  const int m = static_cast<int>(r.size());
  const WeightSign sign = inverse_arg ? WeightSign::kMinus : WeightSign::kPlus;
  check_weighted_domain(a, m, algebra, kappa, sign, "a");
  check_classical_domain(b, m, algebra, "b");
  const std::string id = inverse_arg ? "beta_jack_inverse" : "beta_jack";
  const std::string params =
      ParamWriter().add("a", a).add("b", b).add("kappa", kappa.to_string()).add("r", r)
          .common(algebra, opt).str();
  const int km = last_part(kappa, m);
  const int k1 = kappa.first();
  const double a0 = inverse_arg ? a - k1 : a + km;
  const long double log_rhs = log_gamma_weighted(a, m, algebra, kappa, sign) +
                              log_mv_gamma(m, algebra, b) -
                              log_gamma_weighted(a + b, m, algebra, kappa, sign);
  const double analytic = static_cast<double>(std::exp(log_rhs) * jack_c(kappa, r, algebra));
  const std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
  const ConeSampler sa(m, algebra, a0, ones);
  const ConeSampler sb(m, algebra, b, ones);
  const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
    return [&](std::mt19937_64& rng) {
      const CMatrix u = draw_beta(sa, sb, rng).u;
      return inverse_arg ? c_inverse_times_det(kappa, u, r, algebra) : c_over_det(kappa, u, r, algebra);
    };
  });
  return finish(id, params, analytic, log_mv_beta(m, algebra, a0, b), mo, opt);
}

VerificationReport verify_theorem1(const ScalarKernel& f, double a, const Partition& kappa,
                                   const std::vector<double>& u, const std::vector<double>& z,
                                   bool inverse_arg, const DivisionAlgebra& algebra,
                                   const McOptions& opt) {
  require_cone_support(algebra);
  const int m = static_cast<int>(z.size());
  require_size(u, m, "U");
  require_positive(z, "Z");
  const WeightSign sign = inverse_arg ? WeightSign::kMinus : WeightSign::kPlus;
  check_weighted_domain(a, m, algebra, kappa, sign, "a");
  const std::string id = inverse_arg ? "theorem1_inverse" : "theorem1";
  const std::string params = ParamWriter()
                                 .add("f", f.name())
                                 .add("a", a)
                                 .add("kappa", kappa.to_string())
                                 .add("u", u)
                                 .add("z", z)
                                 .common(algebra, opt)
                                 .str();
  const int k = kappa.weight();
  const int km = last_part(kappa, m);
  const int k1 = kappa.first();
  const double s = inverse_arg ? a * m - k : a * m + k;
  const double moment = kernel_moment(f, s, a, m, algebra.beta());
  const auto uz = inverse_arg ? elementwise(u, z, [](double p, double q) { return p * q; })
                              : elementwise(u, z, [](double p, double q) { return p / q; });
  const double analytic = static_cast<double>(
      std::exp(log_gamma_weighted(a, m, algebra, kappa, sign) - std::lgamma(s) - a * sum_log(z)) *
      jack_c(kappa, uz, algebra) * moment);

  // Polar split under the matrix-gamma proposal: t = tr(XZ) ~ Gamma(m a0) is
  // independent of V = X / t, the integrand factorises into f(t) t^{...} and
  // a homogeneous function of V.  The radial integral is taken from the
  // closed form of the kernel moment; the MC averages the angular part.
  const double a0 = inverse_arg ? a - k1 : a + km;
  const ConeSampler sampler(m, algebra, a0, z);
  const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
    return [&](std::mt19937_64& rng) {
      const CMatrix xm = sampler.sample(rng);
      double t = 0.0;
      for (int i = 0; i < m; ++i) t += z[static_cast<std::size_t>(i)] * xm(i, i).real();
      const CMatrix v = xm / t;
      return inverse_arg ? c_inverse_times_det(kappa, v, u, algebra)
                         : c_over_det(kappa, v, u, algebra);
    };
  });
  const long double log_scale = log_mv_gamma(m, algebra, a0) - a0 * sum_log(z) -
                                std::lgamma(m * a0) +
                                log_kernel_moment_closed(f, s, a, m, algebra.beta());
  return finish(id, params, analytic, log_scale, mo, opt);
}

VerificationReport verify_theorem2(double a, double b, const Partition& kappa,
                                   const std::vector<double>& r, Theorem2Variant variant,
                                   const DivisionAlgebra& algebra, const McOptions& opt) {
  require_cone_support(algebra);
  const int m = static_cast<int>(r.size());
  const bool r1 = variant == Theorem2Variant::kR1;
  check_weighted_domain(a, m, algebra, kappa, r1 ? WeightSign::kMinus : WeightSign::kPlus, "a");
  check_weighted_domain(b, m, algebra, kappa, r1 ? WeightSign::kPlus : WeightSign::kMinus, "b");
  const std::string id = r1 ? "theorem2_r1" : "theorem2_r2";
  const std::string params =
      ParamWriter().add("a", a).add("b", b).add("kappa", kappa.to_string()).add("r", r)
          .common(algebra, opt).str();
  const int km = last_part(kappa, m);
  const int k1 = kappa.first();
  const long double log_rhs =
      log_gamma_weighted(a, m, algebra, kappa, r1 ? WeightSign::kMinus : WeightSign::kPlus) +
      log_gamma_weighted(b, m, algebra, kappa, r1 ? WeightSign::kPlus : WeightSign::kMinus) -
      log_mv_gamma(m, algebra, a + b);
  const double analytic = static_cast<double>(std::exp(log_rhs) * jack_c(kappa, r, algebra));
  const double a0 = r1 ? a - k1 : a + km;
  const double b0 = r1 ? b + km : b - k1;
  const std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
  const ConeSampler sa(m, algebra, a0, ones);
  const ConeSampler sb(m, algebra, b0, ones);
  const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
    return [&](std::mt19937_64& rng) {
      const BetaDraw d = draw_beta(sa, sb, rng);
      const CMatrix& x = d.x;
      const double ld1 = d.log_det_i_plus_x;
      const double w = r1 ? c_inverse_times_det(kappa, x, r, algebra) : c_over_det(kappa, x, r, algebra);
      return std::exp((km - k1) * ld1) * w;
    };
  });
  return finish(id, params, analytic, log_mv_beta(m, algebra, a0, b0), mo, opt);
}

// ---------------------------------------------------------------------------

double incomplete_analytic(IncompleteKind kind, const IncompleteParams& p,
                           const DivisionAlgebra& algebra) {
  const int m = static_cast<int>(p.omega.size());
  require_positive(p.omega, "Omega");
  const double hb = algebra.half_beta();
  const double pm = (m - 1) * hb + 1.0;
  switch (kind) {
    case IncompleteKind::kGamma: {
      require_size(p.lambda, m, "Lambda");
      check_classical_domain(p.a, m, algebra, "a");
      // 1F1(a; a+p; -Y) = etr(-Y) 1F1(p; a+p; Y), all terms positive.
      const auto y = elementwise(p.omega, p.lambda, [](double u, double v) { return u * v; });
      const SpectralArgument ys(y);
      const SeriesResult f = pfq(HypergeomSpec{{pm}, {p.a + pm}, algebra, m}, ys);
      const long double lg = log_mv_beta(m, algebra, p.a, pm) + p.a * sum_log(p.omega) -
                             static_cast<long double>(ys.trace());
      return static_cast<double>(std::exp(lg) * f.value_ld);
    }
    case IncompleteKind::kBeta: {
      check_classical_domain(p.a, m, algebra, "a");
      check_classical_domain(p.b, m, algebra, "b");
      for (double v : p.omega) {
        if (!(v < 1)) throw DomainError("incomplete beta needs 0 < Xi < I");
      }
      const SeriesResult f =
          pfq(HypergeomSpec{{p.a, -p.b + pm}, {p.a + pm}, algebra, m}, SpectralArgument(p.omega));
      return static_cast<double>(
          std::exp(log_mv_beta(m, algebra, p.a, pm) + p.a * sum_log(p.omega)) * f.value_ld);
    }
    case IncompleteKind::kUpperGamma: {
      require_size(p.lambda, m, "Lambda");
      require_positive(p.lambda, "Lambda");
      const double rr = p.a - pm;
      if (!(rr > 0.5) || !near_integer(rr)) {
        throw DomainError("upper incomplete gamma requires r=a-(m-1)beta/2-1 a positive integer (r = " +
                          num(rr) + ")");
      }
      const int r = static_cast<int>(std::lround(rr));
      const auto y = elementwise(p.omega, p.lambda, [](double u, double v) { return u * v; });
      const SpectralArgument ys(y);
      const SeriesResult f = truncated_pfq_restricted(HypergeomSpec{{}, {}, algebra, m}, ys, r);
      const long double lg = log_mv_gamma(m, algebra, p.a) - p.a * sum_log(p.lambda) -
                             static_cast<long double>(ys.trace());
      return static_cast<double>(std::exp(lg) * f.value_ld);
    }
  }
  return 0.0;
}

VerificationReport verify_incomplete(IncompleteKind kind, const IncompleteParams& p,
                                     const DivisionAlgebra& algebra, const McOptions& opt) {
  require_cone_support(algebra);
  const int m = static_cast<int>(p.omega.size());
  const double analytic = incomplete_analytic(kind, p, algebra);
  const double pm = (m - 1) * algebra.half_beta() + 1.0;
  const std::string id = kind == IncompleteKind::kGamma  ? "incomplete_gamma"
                         : kind == IncompleteKind::kBeta ? "incomplete_beta"
                                                         : "upper_incomplete_gamma";
  ParamWriter pw;
  pw.add("a", p.a).add("omega", p.omega);
  if (kind == IncompleteKind::kBeta) {
    pw.add("b", p.b);
  } else {
    pw.add("lambda", p.lambda);
  }
  const std::string params = pw.common(algebra, opt).str();
  const std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
  const auto y = kind == IncompleteKind::kBeta
                     ? p.omega
                     : elementwise(p.omega, p.lambda, [](double u, double v) { return u * v; });

  if (kind == IncompleteKind::kUpperGamma) {
    // X = Omega^{1/2}(I+R)Omega^{1/2}, R ~ gamma(p, Z^{-1}), Z = Omega Lambda.
    const ConeSampler sr(m, algebra, pm, y);
    const double r = p.a - pm;
    const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
      return [&](std::mt19937_64& rng) {
        double ld1 = 0.0;
        for (double v : eigs(sr.sample(rng), algebra)) ld1 += std::log1p(v);
        return std::exp(r * ld1);
      };
    });
    double trace = 0.0;
    for (double v : y) trace += v;
    const long double log_scale = -trace + (p.a - pm) * sum_log(p.omega) - pm * sum_log(p.lambda) +
                                  log_mv_gamma(m, algebra, pm);
    return finish(id, params, analytic, log_scale, mo, opt);
  }

  // X = Omega^{1/2} U Omega^{1/2}, U ~ beta I(a, (m-1)beta/2 + 1).
  const ConeSampler sa(m, algebra, p.a, ones);
  const ConeSampler sb(m, algebra, pm, ones);
  const bool gamma = kind == IncompleteKind::kGamma;
  const double bexp = p.b - pm;
  const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
    return [&](std::mt19937_64& rng) {
      const CMatrix u = draw_beta(sa, sb, rng).u;
      if (gamma) {
        double tr = 0.0;
        for (int i = 0; i < m; ++i) tr += y[static_cast<std::size_t>(i)] * u(i, i).real();
        return std::exp(-tr);
      }
      double l = 0.0;
      for (double v : spectrum_times_diag(u, y, algebra)) l += std::log1p(-v);
      return std::exp(bexp * l);
    };
  });
  const long double log_scale = log_mv_beta(m, algebra, p.a, pm) + p.a * sum_log(p.omega);
  return finish(id, params, analytic, log_scale, mo, opt);
}

// ---------------------------------------------------------------------------

VerificationReport verify_laplace_hypergeom(const LaplaceHypergeomCase& c,
                                            const DivisionAlgebra& algebra, const McOptions& opt) {
  require_cone_support(algebra);
  const int m = static_cast<int>(c.z.size());
  require_size(c.u, m, "U");
  require_positive(c.z, "Z");
  if (c.y) require_size(*c.y, m, "Y");
  HypergeomSpec integrand{c.upper, c.lower, algebra, m};
  integrand.validate();
  if (integrand.p() > integrand.q()) {
    throw DomainError("Laplace transform needs p <= q for the integrand");
  }
  const double pm = (m - 1) * algebra.half_beta() + 1.0;
  double a0 = c.a;
  int r = 0;
  if (c.inverse_arg) {
    const auto order = integrand.terminating_order();
    if (!order) {
      throw DomainError("inverse-argument Laplace check needs a terminating integrand "
                        "(an upper parameter equal to a nonpositive integer)");
    }
    r = *order;
    a0 = c.a - r;
    if (!(a0 > (m - 1) * algebra.half_beta())) {
      throw DomainError("a = " + num(c.a) + " violates a > (m-1)beta/2 + k_1 for k_1 <= " +
                        std::to_string(r));
    }
  } else {
    check_classical_domain(c.a, m, algebra, "a");
  }
  const std::string id = std::string("laplace_") + (c.y ? "two_" : "") +
                         std::to_string(integrand.p()) + "f" + std::to_string(integrand.q()) +
                         (c.inverse_arg ? "_inverse" : "");
  ParamWriter pw;
  pw.add("upper", c.upper).add("lower", c.lower).add("a", c.a).add("u", c.u).add("z", c.z);
  if (c.y) pw.add("y", *c.y);
  const std::string params = pw.common(algebra, opt).str();

  SeriesResult rhs;
  if (c.inverse_arg) {
    HypergeomSpec out = integrand;
    out.lower.push_back(-c.a + pm);
    const auto uz = elementwise(c.u, c.z, [](double p, double q) { return -p * q; });
    rhs = c.y ? pfq_two(out, SpectralArgument(uz), SpectralArgument(*c.y))
              : pfq(out, SpectralArgument(uz));
  } else {
    HypergeomSpec out = integrand;
    out.upper.push_back(c.a);
    const auto uz = elementwise(c.u, c.z, [](double p, double q) { return p / q; });
    rhs = c.y ? pfq_two(out, SpectralArgument(uz), SpectralArgument(*c.y))
              : pfq(out, SpectralArgument(uz));
  }
  const double analytic = static_cast<double>(
      std::exp(log_mv_gamma(m, algebra, c.a) - c.a * sum_log(c.z)) * rhs.value_ld);

  const ConeSampler sampler(m, algebra, a0, c.z);
  const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
    auto series = std::make_shared<HypergeometricSeries>(integrand);
    return [&, series](std::mt19937_64& rng) {
      const CMatrix xm = sampler.sample(rng);
      double w = 1.0;
      std::vector<double> ev;
      if (c.inverse_arg) {
        w = std::exp(r * log_det(eigs(xm, algebra)));
        ev = spectrum_times_diag(inverse(xm), c.u, algebra);
      } else {
        ev = spectrum_times_diag(xm, c.u, algebra);
      }
      const SeriesTruncation trunc{};
      const SeriesResult v = c.y ? series->evaluate_two(SpectralArgument(ev), SpectralArgument(*c.y), trunc)
                                 : series->evaluate(SpectralArgument(ev), trunc);
      return w * v.value;
    };
  });
  const long double log_scale = log_mv_gamma(m, algebra, a0) - a0 * sum_log(c.z);
  return finish(id, params, analytic, log_scale, mo, opt);
}

VerificationReport verify_stiefel_0f1(const std::vector<double>& s, int n,
                                      const DivisionAlgebra& algebra, const McOptions& opt) {
  if (algebra.beta() > 2) throw UnsupportedError("Stiefel check is implemented for beta = 1, 2");
  const int m = static_cast<int>(s.size());
  if (n < m) throw DomainError("Stiefel check needs n >= m");
  const std::string id = "stiefel_0f1";
  const std::string params = ParamWriter().add("s", s).add("n", n).common(algebra, opt).str();
  const double beta = algebra.beta();
  std::vector<double> arg;
  for (double v : s) arg.push_back(beta * beta * v * v / 4.0);
  const double analytic = pfq(HypergeomSpec{{}, {beta * n / 2.0}, algebra, m}, SpectralArgument(arg)).value;
  const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
    return [&](std::mt19937_64& rng) {
      const CMatrix h1 = stiefel_sample(n, m, algebra, rng);
      double t = 0.0;
      for (int i = 0; i < m; ++i) t += s[static_cast<std::size_t>(i)] * h1(i, i).real();
      return std::exp(beta * t);
    };
  });
  return finish(id, params, analytic, 0.0L, mo, opt);
}

VerificationReport verify_two_matrix_0f0(const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         const DivisionAlgebra& algebra, const McOptions& opt) {
  require_matrix_support(algebra, "Haar Monte Carlo");
  const int m = static_cast<int>(x.size());
  require_size(y, m, "Y");
  const std::string id = "two_matrix_0f0";
  const std::string params = ParamWriter().add("x", x).add("y", y).common(algebra, opt).str();
  const double analytic =
      pfq_two(HypergeomSpec{{}, {}, algebra, m}, SpectralArgument(x), SpectralArgument(y)).value;
  const Moments mo = simulate(opt, stream_of(id, params), [&]() -> DrawFn {
    return [&](std::mt19937_64& rng) {
      const CMatrix h = haar_sample(m, algebra, rng);
      double t = 0.0;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          t += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] *
               logical_entry(h, i, j, algebra).squaredNorm();
        }
      }
      return std::exp(t);
    };
  });
  return finish(id, params, analytic, 0.0L, mo, opt);
}

// ---------------------------------------------------------------------------

std::vector<VerificationReport> run_verify_all(bool quick, std::uint64_t seed, int threads,
                                               std::size_t base_samples,
                                               const PassCriteria& criteria) {
  McOptions opt;
  opt.seed = seed;
  opt.threads = threads;
  opt.criteria = criteria;
  const std::size_t base = base_samples > 0 ? base_samples : quick ? 40000 : 400000;
  auto with = [&](double factor) {
    McOptions o = opt;
    o.n_samples = static_cast<std::size_t>(base * factor);
    return o;
  };
  const DivisionAlgebra r{1}, c{2}, h{4};
  const Partition p1 = Partition::parse("(1)"), p2 = Partition::parse("(2)"),
                  p11 = Partition::parse("(1,1)"), p21 = Partition::parse("(2,1)");
  std::vector<VerificationReport> out;

  out.push_back(verify_split_integral(p21, {1, 2}, {3, 1}, r, with(1)));
  out.push_back(verify_split_integral(p21, {1, 2, 0.5}, {3, 1, 2}, c, with(0.5)));
  out.push_back(verify_split_integral(p2, {1, 2}, {3, 1}, h, with(0.5)));

  out.push_back(verify_laplace_jack(1.2, p2, {1, 0.5}, {1, 1}, r, with(1)));
  out.push_back(verify_laplace_jack(0.2, p21, {1, 0.5}, {1, 2}, r, with(1)));
  out.push_back(verify_laplace_jack(0.6, p21, {1, 0.5}, {1, 2}, c, with(1)));

  out.push_back(verify_beta_jack(2, 3, p11, {1, 0.5}, false, c, with(1)));
  out.push_back(verify_beta_jack(0.2, 1.5, p21, {1, 0.5}, false, r, with(1)));
  out.push_back(verify_beta_jack(2.5, 2, p1, {1, 0.5}, true, r, with(1)));

  out.push_back(verify_theorem1(ScalarKernel::exp(), 2.5, p1, {1, 0.3}, {1, 2}, true, r, with(1)));
  out.push_back(verify_theorem1(ScalarKernel::exp_power(1), 1.2, p2, {1, 0.3}, {1, 2}, false, r, with(1)));
  out.push_back(verify_theorem1(ScalarKernel::pareto(3), 3.0, p2, {1, 0.3}, {1, 2}, true, r, with(1)));

  out.push_back(verify_theorem2(3.5, 2, p2, {1, 0.5}, Theorem2Variant::kR1, c, with(1)));
  out.push_back(verify_theorem2(1.5, 3.5, p2, {1, 0.5}, Theorem2Variant::kR2, c, with(1)));
  out.push_back(verify_theorem2(3.5, 0.2, p21, {1, 0.5}, Theorem2Variant::kR1, r, with(1)));

  out.push_back(verify_incomplete(IncompleteKind::kGamma, {1.3, 1.0, {1.5, 0.7}, {1, 2}}, r, with(1)));
  out.push_back(verify_incomplete(IncompleteKind::kBeta, {1.3, 2.2, {0.6, 0.3}, {}}, r, with(1)));
  out.push_back(verify_incomplete(IncompleteKind::kUpperGamma, {3.5, 1.0, {0.8, 0.4}, {1, 2}}, r, with(1)));

  out.push_back(verify_laplace_hypergeom({{}, {}, 1.5, {0.3, 0.1}, {1, 2}, std::nullopt, false}, r, with(1)));
  out.push_back(verify_laplace_hypergeom({{1.5}, {2.5}, 1.2, {0.4, 0.2}, {1, 2}, std::nullopt, false}, r, with(0.25)));
  out.push_back(verify_laplace_hypergeom({{-2}, {3.5}, 3.3, {0.5, 0.2}, {1, 2}, std::nullopt, true}, r, with(2)));
  out.push_back(verify_laplace_hypergeom({{}, {2.5}, 1.4, {0.5, 0.2}, {1, 2}, std::vector<double>{1, 0.5}, false}, c, with(0.25)));

  out.push_back(verify_stiefel_0f1({0.8, 0.4}, 4, r, with(1)));
  out.push_back(verify_stiefel_0f1({0.8, 0.4}, 4, c, with(1)));

  out.push_back(verify_two_matrix_0f0({0.5, 0.2}, {0.3, 0.1}, r, with(1)));
  out.push_back(verify_two_matrix_0f0({0.5, 0.2}, {0.3, 0.1}, c, with(1)));
  out.push_back(verify_two_matrix_0f0({0.5, 0.2}, {0.3, 0.1}, h, with(1)));
  return out;
}

}  // namespace jackdiv
