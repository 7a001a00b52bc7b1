#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "jackdiv/errors.hpp"
#include "jackdiv/random.hpp"
#include "jackdiv/verify.hpp"

using namespace jackdiv;

namespace {

double half_line(const std::function<double(double)>& f) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  return ts.integrate(f, 0.0, 1.0, 1e-12) +
         es.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-12);
}

double interval(const std::function<double(double)>& f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, lo, hi, 1e-12);
}

McOptions small(std::size_t n = 20000) {
  McOptions o;
  o.n_samples = n;
  return o;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("report thresholds and record format") {
  auto r = make_report("x", "k=1", 2.0, 2.01, 0.01, 100, {});
  CHECK(r.pass);
  CHECK(r.z_score == doctest::Approx(1.0));
  CHECK(r.rel_error == doctest::Approx(0.005));
  auto bad = make_report("x", "k=1", 2.0, 2.5, 0.01, 100, {});
  CHECK_FALSE(bad.pass);
  auto far = make_report("x", "k=1", 1.0, 1.2, 1.0, 100, {});
  CHECK_FALSE(far.pass);  // small z but 20% off
  const std::string rec = r.to_record();
  CHECK(rec.rfind("x,", 0) == 0);
  CHECK(rec.substr(rec.size() - 4) == "pass");
  CHECK(std::count(rec.begin(), rec.end(), ',') == 7);
  CHECK(VerificationReport::record_header() ==
        "identity_id,param_digest,analytic,estimate,std_error,z,rel,pass");
  auto exact = make_report("x", "k=1", 3.0, 3.0, 0.0, 100, {});
  CHECK(exact.pass);
}

TEST_CASE("Haar samples are unitary with the algebra's block structure") {
  std::mt19937_64 rng(7);
  for (int beta : {1, 2, 4}) {
    DivisionAlgebra alg(beta);
    for (int m : {1, 2, 3, 5}) {
      for (int rep = 0; rep < 20; ++rep) {
        const CMatrix h = haar_sample(m, alg, rng);
        const int s = beta == 4 ? 2 * m : m;
        REQUIRE(h.rows() == s);
        CHECK((h.adjoint() * h - CMatrix::Identity(s, s)).norm() < 1e-12);
        if (beta == 1) CHECK(h.imag().norm() == 0.0);
        if (beta == 4) {
          const CMatrix z = h.topLeftCorner(m, m), w = h.topRightCorner(m, m);
          CHECK((h.bottomLeftCorner(m, m) + w.conjugate()).norm() < 1e-12);
          CHECK((h.bottomRightCorner(m, m) - z.conjugate()).norm() < 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(haar_sample(2, kOctonion, rng), UnsupportedError);
}

TEST_CASE("Haar second moment E|tr H|^2 = 1") {
  for (int beta : {1, 2}) {
    std::mt19937_64 rng(11 + beta);
    const int n = 40000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double t = std::norm(haar_sample(3, DivisionAlgebra(beta), rng).trace());
      s += t;
      s2 += t * t;
    }
    const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.0) < 4 * se);
  }
}

TEST_CASE("Haar law is left invariant") {
  for (int beta : {1, 2, 4}) {
    DivisionAlgebra alg(beta);
    const CMatrix q = haar_sample(3, alg, std::uint64_t{99});
    std::mt19937_64 r1(1), r2(2);
    std::vector<double> a, b;
    for (int i = 0; i < 6000; ++i) {
      a.push_back(haar_sample(3, alg, r1)(0, 0).real());
      b.push_back((q * haar_sample(3, alg, r2))(0, 0).real());
    }
    CHECK(ks_two_sample(a, b) < 0.045);
  }
}

TEST_CASE("Stiefel samples have orthonormal columns") {
  std::mt19937_64 rng(5);
  for (int beta : {1, 2}) {
    const CMatrix v = stiefel_sample(5, 2, DivisionAlgebra(beta), rng);
    REQUIRE(v.cols() == 2);
    CHECK((v.adjoint() * v - CMatrix::Identity(2, 2)).norm() < 1e-12);
  }
  CHECK_THROWS_AS(stiefel_sample(5, 2, kQuaternion, rng), UnsupportedError);
  CHECK_THROWS_AS(stiefel_sample(2, 3, kReal, rng), DomainError);
}

TEST_CASE("cone sampler mean is a0 Z^{-1}") {
  for (int beta : {1, 2}) {
    ConeSampler cs(2, DivisionAlgebra(beta), 2.5, {1.0, 2.0});
    std::mt19937_64 rng(3);
    const int n = 40000;
    double d0 = 0, d1 = 0, off = 0;
    for (int i = 0; i < n; ++i) {
      const CMatrix x = cs.sample(rng);
      d0 += x(0, 0).real();
      d1 += x(1, 1).real();
      off += x(0, 1).real();
    }
    CHECK(d0 / n == doctest::Approx(2.5).epsilon(0.02));
    CHECK(d1 / n == doctest::Approx(1.25).epsilon(0.02));
    CHECK(std::abs(off / n) < 0.03);
  }
  CHECK_THROWS_AS(ConeSampler(2, kReal, 0.4, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(ConeSampler(2, kQuaternion, 3.0, {1.0, 1.0}), UnsupportedError);
}

TEST_CASE("kernel moments match closed forms") {
  CHECK(kernel_moment(ScalarKernel::exp(), 2.5, 1, 2, 1) ==
        doctest::Approx(std::tgamma(2.5)).epsilon(1e-9));
  CHECK(kernel_moment(ScalarKernel::exp_power(2), 1.5, 1, 2, 1) ==
        doctest::Approx(std::tgamma(3.5)).epsilon(1e-9));
  // Pareto: (eta/2)^s B(s, P - s) with P = beta (a m + eta).
  const double eta = 3, a = 1.5, s = 2.2, p = 1 * (a * 2 + eta);
  const double closed = std::pow(eta / 2, s) * std::tgamma(s) * std::tgamma(p - s) / std::tgamma(p);
  CHECK(kernel_moment(ScalarKernel::pareto(eta), s, a, 2, 1) ==
        doctest::Approx(closed).epsilon(1e-9));
  CHECK_THROWS_AS(kernel_moment(ScalarKernel::pareto(1), 10.0, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(kernel_moment(ScalarKernel::exp(), -1.0, 1, 1, 1), DomainError);
}

TEST_CASE("m = 1 analytic sides agree with scalar quadrature") {
  const auto opt = small(4096);
  const Partition k2{2};
  SUBCASE("laplace") {
    const double a = 1.7, r = 0.8, z = 1.3;
    auto rep = verify_laplace_jack(a, k2, {r}, {z}, kReal, opt);
    const double q = half_line([&](double x) {
      return std::exp(-x * z) * std::pow(x, a - 1) * std::pow(x * r, 2);
    });
    CHECK(rep.analytic == doctest::Approx(q).epsilon(1e-3));
    CHECK(rep.pass);
  }
  SUBCASE("beta, both arguments") {
    const double a = 3.5, b = 1.5, r = 0.7;
    for (bool inv : {false, true}) {
      auto rep = verify_beta_jack(a, b, k2, {r}, inv, kReal, opt);
      const double q = interval(
          [&](double x) {
            return std::pow(x, a - 1 + (inv ? -2 : 2)) * std::pow(1 - x, b - 1) * r * r;
          },
          0.0, 1.0);
      CHECK(rep.analytic == doctest::Approx(q).epsilon(1e-3));
    }
  }
  SUBCASE("theorem 1") {
    const double a = 3.2, u = 0.6, z = 1.4;
    for (const auto& f : {ScalarKernel::exp(), ScalarKernel::exp_power(1), ScalarKernel::pareto(3)}) {
      for (bool inv : {false, true}) {
        auto rep = verify_theorem1(f, a, k2, {u}, {z}, inv, kReal, opt);
        const double pw = 1 * (a * 1 + f.eta);
        const double q = half_line([&](double x) {
          const double y = x * z;
          double lf = -y;
          if (f.kind == ScalarKernel::Kind::kExpPower) lf += std::log(y);
          if (f.kind == ScalarKernel::Kind::kPareto) lf = -pw * std::log1p(2 * y / f.eta);
          return std::exp(lf + (a - 1 + (inv ? -2 : 2)) * std::log(x)) * u * u;
        });
        CHECK(rep.analytic == doctest::Approx(q).epsilon(1e-3));
      }
    }
  }
  SUBCASE("theorem 2") {
    const double a = 3.5, b = 3.0, r = 0.9;
    for (auto v : {Theorem2Variant::kR1, Theorem2Variant::kR2}) {
      auto rep = verify_theorem2(a, b, k2, {r}, v, kReal, opt);
      const bool inv = v == Theorem2Variant::kR1;
      const double q = half_line([&](double x) {
        return std::exp((a - 1 + (inv ? -2 : 2)) * std::log(x) - (a + b) * std::log1p(x)) * r * r;
      });
      CHECK(rep.analytic == doctest::Approx(q).epsilon(1e-3));
    }
  }
  SUBCASE("incomplete gamma and beta") {
    IncompleteParams p;
    p.a = 2.3;
    p.b = 1.7;
    p.omega = {0.8};
    p.lambda = {1.5};
    const double g = interval([&](double x) { return std::exp(-1.5 * x) * std::pow(x, p.a - 1); }, 0, 0.8);
    CHECK(incomplete_analytic(IncompleteKind::kGamma, p, kReal) == doctest::Approx(g).epsilon(1e-3));
    const double b = interval(
        [&](double x) { return std::pow(x, p.a - 1) * std::pow(1 - x, p.b - 1); }, 0, 0.8);
    CHECK(incomplete_analytic(IncompleteKind::kBeta, p, kReal) == doctest::Approx(b).epsilon(1e-3));
  }
  SUBCASE("upper incomplete gamma: finite sum at a = 3") {
    IncompleteParams p;
    p.a = 3;
    p.omega = {1.2};
    p.lambda = {0.7};
    const double lw = 0.7 * 1.2;
    const double closed = std::exp(-lw) * (1 + lw + lw * lw / 2) * 2.0 / std::pow(0.7, 3);
    CHECK(incomplete_analytic(IncompleteKind::kUpperGamma, p, kReal) ==
          doctest::Approx(closed).epsilon(1e-13));
    p.a = 2.5;
    CHECK_THROWS_AS(incomplete_analytic(IncompleteKind::kUpperGamma, p, kReal), DomainError);
  }
  SUBCASE("laplace of 1F1") {
    LaplaceHypergeomCase c;
    c.upper = {0.5};
    c.lower = {2.5};
    c.a = 1.5;
    c.u = {0.6};
    c.z = {1.3};
    auto rep = verify_laplace_hypergeom(c, kReal, opt);
    const double q = half_line([&](double x) {
      if (x > 400) return 0.0;  // integrand below e^{-280}
      return std::exp(-1.3 * x) * std::pow(x, 0.5) *
             boost::math::hypergeometric_pFq({0.5}, {2.5}, 0.6 * x);
    });
    CHECK(rep.analytic == doctest::Approx(q).epsilon(1e-3));
  }
  SUBCASE("Stiefel on the circle") {
    const double s = 1.3;
    for (int beta : {1, 2}) {
      auto rep = verify_stiefel_0f1({s}, 2, DivisionAlgebra(beta), opt);
      // beta = 1: E exp(s cos t) over the circle; beta = 2: over S^3, where
      // Re h has density (2/pi) sqrt(1 - t^2).
      double q;
      if (beta == 1) {
        q = boost::math::quadrature::trapezoidal(
                [&](double t) { return std::exp(s * std::cos(t)); }, 0.0, 2 * std::numbers::pi) /
            (2 * std::numbers::pi);
      } else {
        q = interval([&](double t) {
              return std::exp(2 * s * t) * 2 / std::numbers::pi * std::sqrt(1 - t * t);
            }, -1, 1);
      }
      CHECK(rep.analytic == doctest::Approx(q).epsilon(1e-4));
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("empty partition reduces to the normalizing constants") {
  const auto opt = small(8192);
  auto lap = verify_laplace_jack(2.0, Partition{}, {1, 0.5}, {1, 2}, kReal, opt);
  // Gamma_2[2] |Z|^{-2} with Gamma_2[2] = sqrt(pi) Gamma(2) Gamma(1.5).
  CHECK(lap.analytic ==
        doctest::Approx(std::sqrt(std::numbers::pi) * std::tgamma(1.5) / 4.0).epsilon(1e-12));
  CHECK(lap.std_error < 1e-12 * lap.analytic);
  CHECK(lap.pass);
}

TEST_CASE("m = 2 cone checks pass at moderate sample size") {
  const auto opt = small(40000);
  CHECK(verify_laplace_jack(0.3, Partition{1, 1}, {1, 0.5}, {1, 2}, kReal, opt).pass);
  CHECK(verify_beta_jack(2.5, 2.0, Partition{2}, {1, 0.5}, false, kComplex, opt).pass);
  CHECK(verify_theorem2(3.5, 2.0, Partition{2}, {1, 0.5}, Theorem2Variant::kR1, kReal, opt).pass);
  IncompleteParams p;
  p.a = 2.5;
  p.omega = {1.0, 0.5};
  p.lambda = {1.0, 2.0};
  CHECK(verify_incomplete(IncompleteKind::kGamma, p, kReal, opt).pass);
  p.a = 3.5;
  CHECK(verify_incomplete(IncompleteKind::kUpperGamma, p, kReal, opt).pass);
}

TEST_CASE("domain and support errors") {
  const auto opt = small(4096);
  // Below the corrected domain: a <= (m-1)/2 - k_m.
  CHECK_THROWS_AS(verify_laplace_jack(-0.6, Partition{1, 1}, {1, 1}, {1, 1}, kReal, opt),
                  DomainError);
  CHECK_THROWS_AS(verify_theorem1(ScalarKernel::exp(), 1.0, Partition{2}, {1, 1}, {1, 1}, true,
                                  kReal, opt),
                  DomainError);
  CHECK_THROWS_AS(verify_laplace_jack(2.0, Partition{1}, {1, 1}, {1, 1}, kQuaternion, opt),
                  UnsupportedError);
  CHECK_THROWS_AS(verify_two_matrix_0f0({1, 1}, {1, 1}, kOctonion, opt), UnsupportedError);
  CHECK_THROWS_AS(verify_laplace_jack(2.0, Partition{1}, {1, 1}, {1}, kReal, opt), DomainError);
  LaplaceHypergeomCase c;
  c.upper = {0.5};
  c.lower = {2.5};
  c.a = 4;
  c.u = {1, 1};
  c.z = {1, 1};
  c.inverse_arg = true;  // non-terminating integrand
  CHECK_THROWS_AS(verify_laplace_hypergeom(c, kReal, opt), DomainError);
}

TEST_CASE("reports do not depend on the thread count") {
  McOptions a = small(50000), b = a;
  b.threads = 3;
  auto r1 = verify_split_integral(Partition{2, 1}, {1, 0.5, 0.2}, {0.3, 1, 2}, kComplex, a);
  auto r2 = verify_split_integral(Partition{2, 1}, {1, 0.5, 0.2}, {0.3, 1, 2}, kComplex, b);
  CHECK(r1.to_record() == r2.to_record());
  auto t1 = verify_theorem1(ScalarKernel::pareto(3), 3.0, Partition{2}, {1, 0.3}, {1, 2}, true,
                            kReal, a);
  auto t2 = verify_theorem1(ScalarKernel::pareto(3), 3.0, Partition{2}, {1, 0.3}, {1, 2}, true,
                            kReal, b);
  CHECK(t1.to_record() == t2.to_record());
}

TEST_CASE("different seeds agree within combined error") {
  McOptions a = small(40000), b = a;
  b.seed = a.seed + 1;
  auto r1 = verify_two_matrix_0f0({1, 0.4}, {0.5, 1.5}, kQuaternion, a);
  auto r2 = verify_two_matrix_0f0({1, 0.4}, {0.5, 1.5}, kQuaternion, b);
  CHECK(r1.estimate != r2.estimate);
  CHECK(std::abs(r1.estimate - r2.estimate) <
        6 * std::hypot(r1.std_error, r2.std_error));
  CHECK(r1.param_digest != r2.param_digest);  // seed is part of the case
}
