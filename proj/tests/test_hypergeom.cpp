#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "jackdiv/errors.hpp"
#include "jackdiv/hypergeom.hpp"

using namespace jackdiv;

namespace {

const DivisionAlgebra kAll[] = {kReal, kComplex, kQuaternion, kOctonion};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Classical scalar pFq by direct term recursion.
double scalar_pfq(const std::vector<double>& a, const std::vector<double>& b, double x) {
  long double term = 1, sum = 1;
  for (int k = 0; k < 2000; ++k) {
    for (double ai : a) term *= ai + k;
    for (double bi : b) term /= bi + k;
    term *= x / (k + 1);
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) && k > 5) break;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("spec examples") {
  for (const auto& alg : kAll) {
    auto r = pfq(HypergeomSpec{{}, {}, alg, 2}, {0.3, -0.1});
    CHECK(r.converged);
    CHECK(rel(r.value, std::exp(0.2)) <= 1e-10);
  }
  auto r10 = pfq(HypergeomSpec{{2.0}, {}, kReal, 1}, {0.5});
  CHECK(rel(r10.value, 4.0) <= 1e-10);
  CHECK_THROWS_AS(pfq(HypergeomSpec{{1.0, 2.0}, {3.0}, kReal, 1}, {1.5}), DomainError);
  CHECK_THROWS_AS(pfq(HypergeomSpec{{1.0, 2.0, 3.0}, {3.0}, kReal, 1}, {0.1}), DomainError);
  CHECK_THROWS_AS(pfq(HypergeomSpec{{}, {}, kReal, 2}, {0.1}), DomainError);
}

TEST_CASE("lower-parameter poles are rejected") {
  CHECK_THROWS_AS(pfq(HypergeomSpec{{1.0}, {-2.0}, kReal, 1}, {0.1}), DomainError);
  CHECK_THROWS_AS(pfq(HypergeomSpec{{1.0}, {0.0}, kReal, 1}, {0.1}), DomainError);
  // b = 0.5 with m = 2, beta = 1: -b + beta/2 = 0.
  CHECK_THROWS_AS(pfq(HypergeomSpec{{1.0}, {0.5}, kReal, 2}, {0.1, 0.0}), DomainError);
  CHECK_NOTHROW(pfq(HypergeomSpec{{1.0}, {0.5}, kReal, 1}, {0.1}));
}

TEST_CASE("terminating series") {
  HypergeomSpec s{{-2.0, 1.5, 0.7}, {2.5}, kComplex, 2};
  REQUIRE(s.terminating_order() == 2);
  auto r = pfq(s, {3.0, 2.0});  // p > q+1 and ||x|| > 1 are fine
  CHECK(r.converged);
  CHECK(r.degrees_used == 4);
  CHECK(std::isfinite(r.value));
  // m = 1: 1F0(-3; x) = (1-x)^3 for any x.
  auto r1 = pfq(HypergeomSpec{{-3.0}, {}, kReal, 1}, {2.5});
  CHECK(rel(r1.value, std::pow(1 - 2.5, 3)) <= 1e-13);
}

TEST_CASE("0F0 equals etr(x) for ||x|| <= 5 with adaptive degree") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (const auto& alg : kAll) {
    for (int m = 1; m <= 3; ++m) {
      std::vector<double> x(static_cast<std::size_t>(m));
      for (auto& v : x) v = u(rng);
      x[0] = 5.0;
      SpectralArgument sx(x);
      auto r = pfq(HypergeomSpec{{}, {}, alg, m}, sx);
      INFO("beta=", alg.beta(), " m=", m);
      CHECK(r.converged);
      CHECK(rel(r.value, std::exp(sx.trace())) <= 1e-9);
    }
  }
}

TEST_CASE("1F0 determinant law is beta-free") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (const auto& alg : kAll) {
    for (int m = 1; m <= 3; ++m) {
      for (double a : {0.5, 1.0, 2.5}) {
        std::vector<double> x(static_cast<std::size_t>(m));
        for (auto& v : x) v = u(rng);
        double want = 1.0;
        for (double v : x) want *= std::pow(1.0 - v, -a);
        auto r = pfq(HypergeomSpec{{a}, {}, alg, m}, SpectralArgument(x));
        CHECK(r.converged);
        CHECK(rel(r.value, want) <= 1e-8);
      }
    }
  }
}

TEST_CASE("two-argument series") {
  for (const auto& alg : kAll) {
    SpectralArgument x{0.7, -0.2, 0.4};
    auto r = pfq_two(HypergeomSpec{{}, {}, alg, 3}, x, SpectralArgument::ones(3));
    CHECK(rel(r.value, std::exp(x.trace())) <= 1e-10);
    auto z = pfq_two(HypergeomSpec{{}, {}, alg, 3}, x, SpectralArgument::zeros(3));
    CHECK(z.value == 1.0);
    HypergeomSpec s{{0.8}, {2.3}, alg, 3};
    const double one = pfq(s, x).value;
    const double two = pfq_two(s, x, SpectralArgument::ones(3)).value;
    CHECK(rel(two, one) <= 1e-12);
  }
  CHECK_THROWS_AS(pfq_two(HypergeomSpec{{}, {}, kReal, 2}, {0.1, 0.2}, {0.1}), DomainError);
  CHECK_THROWS_AS(pfq_two(HypergeomSpec{{1.0}, {}, kReal, 2}, {0.9, 0.2}, {1.5, 0.1}),
                  DomainError);
}

TEST_CASE("m = 1 collapses to the classical scalar series") {
  struct Case {
    std::vector<double> a, b;
    double x;
  };
  const Case cases[] = {
      {{}, {}, 2.3},          {{1.3}, {}, -0.45},        {{0.5}, {1.7}, 3.1},
      {{2.2}, {0.6}, -2.4},   {{0.7, 1.3}, {2.4}, 0.55}, {{}, {1.5}, 4.0},
      {{1.1, 0.4}, {2.0, 3.5}, -6.0},
  };
  for (const auto& alg : kAll) {
    for (const auto& c : cases) {
      auto r = pfq(HypergeomSpec{c.a, c.b, alg, 1}, {c.x});
      CHECK(rel(r.value, scalar_pfq(c.a, c.b, c.x)) <= 1e-10);
    }
  }
}

TEST_CASE("partial sums are nondecreasing for positive data") {
  SpectralArgument x{0.8, 0.3};
  double prev = 0.0;
  for (int d = 0; d <= 20; ++d) {
    SeriesTruncation t;
    t.max_degree = d;
    t.adaptive = false;
    // Shifted parameters a - beta/2 = 1.2 and b - beta/2 = 2.7 stay positive.
    const double v = pfq(HypergeomSpec{{3.2}, {4.7}, kQuaternion, 2}, x, t).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("non-convergence is reported, not hidden") {
  SeriesTruncation t;
  t.max_degree = 5;
  t.adaptive = false;
  auto r = pfq(HypergeomSpec{{}, {}, kReal, 2}, {3.0, 2.0}, t);
  CHECK_FALSE(r.converged);
  CHECK(r.degrees_used == 5);
  CHECK(r.last_term_ratio > 0);
}

TEST_CASE("kummer_1f1") {
  auto [l0, r0] = kummer_1f1(1.3, 2.9, SpectralArgument::zeros(2), kReal);
  CHECK(l0.value == 1.0);
  CHECK(r0.value == 1.0);
  auto [l1, r1] = kummer_1f1(1.0, 2.0, {0.7}, kReal);
  CHECK(rel(l1.value, (std::exp(0.7) - 1) / 0.7) <= 1e-12);
  CHECK(rel(r1.value, l1.value) <= 1e-12);
  auto [l2, r2] = kummer_1f1(2.0, 5.0, {0.4, 0.1}, kQuaternion);
  CHECK(rel(l2.value, r2.value) <= 1e-8);
}

TEST_CASE("euler_2f1") {
  auto [a0, b0, c0] = euler_2f1(0.7, 1.3, 2.4, SpectralArgument::zeros(2), kReal);
  CHECK(a0.value == 1.0);
  CHECK(b0.value == 1.0);
  CHECK(c0.value == 1.0);
  // x = 0.5 maps to -1 for (er1): on the boundary, so only the direct sum.
  auto half = pfq(HypergeomSpec{{1.0, 1.0}, {2.0}, kReal, 1}, {0.5});
  CHECK(rel(half.value, 2 * std::log(2.0)) <= 1e-10);
  CHECK_THROWS_AS(euler_2f1(1, 1, 2, {0.5}, kReal), DomainError);
  auto [a1, b1, c1] = euler_2f1(1, 1, 2, {0.4}, kReal);
  CHECK(rel(a1.value, -std::log(0.6) / 0.4) <= 1e-10);
  CHECK(rel(b1.value, a1.value) <= 1e-10);
  CHECK(rel(c1.value, a1.value) <= 1e-10);
  auto [a2, b2, c2] = euler_2f1(0.7, 1.3, 2.4, {0.3, 0.1}, kReal);
  CHECK(rel(b2.value, a2.value) <= 1e-8);
  CHECK(rel(c2.value, a2.value) <= 1e-8);
  CHECK_THROWS_AS(euler_2f1(0.7, 1.3, 2.4, {1.2}, kReal), DomainError);
  CHECK_THROWS_AS(euler_2f1(0.7, 1.3, 2.4, {0.7}, kReal), DomainError);
}

TEST_CASE("truncated_pfq_restricted") {
  auto r0 = truncated_pfq_restricted(HypergeomSpec{{}, {}, kReal, 2}, {0.4, 0.2}, 0);
  CHECK(r0.value == 1.0);
  CHECK(r0.converged);
  const double t = 0.9;
  auto r2 = truncated_pfq_restricted(HypergeomSpec{{}, {}, kComplex, 1}, {t}, 2);
  CHECK(rel(r2.value, 1 + t + t * t / 2) <= 1e-15);
  int count = 0;
  for (int k = 0; k <= 4; ++k) count += static_cast<int>(enumerate_partitions(k, 2, 2).size());
  // [], [1], [2], [1,1], [2,1], [2,2]
  CHECK(count == 6);
  // Restricted and full sums agree once the cap exceeds every contributing part.
  auto full = pfq(HypergeomSpec{{-3.0}, {1.5}, kReal, 2}, {0.4, 0.2});
  auto cap = truncated_pfq_restricted(HypergeomSpec{{-3.0}, {1.5}, kReal, 2}, {0.4, 0.2}, 5);
  CHECK(cap.value == doctest::Approx(full.value).epsilon(1e-15));
}
