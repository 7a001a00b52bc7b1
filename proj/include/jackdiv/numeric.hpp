#pragma once

// Small numeric helpers shared by the series and sampling code.

#include <cmath>
#include <cstdint>
#include <limits>

namespace jackdiv {

// Neumaier (improved Kahan) compensated summation.
template <typename T>
class NeumaierSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }
  void merge(const NeumaierSum& other) {
    add(other.sum_);
    add(other.comp_);
  }

 private:
  T sum_ = 0;
  T comp_ = 0;
};

// True when x is within tol of an integer.
inline bool near_integer(double x, double tol = 1e-12) {
  return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

// log(exp(a) + exp(b)) without overflow.
inline long double log_add_exp(long double a, long double b) {
  if (a == -std::numeric_limits<long double>::infinity()) return b;
  if (b == -std::numeric_limits<long double>::infinity()) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

}  // namespace jackdiv
