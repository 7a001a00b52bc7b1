#pragma once

// Division-algebra parameter and partition combinatorics.
//
// Every series in this library is indexed by integer partitions and carries
// the real dimension beta of the underlying algebra (R, C, H, O).  The Jack
// parameter is alpha = 2/beta; for the four admissible algebras 4*alpha is an
// integer, which lets hook lengths be carried exactly as integers in quarters.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jackdiv {

class DivisionAlgebra {
 public:
  // Throws DomainError unless beta is 1, 2, 4 or 8.
  explicit DivisionAlgebra(int beta);

  int beta() const { return beta_; }
  double alpha() const { return 2.0 / beta_; }
  // 4*alpha, exact: 8, 4, 2, 1.
  int alpha_quarters() const { return 8 / beta_; }
  // beta/2 as a double; appears in every shifted parameter a - (i-1)beta/2.
  double half_beta() const { return beta_ / 2.0; }

  const char* name() const;

  friend bool operator==(const DivisionAlgebra&, const DivisionAlgebra&) = default;

 private:
  int beta_;
};

inline const DivisionAlgebra kReal{1};
inline const DivisionAlgebra kComplex{2};
inline const DivisionAlgebra kQuaternion{4};
inline const DivisionAlgebra kOctonion{8};

// Weakly decreasing sequence of positive integers.  Trailing zeros are
// stripped on construction, so the empty partition has no parts.
class Partition {
 public:
  Partition() = default;
  // Throws DomainError if parts are negative or not weakly decreasing.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts)
      : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  // i is 0-based; returns 0 past the last part.
  int operator[](int i) const {
    return i < length() ? parts_[static_cast<std::size_t>(i)] : 0;
  }
  int first() const { return (*this)[0]; }
  // Smallest part among the first m rows (k_m in the usual notation).
  int part_at_row(int m) const { return (*this)[m - 1]; }

  std::string to_string() const;
  // Parses "[3,1]" / "[]" / "3,1".  Throws DomainError on malformed input.
  static Partition parse(std::string_view text);

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.parts_ == b.parts_;
  }
  // Lexicographic on parts; the enumeration order is the reverse of this.
  friend std::strong_ordering operator<=>(const Partition& a,
                                          const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

// All partitions of k with at most max_parts parts (and first part at most
// max_first_part when given), in reverse-lexicographic order: (4), (3,1),
// (2,2), ...
std::vector<Partition> enumerate_partitions(
    int k, int max_parts, std::optional<int> max_first_part = std::nullopt);

Partition conjugate(const Partition& p);

// Dominance order.  Throws DomainError when the weights differ.
bool dominance_leq(const Partition& tau, const Partition& kappa);

// Hook lengths at each cell (row-major), for a Jack parameter alpha:
//   upper(i,j) = leg + alpha*(arm + 1)
//   lower(i,j) = leg + 1 + alpha*arm
// with arm = k_i - j and leg = k'_j - i.  Stored as exact integers in units
// of 1/4.
struct HookData {
  std::vector<std::int64_t> upper_quarters;
  std::vector<std::int64_t> lower_quarters;
  // Product over cells of upper*lower.
  long double nu;

  double upper(std::size_t cell) const { return upper_quarters[cell] / 4.0; }
  double lower(std::size_t cell) const { return lower_quarters[cell] / 4.0; }
};

// Throws DomainError for the empty partition.
HookData hook_product(const Partition& p, const DivisionAlgebra& algebra);

// Hook lengths of a single cell (0-based row/col) in quarter units.
std::int64_t upper_hook_quarters(const Partition& p, const Partition& conj,
                                 int row, int col, int alpha_quarters);
std::int64_t lower_hook_quarters(const Partition& p, const Partition& conj,
                                 int row, int col, int alpha_quarters);

}  // namespace jackdiv
