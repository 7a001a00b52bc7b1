#pragma once

// Jack polynomials J_kappa and C_kappa evaluated on eigenvalue spectra.
//
// Evaluation uses the per-variable recurrence
//
//   J_kappa(x_1..x_n) = sum_mu J_mu(x_1..x_{n-1}) x_n^{|kappa|-|mu|} b(kappa,mu)
//
// over partitions mu such that kappa/mu is a horizontal strip.  b(kappa,mu)
// is a ratio of hook lengths: at a cell in column j the lower hook is used
// when the column lengths of kappa and mu differ there, the upper hook
// otherwise.  Hooks are exact (quarter-integers); products are formed in
// long double, which also carries the range needed at high degree.

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "jackdiv/core.hpp"

namespace jackdiv {

// Eigenvalues standing in for a Hermitian matrix argument.  Stored sorted in
// descending order so that every evaluation sees the same accumulation order.
class SpectralArgument {
 public:
  // Throws DomainError on empty input or non-finite entries.
  explicit SpectralArgument(std::vector<double> eigenvalues);
  SpectralArgument(std::initializer_list<double> eigenvalues)
      : SpectralArgument(std::vector<double>(eigenvalues)) {}

  static SpectralArgument ones(int m);
  static SpectralArgument zeros(int m);

  const std::vector<double>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double trace() const;
  // max |lambda_i|
  double norm() const;
  SpectralArgument scaled(double c) const;

 private:
  std::vector<double> values_;
};

// Location of a partition inside a JackTable: its degree and its position in
// the reverse-lexicographic list of that degree.
struct PartitionIndex {
  int degree = 0;
  int pos = 0;
  friend bool operator==(const PartitionIndex&, const PartitionIndex&) = default;
};

// Memoized recurrence data for all partitions with at most max_parts rows,
// grown one degree at a time.  Degrees already built never change, and
// growth is serialized internally, so a table can be shared across threads.
class JackTable {
 public:
  static constexpr int kMaxDegree = 600;

  struct Strip {
    PartitionIndex mu;
    int mu_length = 0;
    long double coeff = 0.0L;
  };

  JackTable(DivisionAlgebra algebra, int max_parts);
  JackTable(const JackTable&) = delete;
  JackTable& operator=(const JackTable&) = delete;

  // Process-wide table for (algebra, max_parts).
  static std::shared_ptr<const JackTable> shared(const DivisionAlgebra& algebra,
                                                 int max_parts);

  const DivisionAlgebra& algebra() const { return algebra_; }
  int max_parts() const { return max_parts_; }

  // Builds all degrees up to k.  Throws DomainError beyond kMaxDegree.
  void ensure_degree(int k) const;
  int built_degree() const { return built_.load(std::memory_order_acquire); }

  // The accessors below require ensure_degree(degree) to have returned.
  int count(int degree) const;
  const Partition& partition(PartitionIndex idx) const;
  std::span<const Strip> strips(PartitionIndex idx) const;
  // alpha^k k! / nu_kappa: converts J_kappa into C_kappa.
  long double j_to_c(PartitionIndex idx) const;
  // J_kappa(1,...,1) with max_parts ones.
  long double j_at_identity(PartitionIndex idx) const;
  // Returns nullopt when the partition has more than max_parts rows.
  std::optional<PartitionIndex> find(const Partition& p) const;

 private:
  struct Entry {
    Partition partition;
    std::size_t strip_begin = 0;
    std::size_t strip_end = 0;
    long double j_to_c = 1.0L;
    long double j_at_identity = 1.0L;
  };
  struct DegreeBlock {
    std::vector<Entry> entries;
    std::vector<Strip> strips;
    std::map<std::vector<int>, int> lookup;
  };

  void build_degree(int k) const;

  DivisionAlgebra algebra_;
  int max_parts_;
  mutable std::mutex grow_mutex_;
  // Sized to kMaxDegree+1 up front.  Block k is written once, under
  // grow_mutex_, before built_ is raised to k.
  mutable std::vector<DegreeBlock> blocks_;
  mutable std::atomic<int> built_{-1};
};

// Evaluates J_kappa(x) for every partition in a table, degree by degree.
// Reusable: reset() with a new spectrum keeps the allocations.
class JackEvaluator {
 public:
  // first_part_cap restricts evaluation to partitions with k_1 <= cap; the
  // set is closed under the recurrence, so those values are still exact.
  explicit JackEvaluator(std::shared_ptr<const JackTable> table,
                         std::optional<int> first_part_cap = std::nullopt);

  // x.size() must not exceed the table's max_parts.
  void reset(const SpectralArgument& x);
  // Makes values of all degrees <= k available.
  void advance_to(int k);
  int degree() const { return degree_; }

  // J_kappa(x); zero for partitions longer than x.size() or above the cap.
  long double j_value(PartitionIndex idx) const;
  long double c_value(PartitionIndex idx) const {
    return j_value(idx) * table_->j_to_c(idx);
  }
  const JackTable& table() const { return *table_; }
  bool included(PartitionIndex idx) const;

 private:
  std::shared_ptr<const JackTable> table_;
  std::optional<int> cap_;
  std::vector<double> x_;
  int n_vars_ = 0;
  int degree_ = -1;
  // values_[level][degree][pos], level = number of variables used.
  std::vector<std::vector<std::vector<long double>>> values_;
  std::vector<std::vector<long double>> powers_;
};

// J_kappa^(beta)(x).  Zero when l(kappa) > x.size().
double jack_J(const Partition& p, const SpectralArgument& x,
              const DivisionAlgebra& algebra);

// C_kappa^beta(x) = alpha^k k! / nu_kappa * J_kappa(x); partitions of k sum to
// (tr x)^k.
double jack_C(const Partition& p, const SpectralArgument& x,
              const DivisionAlgebra& algebra);

// C_kappa^beta(I_m) from the closed form of J_kappa(1,...,1).
double jack_C_at_identity(const Partition& p, int m,
                          const DivisionAlgebra& algebra);
long double jack_C_at_identity_ld(const Partition& p, int m,
                                  const DivisionAlgebra& algebra);

}  // namespace jackdiv
