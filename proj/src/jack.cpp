#include "jackdiv/jack.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "jackdiv/errors.hpp"
#include "jackdiv/numeric.hpp"

namespace jackdiv {

SpectralArgument::SpectralArgument(std::vector<double> eigenvalues)
    : values_(std::move(eigenvalues)) {
  if (values_.empty()) throw DomainError("spectral argument needs at least one eigenvalue");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("eigenvalues must be finite");
  }
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

SpectralArgument SpectralArgument::ones(int m) {
  return SpectralArgument(std::vector<double>(static_cast<std::size_t>(m), 1.0));
}

SpectralArgument SpectralArgument::zeros(int m) {
  return SpectralArgument(std::vector<double>(static_cast<std::size_t>(m), 0.0));
}

double SpectralArgument::trace() const {
  NeumaierSum<double> s;
  for (double v : values_) s.add(v);
  return s.value();
}

double SpectralArgument::norm() const {
  double n = 0.0;
  for (double v : values_) n = std::max(n, std::abs(v));
  return n;
}

SpectralArgument SpectralArgument::scaled(double c) const {
  std::vector<double> v = values_;
  for (double& e : v) e *= c;
  return SpectralArgument(std::move(v));
}

// ---------------------------------------------------------------------------

JackTable::JackTable(DivisionAlgebra algebra, int max_parts)
    : algebra_(algebra), max_parts_(max_parts) {
  if (max_parts < 1) throw DomainError("JackTable needs max_parts >= 1");
  blocks_.resize(kMaxDegree + 1);
}

std::shared_ptr<const JackTable> JackTable::shared(const DivisionAlgebra& algebra,
                                                   int max_parts) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JackTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[{algebra.beta(), max_parts}];
  if (!slot) slot = std::make_shared<const JackTable>(algebra, max_parts);
  return slot;
}

void JackTable::ensure_degree(int k) const {
  if (k <= built_.load(std::memory_order_acquire)) return;
  if (k > kMaxDegree) {
    throw DomainError("series degree " + std::to_string(k) +
                      " exceeds the supported maximum " + std::to_string(kMaxDegree));
  }
  std::lock_guard lock(grow_mutex_);
  for (int d = built_.load(std::memory_order_relaxed) + 1; d <= k; ++d) {
    build_degree(d);
    built_.store(d, std::memory_order_release);
  }
}

namespace {

// Product over the cells of `cells` of the hook selected by comparing the
// column lengths of kappa and mu.
long double strip_hook_product(const Partition& cells, const Partition& cells_conj,
                               const Partition& kappa_conj, const Partition& mu_conj,
                               int aq) {
  long double prod = 1.0L;
  for (int i = 0; i < cells.length(); ++i) {
    for (int j = 0; j < cells[i]; ++j) {
      const bool same_column = kappa_conj[j] == mu_conj[j];
      const auto h = same_column ? upper_hook_quarters(cells, cells_conj, i, j, aq)
                                 : lower_hook_quarters(cells, cells_conj, i, j, aq);
      prod *= static_cast<long double>(h) / 4.0L;
    }
  }
  return prod;
}

// Only predecessors with at most max_rows parts are produced: the recurrence
// at n variables reads J_mu on n-1 of them.
void enumerate_strip_predecessors(const Partition& kappa, int row, int max_rows,
                                  std::vector<int>& mu,
                                  std::vector<Partition>& out) {
  if (row == kappa.length()) {
    out.emplace_back(mu);
    return;
  }
  // kappa_{i+1} <= mu_i <= kappa_i
  const int hi = row >= max_rows ? 0 : kappa[row];
  for (int v = hi; v >= kappa[row + 1]; --v) {
    mu[static_cast<std::size_t>(row)] = v;
    enumerate_strip_predecessors(kappa, row + 1, max_rows, mu, out);
  }
}

}  // namespace

void JackTable::build_degree(int k) const {
  DegreeBlock& block = blocks_[static_cast<std::size_t>(k)];
  const int aq = algebra_.alpha_quarters();
  const long double alpha = static_cast<long double>(aq) / 4.0L;
  const auto parts = enumerate_partitions(k, max_parts_);
  long double factorial = 1.0L;
  for (int i = 2; i <= k; ++i) factorial *= i;
  long double alpha_k = std::pow(alpha, static_cast<long double>(k));

  block.entries.reserve(parts.size());
  for (std::size_t pos = 0; pos < parts.size(); ++pos) {
    const Partition& kappa = parts[pos];
    Entry entry;
    entry.partition = kappa;
    block.lookup.emplace(kappa.parts(), static_cast<int>(pos));

    if (!kappa.empty()) {
      entry.j_to_c = alpha_k * factorial / hook_product(kappa, algebra_).nu;
    }
    long double ident = 1.0L;
    for (int i = 0; i < kappa.length(); ++i) {
      for (int j = 0; j < kappa[i]; ++j) {
        ident *= static_cast<long double>(max_parts_ - i) + alpha * j;
      }
    }
    entry.j_at_identity = ident;

    entry.strip_begin = block.strips.size();
    if (!kappa.empty()) {
      const Partition kconj = conjugate(kappa);
      std::vector<int> mu_parts(static_cast<std::size_t>(kappa.length()), 0);
      std::vector<Partition> preds;
      enumerate_strip_predecessors(kappa, 0, max_parts_ - 1, mu_parts, preds);
      for (const Partition& mu : preds) {
        const Partition mconj = conjugate(mu);
        // Numerator walks kappa's cells, denominator mu's; both compare the
        // same pair of column lengths.
        const long double num = strip_hook_product(kappa, kconj, kconj, mconj, aq);
        const long double den = strip_hook_product(mu, mconj, kconj, mconj, aq);
        Strip s;
        s.mu.degree = mu.weight();
        s.mu_length = mu.length();
        if (s.mu.degree == k) {
          s.mu.pos = static_cast<int>(pos);
        } else {
          const auto& lower_block = blocks_[static_cast<std::size_t>(s.mu.degree)];
          s.mu.pos = lower_block.lookup.at(mu.parts());
        }
        s.coeff = num / den;
        block.strips.push_back(s);
      }
    }
    entry.strip_end = block.strips.size();
    block.entries.push_back(std::move(entry));
  }
}

int JackTable::count(int degree) const {
  return static_cast<int>(blocks_[static_cast<std::size_t>(degree)].entries.size());
}

const Partition& JackTable::partition(PartitionIndex idx) const {
  return blocks_[static_cast<std::size_t>(idx.degree)]
      .entries[static_cast<std::size_t>(idx.pos)]
      .partition;
}

std::span<const JackTable::Strip> JackTable::strips(PartitionIndex idx) const {
  const auto& block = blocks_[static_cast<std::size_t>(idx.degree)];
  const auto& e = block.entries[static_cast<std::size_t>(idx.pos)];
  return std::span<const Strip>(block.strips.data() + e.strip_begin,
                                e.strip_end - e.strip_begin);
}

long double JackTable::j_to_c(PartitionIndex idx) const {
  return blocks_[static_cast<std::size_t>(idx.degree)]
      .entries[static_cast<std::size_t>(idx.pos)]
      .j_to_c;
}

long double JackTable::j_at_identity(PartitionIndex idx) const {
  return blocks_[static_cast<std::size_t>(idx.degree)]
      .entries[static_cast<std::size_t>(idx.pos)]
      .j_at_identity;
}

std::optional<PartitionIndex> JackTable::find(const Partition& p) const {
  if (p.length() > max_parts_) return std::nullopt;
  ensure_degree(p.weight());
  const auto& block = blocks_[static_cast<std::size_t>(p.weight())];
  auto it = block.lookup.find(p.parts());
  if (it == block.lookup.end()) return std::nullopt;
  return PartitionIndex{p.weight(), it->second};
}

// ---------------------------------------------------------------------------

JackEvaluator::JackEvaluator(std::shared_ptr<const JackTable> table,
                             std::optional<int> first_part_cap)
    : table_(std::move(table)), cap_(first_part_cap) {}

void JackEvaluator::reset(const SpectralArgument& x) {
  if (x.size() > table_->max_parts()) {
    throw DomainError("spectral argument has more eigenvalues than the Jack table rows");
  }
  x_ = x.values();
  n_vars_ = x.size();
  degree_ = -1;
  values_.resize(static_cast<std::size_t>(n_vars_ + 1));
  for (auto& level : values_) level.clear();
  powers_.assign(static_cast<std::size_t>(n_vars_), {1.0L});
}

bool JackEvaluator::included(PartitionIndex idx) const {
  const Partition& p = table_->partition(idx);
  if (p.length() > n_vars_) return false;
  return !cap_ || p.first() <= *cap_;
}

void JackEvaluator::advance_to(int k) {
  if (k <= degree_) return;
  table_->ensure_degree(k);
  for (int d = degree_ + 1; d <= k; ++d) {
    for (int n = 0; n < n_vars_; ++n) {
      auto& pw = powers_[static_cast<std::size_t>(n)];
      while (static_cast<int>(pw.size()) <= d) {
        pw.push_back(pw.back() * static_cast<long double>(x_[static_cast<std::size_t>(n)]));
      }
    }
    const int cnt = table_->count(d);
    // With no variables only J_empty = 1 survives.
    values_[0].emplace_back(static_cast<std::size_t>(cnt), d == 0 ? 1.0L : 0.0L);
    for (int level = 1; level <= n_vars_; ++level) {
      auto& out = values_[static_cast<std::size_t>(level)];
      out.emplace_back(static_cast<std::size_t>(cnt), 0.0L);
      auto& row = out.back();
      const auto& prev = values_[static_cast<std::size_t>(level - 1)];
      const auto& pw = powers_[static_cast<std::size_t>(level - 1)];
      for (int pos = 0; pos < cnt; ++pos) {
        const PartitionIndex idx{d, pos};
        const Partition& kappa = table_->partition(idx);
        if (kappa.length() > level) continue;
        if (cap_ && kappa.first() > *cap_) continue;
        if (d == 0) {
          row[0] = 1.0L;
          continue;
        }
        NeumaierSum<long double> acc;
        for (const auto& s : table_->strips(idx)) {
          if (s.mu_length > level - 1) continue;
          const long double jm =
              prev[static_cast<std::size_t>(s.mu.degree)][static_cast<std::size_t>(s.mu.pos)];
          if (jm == 0.0L) continue;
          acc.add(jm * pw[static_cast<std::size_t>(d - s.mu.degree)] * s.coeff);
        }
        row[static_cast<std::size_t>(pos)] = acc.value();
      }
    }
  }
  degree_ = k;
}

long double JackEvaluator::j_value(PartitionIndex idx) const {
  return values_[static_cast<std::size_t>(n_vars_)][static_cast<std::size_t>(idx.degree)]
                [static_cast<std::size_t>(idx.pos)];
}

// ---------------------------------------------------------------------------

namespace {

long double evaluate_single(const Partition& p, const SpectralArgument& x,
                            const DivisionAlgebra& algebra, bool normalized) {
  if (p.length() > x.size()) return 0.0L;
  auto table = JackTable::shared(algebra, x.size());
  auto idx = table->find(p);
  JackEvaluator ev(table, p.first());
  ev.reset(x);
  ev.advance_to(p.weight());
  return normalized ? ev.c_value(*idx) : ev.j_value(*idx);
}

}  // namespace

double jack_J(const Partition& p, const SpectralArgument& x,
              const DivisionAlgebra& algebra) {
  return static_cast<double>(evaluate_single(p, x, algebra, false));
}

double jack_C(const Partition& p, const SpectralArgument& x,
              const DivisionAlgebra& algebra) {
  return static_cast<double>(evaluate_single(p, x, algebra, true));
}

long double jack_C_at_identity_ld(const Partition& p, int m,
                                  const DivisionAlgebra& algebra) {
  if (m < 1) throw DomainError("jack_C_at_identity needs m >= 1");
  if (p.length() > m) return 0.0L;
  if (p.empty()) return 1.0L;
  const long double alpha = static_cast<long double>(algebra.alpha_quarters()) / 4.0L;
  // J(1^m) = prod over cells of (m - i + alpha*j), 0-based (i,j).
  long double j_one = 1.0L;
  for (int i = 0; i < p.length(); ++i) {
    for (int j = 0; j < p[i]; ++j) j_one *= static_cast<long double>(m - i) + alpha * j;
  }
  long double factorial = 1.0L;
  for (int i = 2; i <= p.weight(); ++i) factorial *= i;
  const long double alpha_k = std::pow(alpha, static_cast<long double>(p.weight()));
  return alpha_k * factorial / hook_product(p, algebra).nu * j_one;
}

double jack_C_at_identity(const Partition& p, int m, const DivisionAlgebra& algebra) {
  return static_cast<double>(jack_C_at_identity_ld(p, m, algebra));
}

}  // namespace jackdiv
