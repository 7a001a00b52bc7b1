#include "jackdiv/core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "jackdiv/errors.hpp"

namespace jackdiv {

DivisionAlgebra::DivisionAlgebra(int beta) : beta_(beta) {
  if (beta != 1 && beta != 2 && beta != 4 && beta != 8) {
    throw DomainError("beta must be one of 1, 2, 4, 8 (got " +
                      std::to_string(beta) + ")");
  }
}

const char* DivisionAlgebra::name() const {
  switch (beta_) {
    case 1: return "real";
    case 2: return "complex";
    case 4: return "quaternion";
    default: return "octonion";
  }
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw DomainError("partition parts must be nonnegative");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw DomainError("partition parts must be weakly decreasing");
    }
    weight_ += parts_[i];
  }
}

std::string Partition::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  out += ']';
  return out;
}

Partition Partition::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && (text.front() == '[' || text.front() == '(')) {
    if (text.back() != (text.front() == '[' ? ']' : ')')) throw DomainError("unterminated partition: " + std::string(text));
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<int> parts;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto field = trim(text.substr(0, comma));
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw DomainError("bad partition part '" + std::string(field) + "'");
    }
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Partition(std::move(parts));
}

namespace {

void enumerate_rec(int remaining, int max_part, int parts_left,
                   std::vector<int>& prefix, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (parts_left == 0) return;
  // Largest first gives reverse-lexicographic order.
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    // The remaining parts_left-1 rows can absorb at most part*(parts_left-1).
    if (static_cast<long>(part) * parts_left < remaining) break;
    prefix.push_back(part);
    enumerate_rec(remaining - part, part, parts_left - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int k, int max_parts,
                                            std::optional<int> max_first_part) {
  if (k < 0) throw DomainError("partition weight must be nonnegative");
  if (max_parts < 1) throw DomainError("max_parts must be at least 1");
  std::vector<Partition> out;
  std::vector<int> prefix;
  int cap = max_first_part ? *max_first_part : k;
  if (cap < 0) cap = 0;
  enumerate_rec(k, cap, max_parts, prefix, out);
  return out;
}

Partition conjugate(const Partition& p) {
  std::vector<int> conj(static_cast<std::size_t>(p.first()), 0);
  for (int part : p.parts()) {
    for (int j = 0; j < part; ++j) ++conj[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(conj));
}

bool dominance_leq(const Partition& tau, const Partition& kappa) {
  if (tau.weight() != kappa.weight()) {
    throw DomainError("dominance order needs partitions of equal weight (" +
                      tau.to_string() + " vs " + kappa.to_string() + ")");
  }
  int st = 0, sk = 0;
  int rows = std::max(tau.length(), kappa.length());
  for (int i = 0; i < rows; ++i) {
    st += tau[i];
    sk += kappa[i];
    if (st > sk) return false;
  }
  return true;
}

std::int64_t upper_hook_quarters(const Partition& p, const Partition& conj,
                                 int row, int col, int alpha_quarters) {
  const std::int64_t arm = p[row] - col - 1;
  const std::int64_t leg = conj[col] - row - 1;
  return 4 * leg + alpha_quarters * (arm + 1);
}

std::int64_t lower_hook_quarters(const Partition& p, const Partition& conj,
                                 int row, int col, int alpha_quarters) {
  const std::int64_t arm = p[row] - col - 1;
  const std::int64_t leg = conj[col] - row - 1;
  return 4 * (leg + 1) + alpha_quarters * arm;
}

HookData hook_product(const Partition& p, const DivisionAlgebra& algebra) {
  if (p.empty()) throw DomainError("hook product of the empty partition is undefined");
  const Partition conj = conjugate(p);
  const int aq = algebra.alpha_quarters();
  HookData data;
  data.nu = 1.0L;
  for (int i = 0; i < p.length(); ++i) {
    for (int j = 0; j < p[i]; ++j) {
      auto up = upper_hook_quarters(p, conj, i, j, aq);
      auto lo = lower_hook_quarters(p, conj, i, j, aq);
      data.upper_quarters.push_back(up);
      data.lower_quarters.push_back(lo);
      data.nu *= static_cast<long double>(up) * static_cast<long double>(lo) / 16.0L;
    }
  }
  return data;
}

}  // namespace jackdiv
