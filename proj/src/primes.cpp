#include "atp/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace atp {

namespace {

// Simple sieve of the odd numbers up to limit, returns all primes <= limit.
std::vector<uint64_t> small_primes(uint64_t limit) {
  std::vector<uint64_t> ps;
  if (limit < 2) return ps;
  ps.push_back(2);
  std::vector<uint8_t> comp((limit + 1) / 2, 0);  // comp[i] <=> 2i+1 composite
  for (uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
    if (comp[i]) continue;
    uint64_t p = 2 * i + 1;
    ps.push_back(p);
    if (p <= limit / p)
      for (uint64_t j = (p * p) / 2; 2 * j + 1 <= limit; j += p) comp[j] = 1;
  }
  return ps;
}

// Cache of base primes for factorize(); grows on demand.
std::vector<uint64_t>& factor_base(uint64_t need_sqrt) {
  static std::vector<uint64_t> base;
  static uint64_t covered = 0;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (need_sqrt > covered) {
    uint64_t target = std::max<uint64_t>(need_sqrt + 16, 1 << 16);
    base = small_primes(target);
    covered = target;
  }
  return base;
}

constexpr uint64_t kSegment = uint64_t(1) << 21;

}  // namespace

PrimeTable::PrimeTable(uint64_t lo, uint64_t hi, std::vector<uint64_t> bits)
    : lo_(lo), hi_(hi), bits_(std::move(bits)) {}

uint64_t PrimeTable::count() const {
  uint64_t c = 0;
  for (uint64_t w : bits_) c += std::popcount(w);
  return c;
}

uint64_t PrimeTable::count_below(uint64_t x) const {
  uint64_t c = 0;
  uint64_t end = std::min(x, hi_);
  for (uint64_t n = lo_; n < end; ++n) c += contains(n);
  return c;
}

std::vector<uint64_t> PrimeTable::primes() const { return primes_in(lo_, hi_); }

std::vector<uint64_t> PrimeTable::primes_in(uint64_t a, uint64_t b) const {
  std::vector<uint64_t> out;
  a = std::max(a, lo_);
  b = std::min(b, hi_);
  for (uint64_t n = a; n < b; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

PrimeTable sieve_range(uint64_t lo, uint64_t hi) {
  if (hi <= lo) throw std::invalid_argument("sieve_range: hi <= lo");
  if (hi > (uint64_t(1) << 62))
    throw std::overflow_error("sieve_range: range end too large");
  uint64_t eff_lo = std::max<uint64_t>(lo, 2);
  if (eff_lo >= hi) throw std::invalid_argument("sieve_range: empty range");

  uint64_t span = hi - eff_lo;
  std::vector<uint64_t> bits((span + 63) / 64, ~uint64_t(0));
  auto clear_bit = [&](uint64_t off) { bits[off >> 6] &= ~(uint64_t(1) << (off & 63)); };
  // mask tail bits beyond span
  if (span % 64) bits.back() = (uint64_t(1) << (span % 64)) - 1;

  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi)));
  while (root * root > hi) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;
  std::vector<uint64_t> base = small_primes(root);

  for (uint64_t seg_lo = eff_lo; seg_lo < hi; seg_lo += kSegment) {
    uint64_t seg_hi = std::min(seg_lo + kSegment, hi);
    for (uint64_t p : base) {
      if (p * p >= seg_hi) break;
      uint64_t start = std::max(p * p, ((seg_lo + p - 1) / p) * p);
      for (uint64_t n = start; n < seg_hi; n += p) clear_bit(n - eff_lo);
    }
  }
  return PrimeTable(eff_lo, hi, std::move(bits));
}

std::vector<uint64_t> factorize(uint64_t n) {
  if (n < 2) throw std::invalid_argument("factorize: n < 2");
  if (n > kFactorizeBound) throw std::out_of_range("factorize: n above bound");
  std::vector<uint64_t> out;
  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(n))) + 2;
  const auto& base = factor_base(root);
  uint64_t rest = n;
  for (uint64_t p : base) {
    if (p * p > rest) break;
    while (rest % p == 0) {
      out.push_back(p);
      rest /= p;
    }
  }
  if (rest > 1) out.push_back(rest);
  return out;
}

bool is_P2(uint64_t n, uint64_t rough) {
  if (n < 2) return false;
  auto fs = factorize(n);
  if (fs.size() > 2) return false;
  for (uint64_t p : fs)
    if (p < rough) return false;
  return true;
}

bool ConstraintSpec::satisfied_by(uint64_t p, const PrimeTable& table) const {
  switch (kind) {
    case Kind::Unrestricted:
      return true;
    case Kind::Chen:
      return is_P2(p + 2, rough);
    case Kind::Cluster: {
      if (m <= 1) return true;  // p itself lies in [p, p+H]
      uint64_t found = 0;
      for (uint64_t q = p; q <= p + H; ++q) {
        if (table.contains(q) && ++found >= m) return true;
      }
      return false;
    }
  }
  return false;
}

std::string ConstraintSpec::describe() const {
  switch (kind) {
    case Kind::Unrestricted:
      return "none";
    case Kind::Chen:
      return "chen(rough=" + std::to_string(rough) + ")";
    case Kind::Cluster:
      return "cluster(m=" + std::to_string(m) + ",H=" + std::to_string(H) + ")";
  }
  return "?";
}

std::vector<uint64_t> constrained_primes(const PrimeTable& table,
                                         const ConstraintSpec& spec,
                                         uint64_t qlo, uint64_t qhi) {
  uint64_t margin = 0;
  if (spec.kind == ConstraintSpec::Kind::Cluster) margin = spec.H + 1;
  // chen needs p+2 factorized, independent of the table
  if (spec.kind == ConstraintSpec::Kind::Cluster && qhi + margin > table.hi())
    throw std::out_of_range(
        "constrained_primes: table too short to decide the predicate at the "
        "right edge (needs [lo, hi+H+2))");
  std::vector<uint64_t> out;
  for (uint64_t p : table.primes_in(qlo, qhi))
    if (spec.satisfied_by(p, table)) out.push_back(p);
  return out;
}

std::vector<uint64_t> constrained_primes(const PrimeTable& table,
                                         const ConstraintSpec& spec) {
  uint64_t margin =
      spec.kind == ConstraintSpec::Kind::Cluster ? spec.H + 1 : 0;
  uint64_t qhi = table.hi() > margin ? table.hi() - margin : table.lo();
  return constrained_primes(table, spec, table.lo(), qhi);
}

}  // namespace atp
