#ifndef ATP_PRIMES_HPP
#define ATP_PRIMES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace atp {

// Primality over a half-open window [lo, hi), bit-indexed, built by a
// segmented sieve of Eratosthenes. Immutable after construction.
class PrimeTable {
public:
  PrimeTable(uint64_t lo, uint64_t hi, std::vector<uint64_t> bits);

  uint64_t lo() const { return lo_; }
  uint64_t hi() const { return hi_; }

  bool contains(uint64_t n) const {
    if (n < lo_ || n >= hi_) return false;
    uint64_t off = n - lo_;
    return (bits_[off >> 6] >> (off & 63)) & 1;
  }

  uint64_t count() const;
  uint64_t count_below(uint64_t x) const;  // primes in [lo, min(x, hi))
  std::vector<uint64_t> primes() const;
  std::vector<uint64_t> primes_in(uint64_t a, uint64_t b) const;  // [a, b)

private:
  uint64_t lo_, hi_;
  std::vector<uint64_t> bits_;  // bit i <=> lo + i prime
};

// Exact primes in [lo, hi). lo < 2 is clamped to 2. Throws std::invalid_argument
// on hi <= lo and std::overflow_error when the segment bookkeeping would
// overflow 64-bit arithmetic.
PrimeTable sieve_range(uint64_t lo, uint64_t hi);

// Largest n accepted by factorize(); trial division by sieved primes up to
// sqrt(n) stays exact and deterministic below this.
inline constexpr uint64_t kFactorizeBound = uint64_t(1) << 52;

// Prime factorization with multiplicity, ascending. Throws on n < 2 or
// n > kFactorizeBound.
std::vector<uint64_t> factorize(uint64_t n);

// true iff Omega(n) <= 2 and every prime factor of n is >= rough.
bool is_P2(uint64_t n, uint64_t rough);

// Constraint on the primes the Goldbach-type scans quantify over.
struct ConstraintSpec {
  enum class Kind { Unrestricted, Chen, Cluster };
  Kind kind = Kind::Unrestricted;
  uint64_t m = 1;      // cluster: at least m primes in [p, p+H]
  uint64_t H = 2;      // cluster window length
  uint64_t rough = 2;  // chen: all prime factors of p+2 must be >= rough

  static ConstraintSpec unrestricted() { return {}; }
  static ConstraintSpec chen(uint64_t rough = 2) {
    return {Kind::Chen, 1, 2, rough};
  }
  static ConstraintSpec cluster(uint64_t m, uint64_t H) {
    return {Kind::Cluster, m, H, 2};
  }

  bool satisfied_by(uint64_t p, const PrimeTable& table) const;
  std::string describe() const;
};

// Primes p in [qlo, qhi) satisfying spec. The table must cover
// [qlo, qhi + H + 2) so the predicate is decidable at the right edge;
// throws std::out_of_range otherwise.
std::vector<uint64_t> constrained_primes(const PrimeTable& table,
                                         const ConstraintSpec& spec,
                                         uint64_t qlo, uint64_t qhi);

// Convenience overload over the table's full range (minus the margin).
std::vector<uint64_t> constrained_primes(const PrimeTable& table,
                                         const ConstraintSpec& spec);

}  // namespace atp

#endif  // ATP_PRIMES_HPP
