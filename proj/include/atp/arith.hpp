#ifndef ATP_ARITH_HPP
#define ATP_ARITH_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace atp {

// L(n) = a*n + b with a >= 1.
struct LinearForm {
  int64_t a = 1;
  int64_t b = 0;
};

// An ordered tuple of distinct linear forms L_i(n) = a_i n + b_i.
// Admissible when the product L_1(n)...L_k(n) has no fixed prime divisor.
class LinearFormSystem {
public:
  explicit LinearFormSystem(std::vector<LinearForm> forms);

  const std::vector<LinearForm>& forms() const { return forms_; }
  size_t k() const { return forms_.size(); }

  // |{n mod p : p | L_1(n)...L_k(n)}| by residue scan. Throws if p not prime.
  uint64_t local_root_count(uint64_t p) const;

  bool is_admissible() const;

private:
  std::vector<LinearForm> forms_;
};

struct SingularSeries {
  double value = 0.0;       // truncated Euler product
  double tail_bound = 0.0;  // rigorous bound on |full - truncated|
  bool admissible = false;
  uint64_t p_cutoff = 0;
};

// Truncated singular series prod_p (1 - rho(p)/p)(1 - 1/p)^{-k} over p <= cutoff,
// with a tail bound 2k^2/cutoff in log scale. Non-admissible input yields
// value 0 with admissible=false.
SingularSeries singular_series(const LinearFormSystem& forms, uint64_t p_cutoff);

struct RamanujanSum {
  std::complex<double> sum;  // sum over n mod q with (P(n),q)=1 of e(an/q)
  uint64_t rho = 0;          // #{k mod q : P(k) == 0 mod q}
};

// Exact (to ~1e-9 q in double) restricted exponential sum of Lemma-7.3 type.
// poly holds coefficients c_0 + c_1 n + ... of an integer polynomial.
// Requires (a, q) = 1.
RamanujanSum ramanujan_mod_sum(int64_t a, uint64_t q,
                               const std::vector<int64_t>& poly);

struct WTrick {
  uint64_t W = 1;
  std::vector<uint64_t> residues;  // b_j in [1, W], coprime to W
  bool found = false;
};

// W = prod_{p <= w} p and the smallest-lexicographic residues b_1..b_count
// with (b_j, W) = 1 (and (b_j + 2, W) = 1 when twin_coprime) summing to
// N' mod W. found=false when no residue tuple exists.
WTrick w_trick(uint64_t w, uint64_t N_prime, int count, bool twin_coprime);

uint64_t gcd_u64(uint64_t a, uint64_t b);
uint64_t euler_phi(uint64_t n);
bool is_prime_u64(uint64_t n);  // deterministic for all 64-bit n

}  // namespace atp

#endif  // ATP_ARITH_HPP
