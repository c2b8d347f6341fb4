#include "atp/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "atp/primes.hpp"

namespace atp {

uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

uint64_t euler_phi(uint64_t n) {
  uint64_t result = n;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((__uint128_t)a * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Miller-Rabin with a base set proven deterministic for n < 3.3e24.
bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

LinearFormSystem::LinearFormSystem(std::vector<LinearForm> forms)
    : forms_(std::move(forms)) {
  if (forms_.empty()) throw std::invalid_argument("LinearFormSystem: empty");
  for (const auto& f : forms_)
    if (f.a < 1) throw std::invalid_argument("LinearFormSystem: a_i < 1");
  for (size_t i = 0; i < forms_.size(); ++i)
    for (size_t j = i + 1; j < forms_.size(); ++j)
      if (forms_[i].a == forms_[j].a && forms_[i].b == forms_[j].b)
        throw std::invalid_argument("LinearFormSystem: duplicate form");
}

uint64_t LinearFormSystem::local_root_count(uint64_t p) const {
  if (!is_prime_u64(p)) throw std::invalid_argument("local_root_count: p not prime");
  uint64_t count = 0;
  const int64_t pi = static_cast<int64_t>(p);
  for (int64_t n = 0; n < pi; ++n) {
    for (const auto& f : forms_) {
      __int128 v = ((__int128)(f.a % pi) * n + f.b % pi) % pi;
      if (v < 0) v += pi;
      if (v == 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

bool LinearFormSystem::is_admissible() const {
  // Only p <= k can be fully covered when p divides no a_i (k residues cover
  // Z/pZ only if p <= k); a prime p | a_i blocks everything iff p | b_i too.
  // Scanning all p up to k*max a_i + max|b_i| is a conservative superset.
  int64_t max_a = 0, max_b = 0;
  for (const auto& f : forms_) {
    max_a = std::max(max_a, f.a);
    max_b = std::max(max_b, std::llabs(f.b));
  }
  uint64_t bound = static_cast<uint64_t>(k()) * max_a + max_b + 1;
  for (uint64_t p = 2; p <= bound; ++p) {
    if (!is_prime_u64(p)) continue;
    if (local_root_count(p) == p) return false;
  }
  return true;
}

SingularSeries singular_series(const LinearFormSystem& sys, uint64_t p_cutoff) {
  SingularSeries out;
  out.p_cutoff = p_cutoff;
  int64_t max_a = 0;
  for (const auto& f : sys.forms()) max_a = std::max(max_a, f.a);
  if (p_cutoff < sys.k() + static_cast<uint64_t>(max_a))
    throw std::invalid_argument("singular_series: p_cutoff < k + max a_i");
  out.admissible = sys.is_admissible();
  if (!out.admissible) return out;  // vanishing local factor

  const size_t k = sys.k();
  // Primes where the root count can differ from k: p <= k, p | a_i, or
  // p | (a_i b_j - a_j b_i) for some i < j.
  std::vector<uint64_t> special;
  for (uint64_t p = 2; p <= k + 1; ++p)
    if (is_prime_u64(p)) special.push_back(p);
  auto add_factors = [&](uint64_t n) {
    if (n < 2) return;
    for (uint64_t f : factorize(n)) special.push_back(f);
  };
  const auto& fs = sys.forms();
  for (size_t i = 0; i < fs.size(); ++i) {
    add_factors(static_cast<uint64_t>(fs[i].a));
    for (size_t j = i + 1; j < fs.size(); ++j) {
      int64_t d = fs[i].a * fs[j].b - fs[j].a * fs[i].b;
      add_factors(static_cast<uint64_t>(std::llabs(d)));
    }
  }
  std::sort(special.begin(), special.end());
  special.erase(std::unique(special.begin(), special.end()), special.end());

  double log_val = 0.0;
  for (uint64_t p : special) {
    if (p > p_cutoff) continue;
    double rho = static_cast<double>(sys.local_root_count(p));
    double pd = static_cast<double>(p);
    log_val += std::log(1.0 - rho / pd) - double(k) * std::log(1.0 - 1.0 / pd);
  }
  // Generic primes have exactly k roots; stream them in fixed order.
  PrimeTable table = sieve_range(2, p_cutoff + 1);
  double dk = static_cast<double>(k);
  uint64_t lo = table.lo();
  for (uint64_t p = lo; p <= p_cutoff; ++p) {
    if (!table.contains(p)) continue;
    if (std::binary_search(special.begin(), special.end(), p)) continue;
    double pd = static_cast<double>(p);
    log_val += std::log1p(-dk / pd) - dk * std::log1p(-1.0 / pd);
  }
  out.value = std::exp(log_val);
  // |log factor| <= 2k^2/p^2 for p >= 2k; sum over p > cutoff < 2k^2/cutoff.
  double tail_log = 2.0 * dk * dk / static_cast<double>(p_cutoff);
  out.tail_bound = out.value * (std::exp(tail_log) - 1.0);
  return out;
}

RamanujanSum ramanujan_mod_sum(int64_t a, uint64_t q,
                               const std::vector<int64_t>& poly) {
  if (q == 0) throw std::invalid_argument("ramanujan_mod_sum: q = 0");
  uint64_t a_mod = static_cast<uint64_t>(((a % (int64_t)q) + (int64_t)q) % (int64_t)q);
  if (gcd_u64(a_mod == 0 ? q : a_mod, q) != 1 && q != 1)
    throw std::invalid_argument("ramanujan_mod_sum: (a, q) > 1");

  auto poly_mod = [&](uint64_t n) {
    // Horner in unsigned arithmetic mod q
    uint64_t acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
      int64_t c = *it % (int64_t)q;
      if (c < 0) c += (int64_t)q;
      acc = (mulmod(acc, n, q) + (uint64_t)c) % q;
    }
    return acc;
  };

  RamanujanSum out;
  double re = 0.0, im = 0.0;
  const double tau = 2.0 * std::numbers::pi;
  for (uint64_t n = 0; n < q; ++n) {
    uint64_t pn = poly_mod(n);
    if (pn == 0) ++out.rho;
    uint64_t g = gcd_u64(pn == 0 ? q : pn, q);
    if (g == 1 || q == 1) {
      double ang = tau * static_cast<double>(mulmod(a_mod, n, q)) / static_cast<double>(q);
      re += std::cos(ang);
      im += std::sin(ang);
    }
  }
  out.sum = {re, im};
  return out;
}

WTrick w_trick(uint64_t w, uint64_t N_prime, int count, bool twin_coprime) {
  if (count != 1 && count != 3)
    throw std::invalid_argument("w_trick: count must be 1 or 3");
  WTrick out;
  // W = primorial of w, overflow-checked
  uint64_t W = 1;
  for (uint64_t p = 2; p <= w; ++p) {
    if (!is_prime_u64(p)) continue;
    if (W > UINT64_MAX / p) throw std::overflow_error("w_trick: W overflows");
    W *= p;
  }
  out.W = W;

  auto valid = [&](uint64_t b) {
    if (gcd_u64(b % W == 0 ? W : b % W, W) != 1) return false;
    if (twin_coprime && gcd_u64((b + 2) % W == 0 ? W : (b + 2) % W, W) != 1)
      return false;
    return true;
  };
  std::vector<uint64_t> cands;  // ascending, in [1, W]
  for (uint64_t b = 1; b <= W; ++b)
    if (valid(b)) cands.push_back(b);
  if (cands.empty()) return out;

  uint64_t target = N_prime % W;
  if (count == 1) {
    uint64_t b = target == 0 ? W : target;
    if (valid(b)) {
      out.residues = {b};
      out.found = true;
    }
    return out;
  }
  for (uint64_t b1 : cands) {
    for (uint64_t b2 : cands) {
      // b3 in [1, W] congruent to target - b1 - b2
      uint64_t need = ((target + 2 * W) - (b1 + b2) % W) % W;
      uint64_t b3 = need == 0 ? W : need;
      if (valid(b3)) {
        out.residues = {b1, b2, b3};
        out.found = true;
        return out;
      }
    }
  }
  return out;
}

}  // namespace atp
