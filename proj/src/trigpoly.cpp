// Beurling-Selberg machinery: Fejer kernel, Vaaler's sawtooth approximation,
// the Selberg majorant of an interval, and smooth Bohr cutoffs built from it.
//
// Coefficient conventions: f(x) = sum_k c_k e(kx) with e(t) = exp(2 pi i t).
// The Vaaler polynomial of degree D is
//   V_D(x) = (1/(D+1)) sum_{k=1}^{D} (k/(D+1) - 1/2) Delta_{D+1}(x - k/(D+1))
//            + sin(2 pi (D+1) x)/(2 pi (D+1))
//            - Delta_{D+1}(x) sin(2 pi x)/(2 pi),
// whose frequency-(D+1) parts cancel. Folding the explicit coefficients
//   v_hat(j) = i [ (1-j/K) cot(pi j/K) / (2K) + 1/(2 pi K) ],  K = D+1,
// and the Fejer coefficients through the majorant formula gives the real even
// sequence selberg_coefficient(); this is what makes the paper-sized
// D = ceil(4/eta)^{2|Omega|} tractable (O(D) folding instead of O(D) work
// per evaluation point).

#include "atp/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "atp/arith.hpp"

namespace atp {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

double frac(double x) { return x - std::floor(x); }

// distance to the nearest integer
double dist_to_z(double x) {
  double f = frac(x);
  return std::min(f, 1.0 - f);
}

}  // namespace

TrigPoly TrigPoly::constant(double v) {
  Coeffs c;
  if (v != 0.0) c[0] = v;
  return TrigPoly(std::move(c));
}

std::complex<double> TrigPoly::coefficient(int64_t k) const {
  auto it = c_.find(k);
  return it == c_.end() ? std::complex<double>(0.0) : it->second;
}

int64_t TrigPoly::degree() const {
  int64_t d = 0;
  for (const auto& [k, v] : c_) d = std::max(d, std::abs(k));
  return d;
}

double TrigPoly::evaluate(double x) const { return evaluate_complex(x).real(); }

std::complex<double> TrigPoly::evaluate_complex(double x) const {
  std::complex<double> s = 0.0;
  for (const auto& [k, v] : c_) {
    double ang = kTau * frac(static_cast<double>(k) * x);
    s += v * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  Coeffs c = c_;
  for (const auto& [k, v] : o.c_) c[k] += v;
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
  Coeffs c = c_;
  for (const auto& [k, v] : o.c_) c[k] -= v;
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
  Coeffs c;
  for (const auto& [k1, v1] : c_)
    for (const auto& [k2, v2] : o.c_) c[k1 + k2] += v1 * v2;
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::scaled(double s) const {
  Coeffs c = c_;
  for (auto& [k, v] : c) v *= s;
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::shifted(double a) const {
  Coeffs c;
  for (const auto& [k, v] : c_) {
    double ang = -kTau * frac(static_cast<double>(k) * a);
    c[k] = v * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::reflected() const {
  Coeffs c;
  for (const auto& [k, v] : c_) c[-k] = v;
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::dilated(int64_t m) const {
  Coeffs c;
  for (const auto& [k, v] : c_) c[k * m] += v;
  return TrigPoly(std::move(c));
}

bool TrigPoly::is_real(double tol) const {
  for (const auto& [k, v] : c_) {
    auto d = v - std::conj(coefficient(-k));
    if (std::abs(d) > tol) return false;
  }
  return true;
}

void TrigPoly::prune(double tol) {
  double maxmag = 0.0;
  for (const auto& [k, v] : c_) maxmag = std::max(maxmag, std::abs(v));
  for (auto it = c_.begin(); it != c_.end();) {
    if (std::abs(it->second) <= tol * maxmag)
      it = c_.erase(it);
    else
      ++it;
  }
}

TrigPoly fejer(uint64_t K) {
  if (K == 0) throw std::invalid_argument("fejer: K = 0");
  TrigPoly::Coeffs c;
  for (int64_t k = -(int64_t)K; k <= (int64_t)K; ++k) {
    double w = 1.0 - std::abs((double)k) / (double)K;
    if (w > 0) c[k] = w;
  }
  return TrigPoly(std::move(c));
}

double fejer_eval(uint64_t K, double x) {
  // both sines depend only on the distance d to the nearest integer:
  // sin^2(pi K x) = sin^2(pi K d) since K * round(x) is an integer
  double d = dist_to_z(x);
  if (d == 0.0) return static_cast<double>(K);
  double sd = std::sin(std::numbers::pi * d);
  double num = std::sin(std::numbers::pi * static_cast<double>(K) * d);
  return num * num / (static_cast<double>(K) * sd * sd);
}

double sawtooth(double x) {
  double f = frac(x);
  if (f == 0.0) return 0.0;
  return f - 0.5;
}

std::complex<double> vaaler_coefficient(uint64_t D, int64_t j) {
  int64_t aj = std::abs(j);
  if (j == 0 || aj > (int64_t)D) return 0.0;
  double K = static_cast<double>(D + 1);
  double t = std::numbers::pi * static_cast<double>(aj) / K;
  double w = (1.0 - static_cast<double>(aj) / K) * (std::cos(t) / std::sin(t)) / (2.0 * K) +
             1.0 / (kTau * K);
  return {0.0, j > 0 ? w : -w};
}

TrigPoly vaaler(uint64_t D) {
  if (D == 0) throw std::invalid_argument("vaaler: D = 0");
  TrigPoly::Coeffs c;
  for (int64_t j = 1; j <= (int64_t)D; ++j) {
    c[j] = vaaler_coefficient(D, j);
    c[-j] = vaaler_coefficient(D, -j);
  }
  return TrigPoly(std::move(c));
}

double selberg_coefficient(uint64_t D, double eta, int64_t k) {
  int64_t ak = std::abs(k);
  double K = static_cast<double>(D + 1);
  if (ak == 0) return 2.0 * eta + 1.0 / K;
  if (ak > (int64_t)D) return 0.0;
  double kd = static_cast<double>(ak);
  double w = vaaler_coefficient(D, ak).imag();
  // V_D(x-eta) + V_D(-x-eta) contributes 2 w(k) sin(2 pi k eta);
  // the Fejer pair contributes (1-k/K) cos(2 pi k eta)/K.
  return 2.0 * w * std::sin(kTau * kd * eta) +
         (1.0 - kd / K) * std::cos(kTau * kd * eta) / K;
}

TrigPoly selberg_majorant(uint64_t D, double eta) {
  if (D == 0) throw std::invalid_argument("selberg_majorant: D = 0");
  if (!(eta > 0.0 && eta <= 0.5))
    throw std::invalid_argument("selberg_majorant: eta outside (0, 1/2]");
  TrigPoly vd = vaaler(D);
  TrigPoly fj = fejer(D + 1);
  // x -> g(-x-eta) is g.shifted(eta).reflected()
  TrigPoly s = TrigPoly::constant(2.0 * eta) + vd.shifted(eta) +
               vd.shifted(eta).reflected() +
               (fj.shifted(eta) + fj.shifted(eta).reflected())
                   .scaled(1.0 / (2.0 * (double)(D + 1)));
  return s;
}

std::vector<uint64_t> bohr_members(uint64_t N, const std::vector<uint64_t>& Omega,
                                   double eta) {
  if (N == 0) throw std::invalid_argument("bohr_members: N = 0");
  std::vector<uint64_t> out;
  const double tol = 1e-12;
  for (uint64_t n = 0; n < N; ++n) {
    bool in = true;
    for (uint64_t xi : Omega) {
      double d = dist_to_z(static_cast<double>((__uint128_t)xi * n % N) /
                           static_cast<double>(N));
      if (d > eta + tol) {
        in = false;
        break;
      }
    }
    if (in) out.push_back(n);
  }
  return out;
}

namespace {

// x -> V_D(x-eta) + V_D(-x-eta) + Fejer pair, in the D -> infinity limit:
// the indicator of ||x|| <= eta, with value 1 on the boundary.
double selberg_limit_eval(double eta, double x) {
  auto t = [&](double y) {
    double f = frac(y);
    if (f < 1e-9 || f > 1.0 - 1e-9) return 0.5;  // sawtooth jump + Fejer peak
    return f - 0.5;
  };
  return 2.0 * eta + t(x - eta) + t(-x - eta);
}

}  // namespace

BohrCutoff::BohrCutoff(uint64_t N, std::vector<uint64_t> Omega, double eta,
                       uint64_t d_override, uint64_t fold_cap)
    : N_(N), Omega_(std::move(Omega)), eta_(eta) {
  if (N_ == 0) throw std::invalid_argument("BohrCutoff: N = 0");
  if (!(eta_ > 0.0 && eta_ <= 0.5))
    throw std::invalid_argument("BohrCutoff: eta outside (0, 1/2]");
  for (auto& xi : Omega_) xi %= N_;

  double base = std::ceil(4.0 / eta_);
  log2_D_ = 2.0 * static_cast<double>(Omega_.size()) * std::log2(base);
  overridden_ = d_override != 0;

  uint64_t D = 0;
  if (overridden_) {
    if (log2_D_ < 62 &&
        static_cast<double>(d_override) > std::exp2(log2_D_) + 0.5)
      throw std::invalid_argument("BohrCutoff: override exceeds the paper's D");
    D = d_override;
  } else if (log2_D_ < 62) {
    D = 1;
    uint64_t b = static_cast<uint64_t>(base);
    for (size_t i = 0; i < 2 * Omega_.size(); ++i) D *= b;
  }

  if (Omega_.empty()) {
    route_ = Route::Poly;
    D_used_ = 0;
    eval_err_ = 0.0;
    table_.assign(N_, 1.0);
    return;
  }

  // an explicit override is always honored (the caller owns the cost)
  if (D != 0 && (overridden_ || D <= fold_cap)) {
    route_ = D <= 4096 ? Route::Poly : Route::Folded;
    D_used_ = D;
    eval_err_ = 1e-12 * static_cast<double>(D);  // fp accumulation, generous
    // fold closed-form coefficients mod N, then evaluate at all j/N
    std::vector<double> folded(N_, 0.0);
    folded[0] = selberg_coefficient(D, eta_, 0);
    for (uint64_t k = 1; k <= D; ++k) {
      double ck = selberg_coefficient(D, eta_, static_cast<int64_t>(k));
      folded[k % N_] += ck;
      folded[(N_ - k % N_) % N_] += ck;
    }
    table_.assign(N_, 0.0);
    // cosine table: folded is even (folded[N-r] accumulates the -k side), so
    // S(j/N) = sum_r folded[r] cos(2 pi r j / N) picks the real part exactly
    std::vector<double> cos_tab(N_), sin_tab(N_);
    for (uint64_t m = 0; m < N_; ++m) {
      double ang = kTau * static_cast<double>(m) / static_cast<double>(N_);
      cos_tab[m] = std::cos(ang);
      sin_tab[m] = std::sin(ang);
    }
    for (uint64_t j = 0; j < N_; ++j) {
      double acc = 0.0;
      uint64_t idx = 0;
      for (uint64_t r = 0; r < N_; ++r) {
        acc += folded[r] * cos_tab[idx];
        idx += j;
        if (idx >= N_) idx -= N_;
      }
      table_[j] = acc;
    }
  } else {
    route_ = Route::Limit;
    D_used_ = 0;
    double dd = log2_D_ < 1023 ? std::exp2(log2_D_) : 1e300;
    eval_err_ = static_cast<double>(N_) * static_cast<double>(N_) / dd;
    table_.assign(N_, 0.0);
    for (uint64_t j = 0; j < N_; ++j)
      table_[j] =
          selberg_limit_eval(eta_, static_cast<double>(j) / static_cast<double>(N_));
  }
  // clamp tiny negative fp noise: S^+ >= 0
  for (double& v : table_) v = std::max(v, 0.0);
}

double BohrCutoff::off_bohr_bound() const {
  size_t m = Omega_.size();
  if (!overridden_)
    return std::pow(eta_ * eta_ / 8.0, static_cast<double>(m));
  double d = static_cast<double>(D_used_);
  return std::exp2(static_cast<double>(m)) / (eta_ * eta_ * d * d);
}

double BohrCutoff::evaluate(uint64_t n) const {
  double prod = 1.0;
  for (uint64_t xi : Omega_) {
    prod *= table_[(__uint128_t)xi * n % N_];
    if (prod == 0.0) break;
  }
  return prod;
}

double BohrCutoff::l1_norm() const {
  double s = 0.0;
  for (uint64_t n = 0; n < N_; ++n) s += evaluate(n);
  return s / static_cast<double>(N_);
}

std::vector<double> BohrCutoff::values() const {
  std::vector<double> v(N_);
  for (uint64_t n = 0; n < N_; ++n) v[n] = evaluate(n);
  return v;
}

std::map<uint64_t, std::complex<double>> BohrCutoff::product_spectrum() const {
  if (route_ != Route::Poly)
    throw std::logic_error("product_spectrum: only available on the Poly route");
  // iteratively convolve the per-factor spectra, frequencies taken mod N
  std::map<uint64_t, std::complex<double>> acc;
  acc[0] = 1.0;
  for (uint64_t xi : Omega_) {
    std::map<uint64_t, std::complex<double>> next;
    for (const auto& [f, c] : acc) {
      for (int64_t k = -(int64_t)D_used_ - 1; k <= (int64_t)D_used_ + 1; ++k) {
        double ck = selberg_coefficient(D_used_, eta_, k);
        if (ck == 0.0) continue;
        // frequency f + k*xi mod N
        int64_t kx = static_cast<int64_t>((__int128)k * (int64_t)xi %
                                          (int64_t)N_);
        int64_t nf = ((int64_t)f + kx) % (int64_t)N_;
        if (nf < 0) nf += N_;
        next[static_cast<uint64_t>(nf)] += c * ck;
      }
    }
    acc = std::move(next);
  }
  return acc;
}

RationalApprox dirichlet_approx(double alpha, uint64_t q_max) {
  if (q_max == 0) throw std::invalid_argument("dirichlet_approx: q_max = 0");
  double a0 = std::floor(alpha);
  double x = alpha - a0;  // in [0, 1)
  // continued fraction of x; convergents p/q with q <= q_max
  int64_t p_prev = 1, p_cur = 0;  // p_{-1}, p_0
  uint64_t q_prev = 0, q_cur = 1;
  double xi = x;
  for (int iter = 0; iter < 64; ++iter) {
    if (xi < 1e-15) break;  // current convergent is (numerically) exact
    double inv = 1.0 / xi;
    double fl = std::floor(inv);
    if (fl >= 9e18) break;
    uint64_t a = static_cast<uint64_t>(fl);
    // next convergent
    if (a != 0 && q_cur > (UINT64_MAX - q_prev) / a) break;
    uint64_t q_next = a * q_cur + q_prev;
    int64_t p_next = static_cast<int64_t>(a) * p_cur + p_prev;
    if (q_next > q_max) break;
    p_prev = p_cur;
    p_cur = p_next;
    q_prev = q_cur;
    q_cur = q_next;
    xi = inv - fl;
  }
  RationalApprox out;
  out.q = q_cur;
  out.a = p_cur + static_cast<int64_t>(a0) * static_cast<int64_t>(q_cur);
  out.beta = alpha - static_cast<double>(out.a) / static_cast<double>(out.q);
  return out;
}

bool ExponentialCombination::valid() const {
  if (terms.size() > M) return false;
  for (const auto& t : terms)
    if (std::abs(t.b) > static_cast<double>(M) + 1e-12) return false;
  return true;
}

std::complex<double> ExponentialCombination::evaluate(int64_t n) const {
  std::complex<double> s = 0.0;
  for (const auto& t : terms) {
    double ang = kTau * frac(t.alpha * static_cast<double>(n));
    s += t.b * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

SpectrumFactorization spectrum_factorize(const std::vector<double>& phases,
                                         uint64_t W, double log_N, double A) {
  if (W == 0) throw std::invalid_argument("spectrum_factorize: W = 0");
  if (log_N <= 1.0) throw std::invalid_argument("spectrum_factorize: log N <= 1");
  SpectrumFactorization out;
  out.log_N = log_N;
  const double M = static_cast<double>(std::max<size_t>(phases.size(), 1));
  out.B = A * std::pow(3.0 * M, M);
  const double loglogN = std::log(log_N);

  // q_max = N / (log N)^{100B}; work in logs, clamp to the u64 range
  double log_qmax = log_N - 100.0 * out.B * loglogN;
  out.degenerate = log_qmax <= 0.0;
  uint64_t q_max = 1;
  if (!out.degenerate)
    q_max = log_qmax > 43.0 ? (uint64_t(1) << 62)
                            : static_cast<uint64_t>(std::exp(log_qmax));

  double logT = A * loglogN;  // threshold (log N)^A, in natural log
  double T = logT > 43.0 ? 9e18 : std::exp(logT);

  for (double alpha : phases) {
    SpectrumFactorization::Phase ph;
    ph.alpha = alpha;
    RationalApprox r = dirichlet_approx(alpha / static_cast<double>(W), q_max);
    ph.a = r.a;
    ph.q = r.q;
    ph.beta = static_cast<double>(W) * r.beta;
    out.phases.push_back(ph);
  }

  // fixed point of Q_{i+1} = prod_{q in Qset, q/(q, Q_i^2) <= T} q over the
  // distinct q_i (monotone, stabilizes within M steps)
  std::vector<uint64_t> qset;
  for (const auto& ph : out.phases) qset.push_back(ph.q);
  std::sort(qset.begin(), qset.end());
  qset.erase(std::unique(qset.begin(), qset.end()), qset.end());

  auto gcd_q_Q2 = [](uint64_t q, uint64_t Q) {
    // gcd(q, Q^2) without forming Q^2: g * gcd(q/g, Q) with g = gcd(q, Q)
    uint64_t g = gcd_u64(q, Q);
    return g * gcd_u64(q / g, Q);
  };

  uint64_t Q = 1;
  int iters = 0;
  for (size_t it = 0; it <= qset.size() + 1; ++it) {
    __uint128_t next = 1;
    bool overflow = false;
    for (uint64_t q : qset) {
      double ratio = static_cast<double>(q) / static_cast<double>(gcd_q_Q2(q, Q));
      if (ratio <= T) {
        next *= q;
        if (next > (__uint128_t)UINT64_MAX) {
          overflow = true;
          break;
        }
      }
    }
    if (overflow) {
      out.degenerate = true;
      break;
    }
    ++iters;
    if (static_cast<uint64_t>(next) == Q) break;
    Q = static_cast<uint64_t>(next);
  }
  out.Q = Q;
  out.iterations = iters;
  out.Q_bound = out.B * loglogN;  // log (log N)^B

  out.dichotomy_holds = true;
  for (auto& ph : out.phases) {
    ph.divides_Q = Q % ph.q == 0;
    ph.ratio = static_cast<double>(ph.q) /
               static_cast<double>(gcd_q_Q2(ph.q, Q));
    if (!ph.divides_Q && !(ph.ratio > T)) out.dichotomy_holds = false;
  }
  return out;
}

}  // namespace atp
