#ifndef ATP_TRIGPOLY_HPP
#define ATP_TRIGPOLY_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace atp {

// A finitely supported real trigonometric polynomial sum_k c_k e(kx),
// stored as frequency -> coefficient. Real-valuedness (c_{-k} = conj(c_k))
// holds for everything constructed in this module.
class TrigPoly {
public:
  using Coeffs = std::map<int64_t, std::complex<double>>;

  TrigPoly() = default;
  explicit TrigPoly(Coeffs c) : c_(std::move(c)) { prune(); }

  static TrigPoly constant(double v);

  const Coeffs& coefficients() const { return c_; }
  std::complex<double> coefficient(int64_t k) const;
  int64_t degree() const;  // max |k| with c_k != 0

  // sum_k c_k e(kx); real part returned (imaginary part is fp noise for
  // real polynomials).
  double evaluate(double x) const;
  std::complex<double> evaluate_complex(double x) const;

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly operator*(const TrigPoly& o) const;  // coefficient convolution
  TrigPoly scaled(double s) const;
  TrigPoly shifted(double a) const;    // x -> x - a
  TrigPoly reflected() const;          // x -> -x
  TrigPoly dilated(int64_t m) const;   // x -> m x (frequencies scaled by m)

  bool is_real(double tol = 1e-12) const;

private:
  void prune(double tol = 1e-15);
  Coeffs c_;
};

// Fejer kernel Delta_K(x) = sum_{|k| <= K} (1 - |k|/K) e(kx)
//                        = (1/K)(sin(pi K x)/sin(pi x))^2, degree K-1.
TrigPoly fejer(uint64_t K);
double fejer_eval(uint64_t K, double x);  // closed form, O(1)

// Sawtooth s(x) = {x} - 1/2 off the integers, 0 on them.
double sawtooth(double x);

// Vaaler's degree-D approximation to the sawtooth,
// |V_D(x) - s(x)| <= Delta_{D+1}(x)/(2D+2).
TrigPoly vaaler(uint64_t D);

// Closed-form Fourier coefficient of V_D at frequency j (v_hat(-j) = -v_hat(j),
// purely imaginary): v_hat(j) = i*[ (1-j/K) cot(pi j/K)/(2K) + 1/(2 pi K) ],
// K = D+1, for 1 <= j <= D.
std::complex<double> vaaler_coefficient(uint64_t D, int64_t j);

// Selberg majorant of the interval {|x| <= eta} (mod 1):
// S^+(x) = 2 eta + V_D(x-eta) + V_D(-x-eta)
//          + (Delta_{D+1}(x-eta) + Delta_{D+1}(-x-eta))/(2D+2).
// Degree <= D+1, S^+ >= indicator, |S^+^(k)| <= 1/(D+1) + min(2 eta, 1/|k|).
TrigPoly selberg_majorant(uint64_t D, double eta);

// Closed-form Fourier coefficient of S^+_{D,eta} (real, even in k).
double selberg_coefficient(uint64_t D, double eta, int64_t k);

// Exact members of Bohr(Omega, eta) = {n in Z/NZ : ||xi n/N|| <= eta for all xi}.
std::vector<uint64_t> bohr_members(uint64_t N, const std::vector<uint64_t>& Omega,
                                   double eta);

// Smooth Bohr cutoff chi(n) = prod_{xi in Omega} S^+_{D,eta}(xi n / N) with
// D = ceil(4/eta)^{2|Omega|}. Holds a table of S^+(j/N) for j in [0, N).
//
// Evaluation route depends on the size of D:
//   Poly   - exact coefficient arithmetic (small D),
//   Folded - closed-form coefficients folded mod N (D up to fold_cap),
//   Limit  - D -> infinity sawtooth limit (the indicator of the closed Bohr
//            set with boundary value 1); per-point error <= N^2 2^{|Omega|}/D
//            recorded in eval_error_bound.
class BohrCutoff {
public:
  enum class Route { Poly, Folded, Limit };

  // d_override, if nonzero, replaces the paper's D (Lemma 3.1(ii)'s constant
  // then weakens to 2^{|Omega|}/(eta^2 D'^2); recorded in weakened_bound).
  BohrCutoff(uint64_t N, std::vector<uint64_t> Omega, double eta,
             uint64_t d_override = 0, uint64_t fold_cap = 60000000);

  uint64_t modulus() const { return N_; }
  const std::vector<uint64_t>& omega() const { return Omega_; }
  double eta() const { return eta_; }
  double log2_D() const { return log2_D_; }  // paper's D may overflow; log2 kept
  uint64_t effective_D() const { return D_used_; }  // 0 in the Limit route
  Route route() const { return route_; }
  double eval_error_bound() const { return eval_err_; }
  double off_bohr_bound() const;  // (eta^2/8)^{|Omega|} or weakened variant

  double evaluate(uint64_t n) const;
  const std::vector<double>& factor_table() const { return table_; }
  double l1_norm() const;  // E_n chi(n)

  std::vector<double> values() const;  // chi(n) for n in [0, N)

  // Fourier expansion of chi as a function on Z/NZ obtained by folding the
  // product of the factor polynomials; only available on the Poly route.
  std::map<uint64_t, std::complex<double>> product_spectrum() const;

private:
  uint64_t N_;
  std::vector<uint64_t> Omega_;
  double eta_;
  double log2_D_;
  uint64_t D_used_;
  Route route_;
  double eval_err_;
  bool overridden_;
  std::vector<double> table_;  // S^+(j/N), j in [0, N)
};

struct RationalApprox {
  int64_t a = 0;
  uint64_t q = 1;
  double beta = 0.0;  // alpha - a/q
};

// Continued-fraction Dirichlet approximation: (a, q) = 1, 1 <= q <= q_max,
// |alpha - a/q| <= 1/(q q_max).
RationalApprox dirichlet_approx(double alpha, uint64_t q_max);

// A linear combination of at most M exponential phases with |b_i| <= M
// (Fourier complexity at most M).
struct ExponentialCombination {
  struct Term {
    std::complex<double> b;
    double alpha;  // phase in R/Z
  };
  std::vector<Term> terms;
  uint64_t M = 1;

  bool valid() const;
  std::complex<double> evaluate(int64_t n) const;
};

struct SpectrumFactorization {
  struct Phase {
    double alpha = 0.0;
    int64_t a = 0;
    uint64_t q = 1;
    double beta = 0.0;        // alpha - W a/q
    bool divides_Q = false;   // q | Q
    double ratio = 0.0;       // q/(q, Q^2)
  };
  std::vector<Phase> phases;
  uint64_t Q = 1;
  int iterations = 0;
  double B = 0.0;             // A (3M)^M
  double log_N = 0.0;
  bool degenerate = false;    // (log N)^{100B} >= N: the stated ranges fail
  bool dichotomy_holds = false;
  double Q_bound = 0.0;       // (log N)^B, in log2 if huge
};

// Lemma-3.2-style factorization: each phase alpha_i = W a_i/q_i + beta_i with
// q_i <= N/(log N)^{100B}, and Q built by the fixed-point iteration
// Q_{i+1} = prod_{q in Qset, q/(q,Q_i^2) <= (log N)^A} q, so that for each i
// either q_i | Q or q_i/(q_i, Q^2) > (log N)^A. The scale enters only through
// log N (the non-degenerate regime needs N ~ e^2500 even for M = 1).
SpectrumFactorization spectrum_factorize(const std::vector<double>& phases,
                                         uint64_t W, double log_N, double A);

}  // namespace atp

#endif  // ATP_TRIGPOLY_HPP
