#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <span>
#include <string_view>
#include <vector>

#include "nufactor/errors.hpp"

namespace nufactor {

struct EulerProductConfig {
  std::uint64_t prime_limit = 10'000'000;
  double tail_tolerance = 1e-4;
  unsigned max_newton_iterations = 100;
  double newton_tolerance = 1e-11;

  // Throws ParameterError unless 10^5 <= prime_limit <= kMaxEulerPrimeLimit
  // and both tolerances lie in (0, 1e-4].
  void validate() const;
};

inline constexpr std::uint64_t kMaxEulerPrimeLimit = std::uint64_t{1} << 28;

// Primes up to a truncation point P together with the data the tail
// corrections need. Shared process-wide per P.
class EulerContext {
 public:
  explicit EulerContext(std::uint64_t prime_limit);

  static std::shared_ptr<const EulerContext> get(std::uint64_t prime_limit);

  std::uint64_t prime_limit() const { return prime_limit_; }
  double log_limit() const { return log_limit_; }
  std::span<const double> primes() const { return primes_; }
  std::span<const double> log_primes() const { return log_primes_; }
  // pi(P) - R(P), R being Riemann's prime counting approximation.
  double riemann_discrepancy() const { return riemann_discrepancy_; }

 private:
  std::uint64_t prime_limit_;
  double log_limit_;
  std::vector<double> primes_;
  std::vector<double> log_primes_;
  double riemann_discrepancy_;
};

// Estimated sum_{p > P} p^{-a} for a > 1, P the context's prime limit.
double prime_zeta_tail(const EulerContext& ctx, double a);

// Riemann's R(x) through the Gram series.
double riemann_r(double x);

// A truncated Euler product in log space: value = partial + tail.
struct EulerLogValue {
  double value = 0;
  double partial = 0;
  double tail = 0;
  double error_estimate = 0;
  std::uint64_t prime_limit = 0;
};

// log G(z, s) = sum_p log(1 + z / (p^s - 1)). Primes above the truncation
// point are replaced by Riemann's prime density. The truncation doubles until
// the error estimate is below tail_tolerance * max(1, |log G|).
EulerLogValue big_g_detail(double z, double s, const EulerProductConfig& cfg);
double big_g(double z, double s, const EulerProductConfig& cfg);

// log H(s) = -log Gamma(s+1) + sum_p [log(1 + s/(p-1)) + s log(1 - 1/p)].
EulerLogValue euler_h_detail(double s, const EulerProductConfig& cfg);
double euler_h(double s, const EulerProductConfig& cfg);

// log G(r, a) + a log x - nu log r at the configured truncation (no
// adaptive enlargement), the quantity the saddle point minimises.
double saddle_objective(double r, double a, unsigned nu, double log_x,
                        const EulerProductConfig& cfg);

struct SaddlePoint {
  unsigned nu = 0;
  double log_x = 0;
  double rho = 0;
  double alpha = 0;
  // d/dr and d/da of the objective at (rho, alpha):
  //   residual_r = sum_p q/(1 + rho q) - nu/rho
  //   residual_a = log x - sum_p rho p^a log p (p^a - 1)^-2 / (1 + rho q)
  // with q = 1/(p^alpha - 1) and tail terms included.
  double residual_r = 0;
  double residual_a = 0;
  double objective = 0;
  unsigned iterations = 0;
  bool used_fallback = false;
  double tail_error = 0;
  EulerProductConfig truncation;
};

// Carries the last iterate when the solver gives up.
class SaddleConvergenceError : public ConvergenceError {
 public:
  SaddleConvergenceError(const std::string& what, SaddlePoint last)
      : ConvergenceError(what), last_(last) {}
  const SaddlePoint& last_iterate() const { return last_; }

 private:
  SaddlePoint last_;
};

// RangeError when the product of the first nu primes exceeds x.
SaddlePoint solve_saddle(unsigned nu, double log_x, const EulerProductConfig& cfg);

enum class DensityRegime { saddle, small_nu_series, landau, crude };

std::string_view to_string(DensityRegime regime);

struct DensityEstimate {
  unsigned nu = 0;
  double log_x = 0;
  double log_delta = 0;
  DensityRegime regime = DensityRegime::saddle;
  double error_scale = 1;  // min(1, 1/L_nu(x)); 1 when L <= 1
  double e_nu = 0;         // implied e_nu(x) of the crude form; NaN when undefined
  bool in_asymptotic_range = false;  // 1 <= nu <= log x / (log log x)^2
  double rho = 0;                    // saddle rho when one was solved, else 0
};

DensityEstimate density_ht(unsigned nu, double log_x, const EulerProductConfig& cfg);
DensityEstimate density_ht(const SaddlePoint& saddle);
DensityEstimate density_small_nu(unsigned nu, double log_x, const EulerProductConfig& cfg);
DensityEstimate density_small_nu(const SaddlePoint& saddle, const EulerProductConfig& cfg);
DensityEstimate density_landau(unsigned nu, double log_x);

// Term nu (gamma - log(1 + gamma)) of the small-nu series.
double small_nu_gamma_term(unsigned nu, double gamma);

struct CrudeBounds {
  double lower = 0;  // log of (e_minus L)^{nu-1} / ((nu-1)! log x)
  double upper = 0;
};

inline constexpr double kCrudeLower = 0.5;
inline constexpr double kCrudeUpper = 2.0;

CrudeBounds density_crude_bounds(unsigned nu, double log_x, double e_minus = kCrudeLower,
                                 double e_plus = kCrudeUpper);

// Predicted log(delta_nu(m x) / delta_nu(x)) from the homothety main term.
double density_homothety(unsigned nu, double log_x, std::uint64_t m);

struct HomothetyCheck {
  double predicted = 0;
  double direct = 0;  // density_ht at m x minus density_ht at x, log space
};

HomothetyCheck homothety_check(unsigned nu, double log_x, std::uint64_t m,
                               const EulerProductConfig& cfg);

struct HTParameters {
  double L = 0;
  double M = 0;
  double R = 0;
  double u = 0;
  double mu = 0;
  double w = 0;
  double gamma = 0;
};

inline constexpr double kHTConstantC = 1.0;

HTParameters ht_parameters(unsigned nu, double log_x, double rho);

// Large-nu form log(exp(nu (log M + 1/M)) / (nu! log x)) with C = 1 and the
// O(R) term dropped. Diagnostic only.
double large_nu_log_density(unsigned nu, double log_x, double rho);

}  // namespace nufactor
