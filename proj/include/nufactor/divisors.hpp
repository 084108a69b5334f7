#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "nufactor/density.hpp"
#include "nufactor/sieve.hpp"

namespace nufactor {

// C(n, r) exactly; OverflowError when it does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

// tau_k(n) = prod_{p^e || n} C(e + k - 1, k - 1). OverflowError past 2^64.
std::uint64_t tau_k(std::span<const PrimePower> factors, unsigned k);
std::uint64_t tau_k(std::uint64_t n, unsigned k, const PrimeTable& table);
std::uint64_t tau_k(std::uint64_t n, unsigned k);

enum class CapMode { omega, big_omega, none };

std::string_view to_string(CapMode mode);
CapMode cap_mode_from_string(std::string_view name);

struct DivisorBoundConfig {
  double B = 10.0;
  double gamma = 6.0;
  double epsilon = 0.1;
};

struct DivisorSumReport {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  unsigned k = 0;
  double cap = 0;
  CapMode cap_mode = CapMode::none;
  std::uint64_t terms = 0;  // integers passing the cap
  double total = 0;
  bool exact = true;           // exact_total holds the sum without rounding
  std::uint64_t exact_total = 0;
  double log_total = 0;
  // log of y (log Bk)^{11k} (log x)^{2+k}
  double paper_bound = 0;
  // log of y (log k)^{11k} exp(((gamma + eps)/(gamma - 1)) k L_k(x)); NaN when L_k(x) <= 0
  double sharp_bound = 0;
  bool within_bound = false;   // log_total <= paper_bound
  bool sharp_within = false;
  double log_ratio = 0;        // log_total - paper_bound
};

// Sum of tau_k(n) over n in (x, x+y] with omega(n) (or Omega(n)) <= cap.
// Requires k >= 1 and cap >= 0.
DivisorSumReport short_divisor_sum(std::uint64_t x, std::uint64_t y, unsigned k, CapMode mode,
                                   double cap, const PrimeTable& table,
                                   const DivisorBoundConfig& cfg = {},
                                   const SieveOptions& options = {});
// cap = log x / (log log x)^a.
DivisorSumReport short_divisor_sum_a(std::uint64_t x, std::uint64_t y, unsigned k, double a,
                                     CapMode mode, const PrimeTable& table,
                                     const DivisorBoundConfig& cfg = {},
                                     const SieveOptions& options = {});

// D(x + y) - D(x) with D(t) = t log t + (2 gamma_E - 1) t.
double dirichlet_short_mean(std::uint64_t x, std::uint64_t y);

struct SquareHarmonicValue {
  double log_value = 0;
  double partial = 0;
  double tail = 0;
  double error_estimate = 0;
  std::uint64_t prime_limit = 0;
};

// log of sum_m tau_k(m^2)/m^2 = log prod_p A_k(p). Requires k >= 2.
SquareHarmonicValue square_harmonic_detail(unsigned k, const EulerProductConfig& cfg);
double square_harmonic(unsigned k, const EulerProductConfig& cfg);

// log A_k(p), A_k(p) = sum_{j >= 0} C(2j + k - 1, k - 1) p^{-2j}.
double square_harmonic_local(unsigned k, double p);

// sum_{m <= M} tau_k(m^2) / m^2 by sieving.
double square_harmonic_partial(unsigned k, std::uint64_t M, const SieveOptions& options = {});

}  // namespace nufactor
