#pragma once

#include <cstdint>

namespace nufactor {

// Iterated logarithms of x given log x. log2 is log log x, log3 is
// log log log x (not base-2 logarithms).
double log2_of(double log_x);
double log3_of(double log_x);

// L_nu(x) = log(log x / (nu log(nu + 1))). May be <= 0 when nu is large
// relative to log x; callers decide whether that is an error.
double scale_L(double nu, double log_x);

// The HT validity bound, log x / (log log x)^a.
double script_L(double a, double log_x);

// log z*_v(c, x) = (log x / v) / (2 exp(L_v(x)^c)). Requires v >= 1 and
// L_v(x) > 0.
double log_z_star(unsigned v, double c, double log_x);

// ell_nu(x) = nu (log L)^2 / L. Requires L > 0.
double ell_nu(unsigned nu, double log_x);

// Structural parameters for the minorant constructions.
struct PaperParams {
  double log_x = 0;
  unsigned nu = 0;
  double a = 0;
  double L = 0;                   // L_nu(x)
  double lambda_plus_intro = 0;   // log x / sqrt(log3 x)
  double lambda_plus_sec5 = 0;    // log x / log3 x
  double tau = 0;                 // exp(lambda_plus_intro)
  double ell = 0;                 // ell_nu(x)
  double t = 0;                   // exp(log x / (ell log3 x)); +inf when ell == 0
  double script_la = 0;           // log x / (log2 x)^a
};

// Requires x >= 16, nu >= 1 and nu log(nu + 1) < log x (else RangeError).
PaperParams paper_params(std::uint64_t x, unsigned nu, double a);
PaperParams paper_params_log(double log_x, unsigned nu, double a);

}  // namespace nufactor
