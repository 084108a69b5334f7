#include "nufactor/params.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nufactor/errors.hpp"

namespace nufactor {

double log2_of(double log_x) { return std::log(log_x); }

double log3_of(double log_x) { return std::log(std::log(log_x)); }

double scale_L(double nu, double log_x) {
  return std::log(log_x / (nu * std::log(nu + 1.0)));
}

double script_L(double a, double log_x) { return log_x / std::pow(log2_of(log_x), a); }

double log_z_star(unsigned v, double c, double log_x) {
  if (v == 0) throw DomainError("z* is undefined for v = 0");
  const double L = scale_L(v, log_x);
  if (!(L > 0)) throw RangeError("L_v(x) <= 0 for v = " + std::to_string(v));
  return (log_x / v) / (2.0 * std::exp(std::pow(L, c)));
}

double ell_nu(unsigned nu, double log_x) {
  const double L = scale_L(nu, log_x);
  if (!(L > 0)) throw RangeError("L_nu(x) <= 0 for nu = " + std::to_string(nu));
  const double lL = std::log(L);
  return nu * lL * lL / L;
}

PaperParams paper_params_log(double log_x, unsigned nu, double a) {
  if (!(log_x >= std::log(16.0))) throw PreconditionError("paper parameters need x >= 16");
  if (nu < 1) throw PreconditionError("paper parameters need nu >= 1");
  if (nu * std::log(nu + 1.0) >= log_x) {
    throw RangeError("nu log(nu+1) >= log x: L_nu(x) is not positive");
  }
  PaperParams p;
  p.log_x = log_x;
  p.nu = nu;
  p.a = a;
  p.L = scale_L(nu, log_x);
  const double l3 = log3_of(log_x);
  p.lambda_plus_intro = log_x / std::sqrt(l3);
  p.lambda_plus_sec5 = log_x / l3;
  p.tau = std::exp(p.lambda_plus_intro);
  p.ell = ell_nu(nu, log_x);
  p.t = p.ell > 0 ? std::exp(log_x / (p.ell * l3)) : std::numeric_limits<double>::infinity();
  p.script_la = script_L(a, log_x);
  return p;
}

PaperParams paper_params(std::uint64_t x, unsigned nu, double a) {
  if (x < 16) throw PreconditionError("paper parameters need x >= 16");
  return paper_params_log(std::log(static_cast<double>(x)), nu, a);
}

}  // namespace nufactor
