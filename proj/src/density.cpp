#include "nufactor/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "nufactor/params.hpp"
#include "nufactor/sieve.hpp"
#include "nufactor/summation.hpp"

namespace nufactor {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double expint_e1(double b) { return -std::expint(-b); }

// log of the product of the first k primes.
double log_primorial(unsigned k) {
  double sum = 0;
  std::uint64_t n = 1;
  for (unsigned found = 0; found < k;) {
    ++n;
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) {
      sum += std::log(static_cast<double>(n));
      ++found;
    }
  }
  return sum;
}

double log_phi(double t) { return std::lgamma(t) - t * std::log(t) + t; }

// Estimated sum_{p > P} p^{-a} and its first two a-derivatives, using
// Riemann's density 1/log t - t^{-1/2}/(2 log t) beyond P and the exact
// prime count at P.
struct PrimeTail {
  double value = 0;
  double d1 = 0;
  double d2 = 0;
};

PrimeTail prime_power_tail(const EulerContext& ctx, double a) {
  const double lP = ctx.log_limit();
  const double delta = ctx.riemann_discrepancy();
  const double c1 = a - 1.0;
  const double ch = a - 0.5;
  const double w1 = std::exp(-c1 * lP);  // P^{1-a}
  const double wh = std::exp(-ch * lP);  // P^{1/2-a}
  const double w0 = std::exp(-a * lP);   // P^{-a}
  PrimeTail t;
  t.value = expint_e1(c1 * lP) - 0.5 * expint_e1(ch * lP) - delta * w0;
  t.d1 = -w1 / c1 + 0.5 * wh / ch + delta * lP * w0;
  t.d2 = w1 * (lP / c1 + 1.0 / (c1 * c1)) - 0.5 * wh * (lP / ch + 1.0 / (ch * ch)) -
         delta * lP * lP * w0;
  return t;
}

// Size of what the tail model leaves out for log(1 + z/(p^s - 1)): the
// residual prime-count discrepancy beyond P and the second-order term.
double g_tail_error(const EulerContext& ctx, double z, double s) {
  const double lP = ctx.log_limit();
  return z * std::fabs(ctx.riemann_discrepancy()) * std::exp(-s * lP) +
         (z + 0.5 * z * z) * expint_e1((2.0 * s - 1.0) * lP);
}

std::uint64_t next_limit(std::uint64_t limit) {
  if (limit >= kMaxEulerPrimeLimit) return 0;
  return std::min(limit * 2, kMaxEulerPrimeLimit);
}

struct SaddleEval {
  double f = 0;
  double fr = 0;
  double fa = 0;
  double frr = 0;
  double fra = 0;
  double faa = 0;
  double log_g = 0;
};

// Objective F(r, a) = log G(r, a) + a log x - nu log r with derivatives.
SaddleEval evaluate(const EulerContext& ctx, double r, double a, unsigned nu, double log_x) {
  CompensatedSum g, gr, ga, grr, gra, gaa;
  const auto lps = ctx.log_primes();
  for (double lp : lps) {
    const double e = std::exp(-a * lp);
    const double q = e / -std::expm1(-a * lp);
    const double d = 1.0 + r * q;
    const double q1 = -lp * q * (1.0 + q);
    const double q2 = lp * lp * q * (1.0 + q) * (1.0 + 2.0 * q);
    g.add(std::log1p(r * q));
    gr.add(q / d);
    ga.add(r * q1 / d);
    grr.add(-(q * q) / (d * d));
    gra.add(q1 / (d * d));
    gaa.add(r * q2 / d - r * r * q1 * q1 / (d * d));
  }
  const PrimeTail tail = prime_power_tail(ctx, a);
  SaddleEval out;
  out.log_g = g.value() + r * tail.value;
  out.f = out.log_g + a * log_x - nu * std::log(r);
  out.fr = gr.value() + tail.value - nu / r;
  out.fa = ga.value() + r * tail.d1 + log_x;
  out.frr = grr.value() + nu / (r * r);
  out.fra = gra.value() + tail.d1;
  out.faa = gaa.value() + r * tail.d2;
  return out;
}

bool converged(const SaddleEval& e, double tol) {
  return std::fabs(e.fr) <= tol && std::fabs(e.fa) <= tol;
}

// Minimises F along one coordinate by bisection on the sign of its
// derivative. The objective is convex in log r and in a separately.
void bisect_coordinate(const EulerContext& ctx, double& r, double& a, unsigned nu, double log_x,
                       bool along_r) {
  auto derivative = [&](double coord) {
    const SaddleEval e = along_r ? evaluate(ctx, std::exp(coord), a, nu, log_x)
                                 : evaluate(ctx, r, 1.0 + std::exp(coord), nu, log_x);
    return along_r ? std::exp(coord) * e.fr : std::exp(coord) * e.fa;
  };
  double mid = along_r ? std::log(r) : std::log(a - 1.0);
  double lo = mid - 1.0;
  double hi = mid + 1.0;
  for (int i = 0; i < 60 && derivative(lo) > 0; ++i) lo -= 2.0 * (i + 1);
  for (int i = 0; i < 60 && derivative(hi) < 0; ++i) hi += 2.0 * (i + 1);
  for (int i = 0; i < 80; ++i) {
    mid = 0.5 * (lo + hi);
    (derivative(mid) > 0 ? hi : lo) = mid;
  }
  if (along_r) {
    r = std::exp(0.5 * (lo + hi));
  } else {
    a = 1.0 + std::exp(0.5 * (lo + hi));
  }
}

SaddlePoint make_point(unsigned nu, double log_x, double r, double a, const SaddleEval& e,
                       unsigned iterations, bool fallback, const EulerProductConfig& cfg) {
  SaddlePoint s;
  s.nu = nu;
  s.log_x = log_x;
  s.rho = r;
  s.alpha = a;
  s.residual_r = e.fr;
  s.residual_a = e.fa;
  s.objective = e.f;
  s.iterations = iterations;
  s.used_fallback = fallback;
  s.truncation = cfg;
  return s;
}

}  // namespace

void EulerProductConfig::validate() const {
  if (prime_limit < 100'000 || prime_limit > kMaxEulerPrimeLimit) {
    throw ParameterError("Euler prime limit must lie in [10^5, 2^28]");
  }
  if (!(tail_tolerance > 0 && tail_tolerance <= 1e-4)) {
    throw ParameterError("tail tolerance must lie in (0, 1e-4]");
  }
  if (!(newton_tolerance > 0 && newton_tolerance <= 1e-4)) {
    throw ParameterError("Newton tolerance must lie in (0, 1e-4]");
  }
  if (max_newton_iterations == 0) throw ParameterError("max Newton iterations must be positive");
}

double prime_zeta_tail(const EulerContext& ctx, double a) {
  if (!(a > 1.0)) throw DivergenceError("prime zeta tail diverges for a <= 1");
  return prime_power_tail(ctx, a).value;
}

double riemann_r(double x) {
  if (!(x > 1.0)) throw DomainError("R(x) needs x > 1");
  const double lx = std::log(x);
  double sum = 1.0;
  double power = 1.0;  // (log x)^k / k!
  for (int k = 1; k < 400; ++k) {
    power *= lx / k;
    const double term = power / (k * std::riemann_zeta(k + 1.0));
    sum += term;
    if (k > lx && std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

EulerContext::EulerContext(std::uint64_t prime_limit)
    : prime_limit_(prime_limit), log_limit_(std::log(static_cast<double>(prime_limit))) {
  const PrimeTable table = build_prime_table(prime_limit);
  primes_.reserve(table.primes.size());
  log_primes_.reserve(table.primes.size());
  for (std::uint64_t p : table.primes) {
    primes_.push_back(static_cast<double>(p));
    log_primes_.push_back(std::log(static_cast<double>(p)));
  }
  riemann_discrepancy_ =
      static_cast<double>(table.primes.size()) - riemann_r(static_cast<double>(prime_limit));
}

std::shared_ptr<const EulerContext> EulerContext::get(std::uint64_t prime_limit) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const EulerContext>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[prime_limit];
  if (!slot) slot = std::make_shared<const EulerContext>(prime_limit);
  return slot;
}

EulerLogValue big_g_detail(double z, double s, const EulerProductConfig& cfg) {
  cfg.validate();
  if (!(s > 1.0)) throw DivergenceError("G(z, s) diverges for s <= 1");
  if (!(z >= 0.0)) throw DomainError("G(z, s) needs z >= 0");
  for (std::uint64_t limit = cfg.prime_limit; limit != 0; limit = next_limit(limit)) {
    const auto ctx = EulerContext::get(limit);
    CompensatedSum partial;
    if (z > 0) {
      for (double lp : ctx->log_primes()) {
        const double q = std::exp(-s * lp) / -std::expm1(-s * lp);
        partial.add(std::log1p(z * q));
      }
    }
    EulerLogValue out;
    out.partial = partial.value();
    out.tail = z * prime_power_tail(*ctx, s).value;
    out.value = out.partial + out.tail;
    out.error_estimate = z > 0 ? g_tail_error(*ctx, z, s) : 0.0;
    out.prime_limit = limit;
    if (out.error_estimate <= cfg.tail_tolerance * std::max(1.0, std::fabs(out.value))) {
      return out;
    }
  }
  throw ConvergenceError("log G tail error above tolerance at the largest prime limit");
}

double big_g(double z, double s, const EulerProductConfig& cfg) {
  return big_g_detail(z, s, cfg).value;
}

EulerLogValue euler_h_detail(double s, const EulerProductConfig& cfg) {
  cfg.validate();
  if (!(s >= 0.0)) throw DomainError("H(s) needs s >= 0");
  for (std::uint64_t limit = cfg.prime_limit; limit != 0; limit = next_limit(limit)) {
    const auto ctx = EulerContext::get(limit);
    CompensatedSum partial;
    if (s > 0) {
      for (double p : ctx->primes()) {
        partial.add(std::log1p(s / (p - 1.0)) + s * std::log1p(-1.0 / p));
      }
    }
    const double lP = ctx->log_limit();
    EulerLogValue out;
    out.partial = partial.value();
    out.tail = -0.5 * s * (s - 1.0) * prime_power_tail(*ctx, 2.0).value;
    out.value = out.partial + out.tail - std::lgamma(s + 1.0);
    out.error_estimate =
        0.5 * std::fabs(s * (s - 1.0)) * std::fabs(ctx->riemann_discrepancy()) *
            std::exp(-2.0 * lP) +
        s * (1.0 + s) * (1.0 + s) * expint_e1(2.0 * lP);
    out.prime_limit = limit;
    if (out.error_estimate <= cfg.tail_tolerance * std::max(1.0, std::fabs(out.value))) {
      return out;
    }
  }
  throw ConvergenceError("log H tail error above tolerance at the largest prime limit");
}

double euler_h(double s, const EulerProductConfig& cfg) { return euler_h_detail(s, cfg).value; }

double saddle_objective(double r, double a, unsigned nu, double log_x,
                        const EulerProductConfig& cfg) {
  if (!(r > 0) || !(a > 1)) throw DomainError("objective needs r > 0 and a > 1");
  return evaluate(*EulerContext::get(cfg.prime_limit), r, a, nu, log_x).f;
}

SaddlePoint solve_saddle(unsigned nu, double log_x, const EulerProductConfig& cfg_in) {
  cfg_in.validate();
  if (nu < 1) throw PreconditionError("saddle point needs nu >= 1");
  if (!(log_x >= 10.0)) throw PreconditionError("saddle point needs log x >= 10");
  if (log_primorial(nu) >= log_x) {
    throw RangeError("no integer below x has " + std::to_string(nu) + " distinct prime factors");
  }

  EulerProductConfig cfg = cfg_in;
  const double L = scale_L(nu, log_x);
  double r = nu / std::max(L, 1.0);
  double a = 1.0 + r / log_x;
  unsigned total_iterations = 0;
  bool fallback = false;

  for (;;) {
    const auto ctx = EulerContext::get(cfg.prime_limit);
    SaddleEval e = evaluate(*ctx, r, a, nu, log_x);
    unsigned iter = 0;
    while (!converged(e, cfg.newton_tolerance)) {
      if (iter++ >= cfg.max_newton_iterations) {
        throw SaddleConvergenceError(
            "saddle point Newton iteration did not converge for nu = " + std::to_string(nu),
            make_point(nu, log_x, r, a, e, total_iterations + iter, fallback, cfg));
      }
      // Newton in (u, a) with u = log r; the objective is jointly convex there.
      const double gu = r * e.fr;
      const double ga = e.fa;
      const double huu = r * e.fr + r * r * e.frr;
      const double hua = r * e.fra;
      const double haa = e.faa;
      const double det = huu * haa - hua * hua;
      bool accepted = false;
      if (det > 0 && huu > 0 && std::isfinite(det)) {
        const double du = -(haa * gu - hua * ga) / det;
        const double da = -(huu * ga - hua * gu) / det;
        const double slope = gu * du + ga * da;
        const double grad0 = std::hypot(e.fr, e.fa);
        for (double t = 1.0; t > 1e-12; t *= 0.5) {
          const double a_new = a + t * da;
          if (!(a_new > 1.0) || a_new - 1.0 < 1e-3 * (a - 1.0)) continue;
          const double r_new = r * std::exp(t * du);
          const SaddleEval trial = evaluate(*ctx, r_new, a_new, nu, log_x);
          const double noise = 1e-13 * (std::fabs(e.f) + 1.0);
          if (trial.f <= e.f + 1e-4 * t * slope + noise ||
              std::hypot(trial.fr, trial.fa) < 0.5 * grad0) {
            r = r_new;
            a = a_new;
            e = trial;
            accepted = true;
            break;
          }
        }
      }
      if (!accepted) {
        fallback = true;
        for (int sweep = 0; sweep < 3; ++sweep) {
          bisect_coordinate(*ctx, r, a, nu, log_x, true);
          bisect_coordinate(*ctx, r, a, nu, log_x, false);
        }
        e = evaluate(*ctx, r, a, nu, log_x);
      }
    }
    total_iterations += iter;
    SaddlePoint point = make_point(nu, log_x, r, a, e, total_iterations, fallback, cfg);
    point.tail_error = g_tail_error(*ctx, r, a);
    if (point.tail_error <= cfg.tail_tolerance * std::max(1.0, std::fabs(e.log_g))) {
      return point;
    }
    const std::uint64_t bigger = next_limit(cfg.prime_limit);
    if (bigger == 0) {
      throw SaddleConvergenceError("saddle tail error above tolerance at the largest prime limit",
                                   point);
    }
    cfg.prime_limit = bigger;
  }
}

std::string_view to_string(DensityRegime regime) {
  switch (regime) {
    case DensityRegime::saddle:
      return "saddle";
    case DensityRegime::small_nu_series:
      return "smallNuSeries";
    case DensityRegime::landau:
      return "landau";
    case DensityRegime::crude:
      return "crude";
  }
  return "unknown";
}

namespace {

DensityEstimate base_estimate(unsigned nu, double log_x, DensityRegime regime) {
  DensityEstimate d;
  d.nu = nu;
  d.log_x = log_x;
  d.regime = regime;
  const double L = scale_L(nu, log_x);
  d.error_scale = L > 1.0 ? 1.0 / L : 1.0;
  d.in_asymptotic_range = nu >= 1 && nu <= script_L(2.0, log_x);
  return d;
}

double implied_e_nu(unsigned nu, double log_x, double log_delta) {
  const double L = scale_L(nu, log_x);
  if (nu < 2 || !(L > 0)) return kNaN;
  return std::exp((log_delta + std::lgamma(static_cast<double>(nu)) + std::log(log_x)) /
                      (nu - 1.0) -
                  std::log(L));
}

}  // namespace

DensityEstimate density_ht(const SaddlePoint& saddle) {
  const unsigned nu = saddle.nu;
  const double log_x = saddle.log_x;
  DensityEstimate d = base_estimate(nu, log_x, DensityRegime::saddle);
  d.log_delta = saddle.objective - log_x - std::log(static_cast<double>(nu)) -
                log_phi(static_cast<double>(nu)) - log_phi(saddle.rho) - std::log(log_x);
  d.e_nu = implied_e_nu(nu, log_x, d.log_delta);
  d.rho = saddle.rho;
  return d;
}

DensityEstimate density_ht(unsigned nu, double log_x, const EulerProductConfig& cfg) {
  return density_ht(solve_saddle(nu, log_x, cfg));
}

double small_nu_gamma_term(unsigned nu, double gamma) {
  if (!(gamma > -1.0)) throw DomainError("small-nu series needs gamma > -1");
  return nu * (gamma - std::log1p(gamma));
}

DensityEstimate density_small_nu(const SaddlePoint& saddle, const EulerProductConfig& cfg) {
  const unsigned nu = saddle.nu;
  const double log_x = saddle.log_x;
  const double l2 = log2_of(log_x);
  if (nu < 1 || !(nu < l2 * l2)) {
    throw PreconditionError("small-nu series needs 1 <= nu < (log log x)^2");
  }
  const double u = nu / l2;
  const double gamma = (saddle.rho - u) / u;
  DensityEstimate d = base_estimate(nu, log_x, DensityRegime::small_nu_series);
  d.log_delta = nu * std::log(l2) - std::lgamma(nu + 1.0) - std::log(log_x) +
                std::log(saddle.rho) + euler_h(saddle.rho, cfg) + small_nu_gamma_term(nu, gamma);
  d.e_nu = implied_e_nu(nu, log_x, d.log_delta);
  d.rho = saddle.rho;
  return d;
}

DensityEstimate density_small_nu(unsigned nu, double log_x, const EulerProductConfig& cfg) {
  const double l2 = log2_of(log_x);
  if (nu < 1 || !(nu < l2 * l2)) {
    throw PreconditionError("small-nu series needs 1 <= nu < (log log x)^2");
  }
  return density_small_nu(solve_saddle(nu, log_x, cfg), cfg);
}

DensityEstimate density_landau(unsigned nu, double log_x) {
  if (nu < 1) throw PreconditionError("Landau density needs nu >= 1");
  if (!(log_x > 1.0)) throw PreconditionError("Landau density needs x > e");
  DensityEstimate d = base_estimate(nu, log_x, DensityRegime::landau);
  d.log_delta =
      (nu - 1.0) * std::log(log2_of(log_x)) - std::lgamma(static_cast<double>(nu)) - std::log(log_x);
  d.e_nu = kNaN;
  return d;
}

CrudeBounds density_crude_bounds(unsigned nu, double log_x, double e_minus, double e_plus) {
  if (nu < 1) throw PreconditionError("crude bounds need nu >= 1");
  const double base = -std::lgamma(static_cast<double>(nu)) - std::log(log_x);
  if (nu == 1) return {base, base};
  const double L = scale_L(nu, log_x);
  if (!(L > 0)) throw RangeError("crude bounds need L_nu(x) > 0");
  return {(nu - 1.0) * std::log(e_minus * L) + base, (nu - 1.0) * std::log(e_plus * L) + base};
}

double density_homothety(unsigned nu, double log_x, std::uint64_t m) {
  if (m < 1) throw PreconditionError("homothety needs m >= 1");
  const double L = scale_L(nu, log_x);
  if (!(L > 0)) throw RangeError("homothety needs L_nu(x) > 0");
  return (nu / L - 1.0) * std::log1p(std::log(static_cast<double>(m)) / log_x);
}

HomothetyCheck homothety_check(unsigned nu, double log_x, std::uint64_t m,
                               const EulerProductConfig& cfg) {
  HomothetyCheck h;
  h.predicted = density_homothety(nu, log_x, m);
  const double log_mx = log_x + std::log(static_cast<double>(m));
  h.direct = density_ht(nu, log_mx, cfg).log_delta - density_ht(nu, log_x, cfg).log_delta;
  return h;
}

HTParameters ht_parameters(unsigned nu, double log_x, double rho) {
  HTParameters p;
  p.L = scale_L(nu, log_x);
  if (!(p.L > 0)) throw RangeError("L_nu(x) <= 0: nu beyond the HT range");
  p.u = nu / log2_of(log_x);
  p.mu = nu / p.L;
  p.w = log_x / (p.mu * std::log(p.mu + 2.0));
  p.M = std::log(kHTConstantC * p.w * std::log(p.w) / p.L);
  p.R = 1.0 / (p.L * std::log(p.mu + 2.0)) + 1.0 / (p.L * p.L);
  p.gamma = (rho - p.u) / p.u;
  return p;
}

double large_nu_log_density(unsigned nu, double log_x, double rho) {
  const HTParameters p = ht_parameters(nu, log_x, rho);
  return -std::lgamma(nu + 1.0) - std::log(log_x) + nu * (std::log(p.M) + 1.0 / p.M);
}

}  // namespace nufactor
