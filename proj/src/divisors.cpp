#include "nufactor/divisors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nufactor/errors.hpp"
#include "nufactor/params.hpp"
#include "nufactor/summation.hpp"

namespace nufactor {
namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kMaxLocalTerms = 100'000;

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  u128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // acc is C(n - r + i - 1, i - 1) < 2^64 here, so the product fits.
    acc = acc * (n - r + i) / i;
    if (acc > UINT64_MAX) throw OverflowError("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t tau_k(std::span<const PrimePower> factors, unsigned k) {
  if (k == 0) throw PreconditionError("tau_k needs k >= 1");
  u128 acc = 1;
  for (const auto& pp : factors) {
    acc *= binomial(pp.exponent + k - 1, k - 1);
    if (acc > UINT64_MAX) throw OverflowError("tau_k(n) exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t tau_k(std::uint64_t n, unsigned k, const PrimeTable& table) {
  if (n == 0) throw PreconditionError("tau_k needs n >= 1");
  return tau_k(factor_by_trial_division(n, table), k);
}

std::uint64_t tau_k(std::uint64_t n, unsigned k) { return tau_k(n, k, prime_table_for(n)); }

std::string_view to_string(CapMode mode) {
  switch (mode) {
    case CapMode::omega:
      return "omega";
    case CapMode::big_omega:
      return "bigOmega";
    case CapMode::none:
      return "none";
  }
  return "unknown";
}

CapMode cap_mode_from_string(std::string_view name) {
  if (name == "omega") return CapMode::omega;
  if (name == "bigOmega") return CapMode::big_omega;
  if (name == "none") return CapMode::none;
  throw ParameterError("unknown cap mode: " + std::string(name));
}

DivisorSumReport short_divisor_sum(std::uint64_t x, std::uint64_t y, unsigned k, CapMode mode,
                                   double cap, const PrimeTable& table,
                                   const DivisorBoundConfig& cfg, const SieveOptions& options) {
  if (k < 1) throw PreconditionError("divisor sums need k >= 1");
  if (mode != CapMode::none && !(cap >= 0)) throw ParameterError("cap must be >= 0");
  struct Part {
    u128 exact = 0;
    std::uint64_t terms = 0;
  };
  const auto parts = map_factorized_segments<Part>(
      x, y, table, options, [k, mode, cap](const FactorizedSegment& seg) {
        Part part;
        for (std::size_t i = 0; i < seg.size(); ++i) {
          const auto& r = seg.record(i);
          if (mode == CapMode::omega && r.omega > cap) continue;
          if (mode == CapMode::big_omega && r.big_omega > cap) continue;
          ++part.terms;
          part.exact += tau_k(seg.factors(i), k);
        }
        return part;
      });
  DivisorSumReport rep;
  rep.x = x;
  rep.y = y;
  rep.k = k;
  rep.cap = cap;
  rep.cap_mode = mode;
  u128 sum = 0;
  for (const auto& p : parts) {
    sum += p.exact;
    rep.terms += p.terms;
  }
  rep.exact = sum <= UINT64_MAX;
  rep.exact_total = rep.exact ? static_cast<std::uint64_t>(sum) : 0;
  rep.total = static_cast<double>(sum);
  rep.log_total = std::log(rep.total);

  const double log_x = std::log(static_cast<double>(x + y));
  const double ly = std::log(static_cast<double>(y));
  rep.paper_bound = ly + 11.0 * k * std::log(std::log(cfg.B * k)) + (2.0 + k) * std::log(log_x);
  const double Lk = scale_L(k, log_x);
  if (Lk > 0 && k >= 2) {
    rep.sharp_bound = ly + 11.0 * k * std::log(std::log(static_cast<double>(k))) +
                      ((cfg.gamma + cfg.epsilon) / (cfg.gamma - 1.0)) * k * Lk;
  } else {
    rep.sharp_bound = std::numeric_limits<double>::quiet_NaN();
  }
  rep.within_bound = rep.log_total <= rep.paper_bound;
  rep.sharp_within = rep.log_total <= rep.sharp_bound;
  rep.log_ratio = rep.log_total - rep.paper_bound;
  return rep;
}

DivisorSumReport short_divisor_sum_a(std::uint64_t x, std::uint64_t y, unsigned k, double a,
                                     CapMode mode, const PrimeTable& table,
                                     const DivisorBoundConfig& cfg, const SieveOptions& options) {
  if (x < 16) throw PreconditionError("capped divisor sums need x >= 16");
  const double cap = script_L(a, std::log(static_cast<double>(x)));
  if (mode != CapMode::none && !(cap >= 0)) throw ParameterError("cap must be >= 0");
  return short_divisor_sum(x, y, k, mode, cap, table, cfg, options);
}

double dirichlet_short_mean(std::uint64_t x, std::uint64_t y) {
  const double xd = static_cast<double>(x);
  const double yd = static_cast<double>(y);
  const double xy = xd + yd;
  // (x + y) log(x + y) - x log x, written without cancellation.
  const double log_part = x > 0 ? xy * std::log1p(yd / xd) + yd * std::log(xd) : xy * std::log(xy);
  return log_part + (2.0 * std::numbers::egamma - 1.0) * yd;
}

double square_harmonic_local(unsigned k, double p) {
  if (k < 1) throw PreconditionError("local factor needs k >= 1");
  if (!(p >= 2)) throw DomainError("local factor needs p >= 2");
  const double inv = 1.0 / (p * p);
  // term_j = C(2j + k - 1, k - 1) p^{-2j}; ratio of consecutive terms is
  // (2j + k)(2j + k + 1) / ((2j + 1)(2j + 2)) p^{-2}.
  double term = 1.0;
  CompensatedSum s;
  s.add(1.0);
  for (std::uint64_t j = 0; j < kMaxLocalTerms; ++j) {
    const double a = 2.0 * j;
    term *= (a + k) * (a + k + 1.0) / ((a + 1.0) * (a + 2.0)) * inv;
    s.add(term);
    if (term < 1e-18 * s.value()) return std::log(s.value());
  }
  throw ConvergenceError("square harmonic local factor did not converge");
}

SquareHarmonicValue square_harmonic_detail(unsigned k, const EulerProductConfig& cfg) {
  cfg.validate();
  if (k < 2) throw PreconditionError("square harmonic sum needs k >= 2");
  const double c2 = 0.5 * k * (k + 1.0);  // log A_k(p) = c2 / p^2 + O(k^4 / p^4)
  for (std::uint64_t limit = cfg.prime_limit; limit <= kMaxEulerPrimeLimit; limit *= 2) {
    const auto ctx = EulerContext::get(limit);
    CompensatedSum partial;
    for (double p : ctx->primes()) partial.add(square_harmonic_local(k, p));
    SquareHarmonicValue out;
    out.partial = partial.value();
    out.tail = c2 * prime_zeta_tail(*ctx, 2.0);
    out.log_value = out.partial + out.tail;
    const double lP = ctx->log_limit();
    const double c4 = k * (k + 1.0) * (k + 2.0) * (k + 3.0) / 24.0 + 0.5 * c2 * c2;
    out.error_estimate = c2 * std::fabs(ctx->riemann_discrepancy()) * std::exp(-2.0 * lP) +
                         c4 * std::exp(-3.0 * lP) / (3.0 * lP);
    out.prime_limit = limit;
    if (out.error_estimate <= cfg.tail_tolerance * std::max(1.0, std::fabs(out.log_value))) {
      return out;
    }
  }
  throw ConvergenceError("square harmonic tail error above tolerance at the largest prime limit");
}

double square_harmonic(unsigned k, const EulerProductConfig& cfg) {
  return square_harmonic_detail(k, cfg).log_value;
}

double square_harmonic_partial(unsigned k, std::uint64_t M, const SieveOptions& options) {
  if (k < 1 || M < 1) throw PreconditionError("partial sum needs k >= 1 and M >= 1");
  const auto parts = map_factorized_segments<CompensatedSum>(
      0, M, prime_table_for(M), options, [k](const FactorizedSegment& seg) {
        CompensatedSum s;
        PrimePower doubled[FactorizedSegment::kMaxDistinct];
        for (std::size_t i = 0; i < seg.size(); ++i) {
          const auto f = seg.factors(i);
          for (std::size_t j = 0; j < f.size(); ++j) doubled[j] = {f[j].prime, 2 * f[j].exponent};
          const double m = static_cast<double>(seg.lo() + 1 + i);
          s.add(static_cast<double>(tau_k(std::span<const PrimePower>(doubled, f.size()), k)) /
                (m * m));
        }
        return s;
      });
  CompensatedSum total;
  for (const auto& p : parts) total += p;
  return total.value();
}

}  // namespace nufactor
