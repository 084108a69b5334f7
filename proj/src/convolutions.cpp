#include "nufactor/convolutions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nufactor/errors.hpp"
#include "nufactor/parallel.hpp"
#include "nufactor/sieve.hpp"
#include "nufactor/summation.hpp"

namespace nufactor {
namespace {

constexpr std::uint64_t kBlock = std::uint64_t{1} << 16;

void check_limit(std::uint64_t limit) {
  if (limit < 1 || limit > kMaxTableLimit) {
    throw BoundsError("table limit must lie in [1, 10^8], got " + std::to_string(limit));
  }
}

template <class Value>
ArithmeticTable prime_power_table(std::string name, std::uint64_t limit, Value value) {
  check_limit(limit);
  ArithmeticTable t{std::move(name), limit, std::vector<double>(limit + 1, 0.0)};
  const FactoredInterval interval = sieve_interval(0, limit, prime_table_for(limit));
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const auto& r = interval.at_integer(n);
    if (r.omega == 1) t.values[n] = value(r.least_prime_factor, r.big_omega);
  }
  return t;
}

ArithmeticTable self_power(const ArithmeticTable& base, unsigned k, std::string name,
                           unsigned threads) {
  ArithmeticTable acc = unit_table(base.limit);
  for (unsigned i = 0; i < k; ++i) acc = convolve(acc, base, threads);
  acc.name = std::move(name);
  return acc;
}

double w_sum(const ArithmeticTable& pv, const FactoredInterval& rec, std::uint64_t z,
             std::uint64_t lo, std::uint64_t hi, bool squarefree_only) {
  CompensatedSum s;
  for (std::uint64_t n = lo + 1; n <= hi; ++n) {
    const auto& r = rec.at_integer(n);
    if (!r.is_rough(z) || (squarefree_only && !r.squarefree)) continue;
    s.add(pv(n));
  }
  return s.value();
}

double unweighted_w_impl(unsigned v, std::uint64_t z, std::uint64_t x,
                         std::optional<std::uint64_t> y, unsigned threads, bool squarefree_only) {
  const std::uint64_t top = y ? x + *y : x;
  if (y && x > kMaxTableLimit - *y) throw BoundsError("x + y exceeds the table limit");
  check_limit(std::max<std::uint64_t>(top, 1));
  const ArithmeticTable pv = p_k_table(v, std::max<std::uint64_t>(top, 1), threads);
  const FactoredInterval rec =
      sieve_interval(0, std::max<std::uint64_t>(top, 1), prime_table_for(std::max<std::uint64_t>(top, 1)));
  if (y) return w_sum(pv, rec, z, x, top, squarefree_only);
  return w_sum(pv, rec, z, 0, x, squarefree_only);
}

}  // namespace

ArithmeticTable unit_table(std::uint64_t limit) {
  check_limit(limit);
  ArithmeticTable t{"unit", limit, std::vector<double>(limit + 1, 0.0)};
  t.values[1] = 1.0;
  return t;
}

ArithmeticTable von_mangoldt_table(std::uint64_t limit) {
  return prime_power_table("Lambda", limit, [](std::uint64_t p, unsigned) {
    return std::log(static_cast<double>(p));
  });
}

ArithmeticTable theta_bar_table(std::uint64_t limit) {
  return prime_power_table("theta_bar", limit,
                           [](std::uint64_t, unsigned k) { return 1.0 / static_cast<double>(k); });
}

ArithmeticTable convolve(const ArithmeticTable& f, const ArithmeticTable& g, unsigned threads) {
  if (f.limit != g.limit) throw BoundsError("convolution needs tables with the same limit");
  const std::uint64_t limit = f.limit;
  ArithmeticTable out{f.name + "*" + g.name, limit, std::vector<double>(limit + 1, 0.0)};
  std::vector<std::uint64_t> support;
  for (std::uint64_t d = 1; d <= limit; ++d) {
    if (f.values[d] != 0.0) support.push_back(d);
  }
  const std::size_t blocks = (limit + kBlock - 1) / kBlock;
  parallel_map<int>(blocks, threads, [&](std::size_t b) {
    const std::uint64_t lo = b * kBlock;  // block is (lo, hi]
    const std::uint64_t hi = std::min(limit, lo + kBlock);
    double* h = out.values.data();
    for (std::uint64_t d : support) {
      if (d > hi) break;
      const double fd = f.values[d];
      for (std::uint64_t m = lo / d + 1; m * d <= hi; ++m) {
        const double gm = g.values[m];
        if (gm != 0.0) h[d * m] += fd * gm;
      }
    }
    return 0;
  });
  return out;
}

ArithmeticTable f_v_table(unsigned v, std::uint64_t limit, unsigned threads) {
  return self_power(von_mangoldt_table(limit), v, "F_" + std::to_string(v), threads);
}

ArithmeticTable p_k_table(unsigned k, std::uint64_t limit, unsigned threads) {
  return self_power(theta_bar_table(limit), k, "P_" + std::to_string(k), threads);
}

SupportReport check_support_fv(unsigned v, std::uint64_t limit, unsigned threads) {
  if (v > 6) throw PreconditionError("support check needs v <= 6");
  if (limit > 1'000'000) throw PreconditionError("support check needs limit <= 10^6");
  SupportReport rep{v, limit, 0, 0, 0};
  const ArithmeticTable fv = f_v_table(v, limit, threads);
  const FactoredInterval rec = sieve_interval(0, limit, prime_table_for(limit));
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const auto& r = rec.at_integer(n);
    const bool nonzero = fv(n) != 0.0;
    ++rep.checked;
    rep.nonzero += nonzero ? 1 : 0;
    bool ok = fv(n) >= 0.0;
    if (nonzero) ok = ok && r.omega <= v && r.big_omega >= v;
    if (r.squarefree) ok = ok && (nonzero == (r.omega == v));
    rep.violations += ok ? 0 : 1;
  }
  return rep;
}

SquarefreeIdentityReport check_squarefree_identity(unsigned v, std::uint64_t limit,
                                                   unsigned threads) {
  SquarefreeIdentityReport rep;
  const ArithmeticTable fv = f_v_table(v, limit, threads);
  const PrimeTable table = prime_table_for(limit);
  const double v_factorial = std::tgamma(v + 1.0);
  const FactoredInterval rec = sieve_interval(0, limit, table);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const auto& r = rec.at_integer(n);
    if (!r.squarefree || r.omega != v) continue;
    double expected = v_factorial;
    for (const auto& pp : factor_by_trial_division(n, table)) {
      expected *= std::log(static_cast<double>(pp.prime));
    }
    ++rep.checked;
    rep.max_relative_error = std::max(rep.max_relative_error, std::fabs(fv(n) / expected - 1.0));
  }
  return rep;
}

double unweighted_w(unsigned v, std::uint64_t z, std::uint64_t x, std::optional<std::uint64_t> y,
                    unsigned threads) {
  return unweighted_w_impl(v, z, x, y, threads, false);
}

double unweighted_w_squarefree(unsigned v, std::uint64_t z, std::uint64_t x,
                               std::optional<std::uint64_t> y, unsigned threads) {
  return unweighted_w_impl(v, z, x, y, threads, true);
}

CombinatorialValue combinatorial_c(unsigned v) {
  if (v < 1 || v > 40) throw PreconditionError("combinatorial product needs 1 <= v <= 40");
  auto log_binom = [v](unsigned k) {
    return std::lgamma(v + 1.0) - std::lgamma(k + 1.0) - std::lgamma(v - k + 1.0);
  };
  CombinatorialValue out;
  out.v = v;
  out.K = static_cast<unsigned>(std::floor(std::log2(static_cast<double>(v)) + 1e-12));
  // Items: w (at most v), then a_j at most v 2^-j for j = 0..K.
  std::vector<unsigned> caps{v};
  for (unsigned j = 0; j <= out.K; ++j) caps.push_back(static_cast<unsigned>(std::ldexp(v, -static_cast<int>(j))));
  constexpr double kNone = -1e300;
  std::vector<double> best(v + 1, kNone);  // best[b]: max log product using budget exactly b
  best[0] = 0.0;
  for (unsigned cap : caps) {
    std::vector<double> next(v + 1, kNone);
    for (unsigned used = 0; used <= v; ++used) {
      if (best[used] == kNone) continue;
      for (unsigned k = 0; k <= cap && used + k <= v; ++k) {
        next[used + k] = std::max(next[used + k], best[used] + log_binom(k));
      }
    }
    best = std::move(next);
  }
  out.log_value = *std::max_element(best.begin(), best.end());
  out.value = std::round(std::exp(out.log_value));
  out.bound_ok = out.log_value <= v * std::log(kCombinatorialA);
  return out;
}

MeanBound fv_mean_bound(unsigned v, std::uint64_t z, std::uint64_t x, double kappa,
                        unsigned threads) {
  if (v < 1) throw PreconditionError("mean bound needs v >= 1");
  check_limit(x);
  const ArithmeticTable fv = f_v_table(v, x, threads);
  const FactoredInterval rec = sieve_interval(0, x, prime_table_for(x));
  CompensatedSum s;
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (fv(n) != 0.0 && rec.at_integer(n).is_rough(z)) s.add(fv(n) / static_cast<double>(n));
  }
  MeanBound b;
  b.lhs = s.value();
  b.rhs = v * std::pow(kappa * std::log(static_cast<double>(x)) / v, v);
  return b;
}

}  // namespace nufactor
