#include "nufactor/minorants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nufactor/errors.hpp"

namespace nufactor {
namespace {

std::uint64_t saturating_floor(double v) {
  if (!(v >= 0)) return 0;
  if (v >= 1.8e19) return UINT64_MAX;
  return static_cast<std::uint64_t>(std::floor(v));
}

void check_interval(std::uint64_t x, std::uint64_t y, unsigned nu) {
  if (nu < 1) throw PreconditionError("minorants need nu >= 1");
  if (y < 1) throw PreconditionError("minorants need y >= 1");
  if (x > UINT64_MAX - y) throw BoundsError("x + y overflows 64 bits");
}

}  // namespace

MinorantParams resolve_minorant_params(std::uint64_t x, unsigned nu, double a,
                                       const MinorantCaps& caps) {
  if (!(a > 4.0)) throw ParameterError("minorant parameter a must exceed 4");
  MinorantParams p;
  p.paper = paper_params(x, nu, a);
  p.tau = p.paper.tau;
  p.t = p.paper.t;
  p.ell = p.paper.ell;
  if (caps.tau_cap) {
    if (!(*caps.tau_cap >= 1)) throw ParameterError("tau cap must be >= 1");
    p.tau = *caps.tau_cap;
    p.tau_clamped = true;
  }
  if (caps.t_cap) {
    if (!(*caps.t_cap >= 1)) throw ParameterError("t cap must be >= 1");
    p.t = *caps.t_cap;
    p.t_clamped = true;
  }
  p.tau_floor = saturating_floor(p.tau);
  p.t_floor = saturating_floor(p.t);
  p.degenerate = !(p.ell >= 1.0);
  p.w_max = p.degenerate ? 0 : static_cast<unsigned>(std::min(std::floor(p.ell), 64.0));
  if (!caps.force && !caps.tau_cap && p.tau >= static_cast<double>(x)) {
    throw ParameterError("tau >= x: x = " + std::to_string(x) +
                         " is too small for the asymptotic regime");
  }
  return p;
}

MinorantPrimeCount minorant_prime(std::uint64_t x, std::uint64_t y, unsigned nu,
                                  const MinorantParams& params, const PrimeTable& table,
                                  const SieveOptions& options) {
  check_interval(x, y, nu);
  const std::uint64_t tau = params.tau_floor;
  struct Part {
    std::uint64_t pairs = 0;
    std::uint64_t distinct = 0;
  };
  const auto parts = map_factorized_segments<Part>(
      x, y, table, options, [nu, tau](const FactorizedSegment& seg) {
        Part part;
        for (std::size_t i = 0; i < seg.size(); ++i) {
          const auto& r = seg.record(i);
          const unsigned omega = r.omega;
          if (omega + 1 < nu || omega > nu) continue;
          const std::uint64_t n = seg.lo() + 1 + i;
          bool hit = false;
          for (const auto& pp : seg.factors(i)) {
            const unsigned omega_m = omega - (pp.exponent == 1 ? 1 : 0);
            if (omega_m + 1 != nu || n / pp.prime > tau) continue;
            ++part.pairs;
            hit = hit || omega == nu;
          }
          part.distinct += hit ? 1 : 0;
        }
        return part;
      });
  MinorantPrimeCount out;
  for (const auto& p : parts) {
    out.pairs += p.pairs;
    out.distinct += p.distinct;
  }
  out.clamped = params.clamped();
  return out;
}

MinorantPrimeCount minorant_prime(std::uint64_t x, std::uint64_t y, unsigned nu,
                                  const MinorantCaps& caps, const SieveOptions& options) {
  check_interval(x, y, nu);
  // a does not enter tau; any admissible value resolves the same parameters.
  const MinorantParams params = resolve_minorant_params(x, nu, 4.5, caps);
  return minorant_prime(x, y, nu, params, prime_table_for(x + y), options);
}

MinorantSharpCount minorant_sharp(std::uint64_t x, std::uint64_t y, unsigned nu,
                                  const MinorantParams& params, const PrimeTable& table,
                                  const SieveOptions& options) {
  check_interval(x, y, nu);
  MinorantSharpCount out;
  out.clamped = params.clamped();
  if (params.degenerate) {
    out.degenerate = true;
    return out;
  }
  const std::uint64_t tau = params.tau_floor;
  const std::uint64_t t = params.t_floor;
  const unsigned w_max = params.w_max;
  const auto parts = map_factorized_segments<std::uint64_t>(
      x, y, table, options, [=](const FactorizedSegment& seg) {
        std::uint64_t count = 0;
        for (std::size_t i = 0; i < seg.size(); ++i) {
          if (seg.record(i).omega != nu) continue;
          std::uint64_t smooth = 1;
          unsigned omega_smooth = 0;
          bool too_big = false;
          for (const auto& pp : seg.factors(i)) {
            if (pp.prime > t) break;
            ++omega_smooth;
            for (std::uint32_t e = 0; e < pp.exponent && !too_big; ++e) {
              too_big = smooth > tau / pp.prime;
              smooth *= pp.prime;
            }
            if (too_big) break;
          }
          const unsigned w = nu - omega_smooth;
          count += (!too_big && smooth <= tau && w >= 1 && w <= w_max) ? 1 : 0;
        }
        return count;
      });
  out.count = std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
  return out;
}

MinorantSharpCount minorant_sharp(std::uint64_t x, std::uint64_t y, unsigned nu, double a,
                                  const MinorantCaps& caps, const SieveOptions& options) {
  check_interval(x, y, nu);
  const MinorantParams params = resolve_minorant_params(x, nu, a, caps);
  return minorant_sharp(x, y, nu, params, prime_table_for(x + y), options);
}

}  // namespace nufactor
