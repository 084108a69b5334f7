#include "nufactor/counts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "nufactor/errors.hpp"
#include "nufactor/params.hpp"
#include "nufactor/summation.hpp"

namespace nufactor {
namespace {

using Counts = std::vector<std::uint64_t>;

void trim(Counts& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void merge_into(Counts& acc, const Counts& part) {
  if (acc.size() < part.size()) acc.resize(part.size(), 0);
  for (std::size_t i = 0; i < part.size(); ++i) acc[i] += part[i];
}

struct SegmentPartial {
  std::uint64_t count = 0;
  CompensatedSum harmonic;
};

}  // namespace

std::uint64_t OmegaHistogram::total() const {
  return std::accumulate(counts_by_nu.begin(), counts_by_nu.end(), std::uint64_t{0});
}

CountRecord make_count_record(std::uint64_t x, std::uint64_t y, unsigned nu, std::uint64_t exact,
                              double predicted) {
  CountRecord r{x, y, nu, exact, predicted, std::numeric_limits<double>::quiet_NaN()};
  if (predicted > 0) r.ratio = static_cast<double>(exact) / predicted;
  return r;
}

OmegaHistograms pi_nu_both(std::uint64_t x, std::uint64_t y, const PrimeTable& table,
                           const SieveOptions& options) {
  struct Pair {
    Counts distinct;
    Counts multiplicity;
  };
  const auto parts = map_record_segments<Pair>(
      x, y, table, options, [](std::uint64_t, std::span<const FactorRecord> records) {
        Pair p{Counts(kMaxNu + 1, 0), Counts(kMaxNu + 1, 0)};
        for (const auto& r : records) {
          ++p.distinct[std::min<unsigned>(r.omega, kMaxNu)];
          ++p.multiplicity[std::min<unsigned>(r.big_omega, kMaxNu)];
        }
        return p;
      });
  OmegaHistograms out;
  out.distinct = {x, y, OmegaMode::distinct, {}};
  out.with_multiplicity = {x, y, OmegaMode::with_multiplicity, {}};
  for (const auto& p : parts) {
    merge_into(out.distinct.counts_by_nu, p.distinct);
    merge_into(out.with_multiplicity.counts_by_nu, p.multiplicity);
  }
  trim(out.distinct.counts_by_nu);
  trim(out.with_multiplicity.counts_by_nu);
  return out;
}

OmegaHistogram pi_nu(std::uint64_t x, std::uint64_t y, OmegaMode mode, const PrimeTable& table,
                     const SieveOptions& options) {
  const auto parts = map_record_segments<Counts>(
      x, y, table, options, [mode](std::uint64_t, std::span<const FactorRecord> records) {
        Counts c(kMaxNu + 1, 0);
        for (const auto& r : records) {
          const unsigned k = mode == OmegaMode::distinct ? r.omega : r.big_omega;
          ++c[std::min(k, kMaxNu)];
        }
        return c;
      });
  OmegaHistogram h{x, y, mode, {}};
  for (const auto& c : parts) merge_into(h.counts_by_nu, c);
  trim(h.counts_by_nu);
  return h;
}

OmegaHistogram pi_nu(std::uint64_t x, std::uint64_t y, OmegaMode mode,
                     const SieveOptions& options) {
  if (x > UINT64_MAX - y) throw BoundsError("x + y overflows 64 bits");
  return pi_nu(x, y, mode, prime_table_for(x + y), options);
}

RoughCount rough_count(std::uint64_t x, unsigned v, std::uint64_t t, const PrimeTable& table,
                       const SieveOptions& options) {
  if (t < 1 || t > x) throw PreconditionError("rough count needs 1 <= t <= x");
  const auto parts = map_record_segments<std::uint64_t>(
      0, x, table, options, [v, t](std::uint64_t, std::span<const FactorRecord> records) {
        std::uint64_t c = 0;
        for (const auto& r : records) c += (r.omega == v && r.is_rough(t)) ? 1 : 0;
        return c;
      });
  RoughCount out;
  out.count = std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
  out.density = static_cast<double>(out.count) / static_cast<double>(x);
  return out;
}

RoughCount rough_count(std::uint64_t x, unsigned v, std::uint64_t t, const SieveOptions& options) {
  return rough_count(x, v, t, prime_table_for(x), options);
}

RestrictedCount restricted_count(std::uint64_t x, std::uint64_t a, std::uint64_t b, unsigned v,
                                 const PrimeTable& table, const SieveOptions& options) {
  if (a < 2 || a > b || b > x) throw PreconditionError("restricted count needs 2 <= a <= b <= x");
  if (v == 0) return {1, 1.0};
  const auto parts = map_factorized_segments<SegmentPartial>(
      0, x, table, options, [a, b, v](const FactorizedSegment& seg) {
        SegmentPartial part;
        for (std::size_t i = 0; i < seg.size(); ++i) {
          const auto& r = seg.record(i);
          if (r.omega != v || r.least_prime_factor < a) continue;
          const auto f = seg.factors(i);
          if (f.back().prime > b) continue;
          ++part.count;
          part.harmonic.add(1.0 / static_cast<double>(seg.lo() + 1 + i));
        }
        return part;
      });
  RestrictedCount out;
  CompensatedSum h;
  for (const auto& p : parts) {
    out.count += p.count;
    h += p.harmonic;
  }
  out.harmonic_sum = h.value();
  return out;
}

RestrictedCount restricted_count(std::uint64_t x, std::uint64_t a, std::uint64_t b, unsigned v,
                                 const SieveOptions& options) {
  return restricted_count(x, a, b, v, prime_table_for(x), options);
}

PrimeWindow star_window(unsigned v1, double c, double log_x) {
  PrimeWindow w;
  if (v1 == 0) {
    w.z_lo = w.z_hi = std::numeric_limits<double>::infinity();
    return w;  // empty
  }
  const double lo = log_z_star(v1, c, log_x);
  const double hi = log_z_star(v1, c / 2.0, log_x);
  w.z_lo = std::exp(lo);
  w.z_hi = std::exp(hi);
  if (w.z_lo > w.z_hi) {
    throw ParameterError("degenerate window: z*(c) > z*(c/2) for v1 = " + std::to_string(v1));
  }
  constexpr double kTop = 1.8e19;
  w.lo = w.z_lo >= kTop ? UINT64_MAX : static_cast<std::uint64_t>(std::floor(w.z_lo));
  w.hi = w.z_hi >= kTop ? UINT64_MAX : static_cast<std::uint64_t>(std::floor(w.z_hi));
  return w;
}

std::uint64_t windowed_count(std::uint64_t x, unsigned v, unsigned v1, double c, std::uint64_t t,
                             const PrimeTable& table, const SieveOptions& options) {
  if (v1 > v) throw PreconditionError("windowed count needs v1 <= v");
  if (!(c > 0 && c < 0.99)) throw PreconditionError("windowed count needs c in (0, 0.99)");
  if (t < 1) throw PreconditionError("windowed count needs t >= 1");
  if (x < 3) throw PreconditionError("windowed count needs x >= 3");
  const PrimeWindow window = star_window(v1, c, std::log(static_cast<double>(x)));
  const auto parts = map_factorized_segments<std::uint64_t>(
      0, x, table, options, [&](const FactorizedSegment& seg) {
        std::uint64_t count = 0;
        for (std::size_t i = 0; i < seg.size(); ++i) {
          const auto& r = seg.record(i);
          if (r.omega != v || !r.is_rough(t)) continue;
          unsigned inside = 0;
          for (const auto& pp : seg.factors(i)) inside += window.contains(pp.prime) ? 1 : 0;
          count += inside == v1 ? 1 : 0;
        }
        return count;
      });
  return std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
}

std::uint64_t windowed_count(std::uint64_t x, unsigned v, unsigned v1, double c, std::uint64_t t,
                             const SieveOptions& options) {
  return windowed_count(x, v, v1, c, t, prime_table_for(x), options);
}

double windowed_lower_bound(double log_x, unsigned v, unsigned v1, double c, std::uint64_t t) {
  if (v1 > v || v == 0) throw PreconditionError("lower bound needs 1 <= v and v1 <= v");
  const unsigned v0 = v - v1;
  const double inner = std::log(log_z_star(v, c, log_x) / std::log(2.0 * static_cast<double>(t)));
  const double L1 = v1 == 0 ? 1.0 : scale_L(v1, log_x);
  return std::pow(inner, v0) * std::pow(L1, c * v1) /
         (std::pow(2.0, v) * std::tgamma(v + 1.0) * log_x);
}

MertensSum mertens_sum(std::uint64_t x) {
  if (x < 2) throw PreconditionError("Mertens sum needs x >= 2");
  CompensatedSum s;
  for_each_prime(0, x, [&](std::span<const std::uint64_t> block) {
    for (std::uint64_t p : block) s.add(1.0 / static_cast<double>(p));
  });
  MertensSum out;
  out.sum = s.value();
  out.minus_log_log = out.sum - std::log(std::log(static_cast<double>(x)));
  return out;
}

}  // namespace nufactor
