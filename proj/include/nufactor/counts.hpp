#pragma once

#include <cstdint>
#include <vector>

#include "nufactor/sieve.hpp"

namespace nufactor {

enum class OmegaMode { distinct, with_multiplicity };

inline constexpr unsigned kMaxNu = 64;

// counts_by_nu[k] = #{n in (x, x+y] : omega(n) = k} (or Omega in
// with_multiplicity mode). Trailing zero entries are trimmed.
struct OmegaHistogram {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  OmegaMode mode = OmegaMode::distinct;
  std::vector<std::uint64_t> counts_by_nu;

  std::uint64_t count(unsigned nu) const {
    return nu < counts_by_nu.size() ? counts_by_nu[nu] : 0;
  }
  std::uint64_t total() const;
};

struct CountRecord {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  unsigned nu = 0;
  std::uint64_t exact = 0;
  double predicted = 0;
  double ratio = 0;  // exact / predicted, NaN when predicted <= 0
};

CountRecord make_count_record(std::uint64_t x, std::uint64_t y, unsigned nu, std::uint64_t exact,
                              double predicted);

// Both histograms from one pass.
struct OmegaHistograms {
  OmegaHistogram distinct;
  OmegaHistogram with_multiplicity;
};

OmegaHistograms pi_nu_both(std::uint64_t x, std::uint64_t y, const PrimeTable& table,
                           const SieveOptions& options = {});

OmegaHistogram pi_nu(std::uint64_t x, std::uint64_t y, OmegaMode mode, const PrimeTable& table,
                     const SieveOptions& options = {});
// Builds its own prime table.
OmegaHistogram pi_nu(std::uint64_t x, std::uint64_t y, OmegaMode mode,
                     const SieveOptions& options = {});

struct RoughCount {
  std::uint64_t count = 0;
  double density = 0;  // count / x
};

// |A_v(x; t)| = #{n <= x : omega(n) = v, P^-(n) > t}. Requires 1 <= t <= x.
RoughCount rough_count(std::uint64_t x, unsigned v, std::uint64_t t, const PrimeTable& table,
                       const SieveOptions& options = {});
RoughCount rough_count(std::uint64_t x, unsigned v, std::uint64_t t,
                       const SieveOptions& options = {});

struct RestrictedCount {
  std::uint64_t count = 0;
  double harmonic_sum = 0;
};

// n <= x with omega(n) = v and every prime factor in [a, b].
// Requires 2 <= a <= b <= x.
RestrictedCount restricted_count(std::uint64_t x, std::uint64_t a, std::uint64_t b, unsigned v,
                                 const PrimeTable& table, const SieveOptions& options = {});
RestrictedCount restricted_count(std::uint64_t x, std::uint64_t a, std::uint64_t b, unsigned v,
                                 const SieveOptions& options = {});

// Integer window [floor z*_{v1}(c, x), floor z*_{v1}(c/2, x)] used by the
// windowed count. For v1 = 0 the window is empty (lo > hi).
struct PrimeWindow {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;
  double z_lo = 0;  // unrounded endpoints
  double z_hi = 0;
  bool contains(std::uint64_t p) const { return p >= lo && p <= hi; }
};

PrimeWindow star_window(unsigned v1, double c, double log_x);

// #{n <= x : omega(n) = v, exactly v1 distinct primes of n in the window,
// P^-(n) > t}. Requires v1 <= v, 0 < c < 0.99, t >= 1.
std::uint64_t windowed_count(std::uint64_t x, unsigned v, unsigned v1, double c, std::uint64_t t,
                             const PrimeTable& table, const SieveOptions& options = {});
std::uint64_t windowed_count(std::uint64_t x, unsigned v, unsigned v1, double c, std::uint64_t t,
                             const SieveOptions& options = {});

// Right-hand side of the windowed lower bound:
// (log(log z*_v(c) / log 2t))^{v - v1} L_{v1}(x)^{c v1} / (2^v v! log x).
double windowed_lower_bound(double log_x, unsigned v, unsigned v1, double c, std::uint64_t t);

struct MertensSum {
  double sum = 0;            // sum_{p <= x} 1/p
  double minus_log_log = 0;  // sum - log log x
};

MertensSum mertens_sum(std::uint64_t x);

}  // namespace nufactor
