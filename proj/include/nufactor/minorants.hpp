#pragma once

#include <cstdint>
#include <optional>

#include "nufactor/params.hpp"
#include "nufactor/sieve.hpp"

namespace nufactor {

// Test-scale values replacing the asymptotic parameter formulas. At desk-scale
// x the formula value of tau can exceed x and t can be absurdly large. A set
// cap replaces the formula value whether it is smaller or larger.
struct MinorantCaps {
  std::optional<double> tau_cap;
  std::optional<double> t_cap;
  bool force = false;  // compute even when tau >= x
};

struct MinorantParams {
  PaperParams paper;
  double tau = 0;
  double t = 0;
  double ell = 0;
  unsigned w_max = 0;  // floor(ell)
  std::uint64_t tau_floor = 0;
  std::uint64_t t_floor = 0;
  bool tau_clamped = false;
  bool t_clamped = false;
  bool degenerate = false;  // ell < 1: the sharp minorant is an empty sum

  bool clamped() const { return tau_clamped || t_clamped; }
};

// Resolves tau (from the intro value of lambda^+), t and ell at x, then
// substitutes the caps. Throws RangeError from paper_params when L_nu(x) <= 0.
MinorantParams resolve_minorant_params(std::uint64_t x, unsigned nu, double a,
                                       const MinorantCaps& caps = {});

struct MinorantPrimeCount {
  // Pairs (m, p) with m in S_{nu-1}, m <= tau, p prime, m p in (x, x+y].
  std::uint64_t pairs = 0;
  // Elements of S_nu(x, y) hit by at least one such pair.
  std::uint64_t distinct = 0;
  bool clamped = false;
};

// Throws ParameterError when tau >= x unless caps.force or a tau cap is set.
MinorantPrimeCount minorant_prime(std::uint64_t x, std::uint64_t y, unsigned nu,
                                  const MinorantParams& params, const PrimeTable& table,
                                  const SieveOptions& options = {});
MinorantPrimeCount minorant_prime(std::uint64_t x, std::uint64_t y, unsigned nu,
                                  const MinorantCaps& caps = {}, const SieveOptions& options = {});

struct MinorantSharpCount {
  std::uint64_t count = 0;
  bool degenerate = false;
  bool clamped = false;
};

// Sum over 1 <= w <= floor(ell) of the pairs (m, n) with m a t-smooth member
// of S_{nu-w}(tau), n in S_w rough above t, and m n in (x, x+y]. The split of
// an integer into its t-smooth and t-rough parts is unique, so this counts
// integers of S_nu(x, y).
MinorantSharpCount minorant_sharp(std::uint64_t x, std::uint64_t y, unsigned nu,
                                  const MinorantParams& params, const PrimeTable& table,
                                  const SieveOptions& options = {});
MinorantSharpCount minorant_sharp(std::uint64_t x, std::uint64_t y, unsigned nu, double a,
                                  const MinorantCaps& caps = {}, const SieveOptions& options = {});

}  // namespace nufactor
