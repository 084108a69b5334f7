#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nufactor {

inline constexpr std::uint64_t kMaxTableLimit = 100'000'000;

// Values of an arithmetic function on 1..limit; values[0] is unused.
struct ArithmeticTable {
  std::string name;
  std::uint64_t limit = 0;
  std::vector<double> values;

  double operator()(std::uint64_t n) const { return values[n]; }
};

ArithmeticTable unit_table(std::uint64_t limit);
ArithmeticTable von_mangoldt_table(std::uint64_t limit);
// Lambda / log: 1/k at p^k, 0 elsewhere.
ArithmeticTable theta_bar_table(std::uint64_t limit);

// Dirichlet convolution. Every output value is summed over ascending d, so
// the result does not depend on `threads`.
ArithmeticTable convolve(const ArithmeticTable& f, const ArithmeticTable& g, unsigned threads = 1);

// v-fold self-convolution of Lambda (F_0 is the unit).
ArithmeticTable f_v_table(unsigned v, std::uint64_t limit, unsigned threads = 1);
// k-fold self-convolution of theta_bar (P_0 is the unit).
ArithmeticTable p_k_table(unsigned k, std::uint64_t limit, unsigned threads = 1);

struct SupportReport {
  unsigned v = 0;
  std::uint64_t limit = 0;
  std::uint64_t violations = 0;  // support law failures; must be 0
  std::uint64_t checked = 0;
  std::uint64_t nonzero = 0;
};

// Checks F_v(n) != 0 => omega(n) <= v <= Omega(n), and for squarefree n
// F_v(n) != 0 <=> omega(n) = v. Requires v <= 6 and limit <= 10^6.
SupportReport check_support_fv(unsigned v, std::uint64_t limit, unsigned threads = 1);

struct SquarefreeIdentityReport {
  std::uint64_t checked = 0;
  double max_relative_error = 0;  // |F_v(n) / (v! prod log p) - 1|
};

// Compares F_v(n) with v! prod_{p | n} log p over squarefree n with omega = v.
SquarefreeIdentityReport check_squarefree_identity(unsigned v, std::uint64_t limit,
                                                   unsigned threads = 1);

// W^{v,z}(x) = sum_{n <= x, P^-(n) > z} P_v(n), or W(x + y) - W(x) when y is
// given. Requires x (+ y) <= kMaxTableLimit.
double unweighted_w(unsigned v, std::uint64_t z, std::uint64_t x,
                    std::optional<std::uint64_t> y = std::nullopt, unsigned threads = 1);
// Same sum restricted to squarefree n.
double unweighted_w_squarefree(unsigned v, std::uint64_t z, std::uint64_t x,
                               std::optional<std::uint64_t> y = std::nullopt,
                               unsigned threads = 1);

inline constexpr double kCombinatorialA = 37.306303705553987;  // 16 sqrt(2e)

struct CombinatorialValue {
  unsigned v = 0;
  unsigned K = 0;
  double log_value = 0;
  double value = 0;
  bool bound_ok = false;  // value <= (16 sqrt(2e))^v
};

// max over w and (a_0..a_K) with w + sum a_k <= v and a_j <= v 2^-j of
// C(v, w) prod_k C(v, a_k), K = floor(log2 v). Requires 1 <= v <= 40.
CombinatorialValue combinatorial_c(unsigned v);

struct MeanBound {
  double lhs = 0;  // sum_{n <= x, P^-(n) > z} F_v(n) / n
  double rhs = 0;  // v (kappa log x / v)^v
  bool holds() const { return lhs <= rhs; }
};

MeanBound fv_mean_bound(unsigned v, std::uint64_t z, std::uint64_t x, double kappa = 150.0,
                        unsigned threads = 1);

}  // namespace nufactor
