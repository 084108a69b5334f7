#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "nufactor/parallel.hpp"

namespace nufactor {

inline constexpr std::uint64_t kMaxPrimeTableLimit = std::uint64_t{1} << 40;

// All primes up to `limit`, ascending. Immutable once built; safe to share
// between threads.
struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;

  // pi(n) for n <= limit.
  std::uint64_t count_up_to(std::uint64_t n) const;
  std::uint64_t largest() const { return primes.empty() ? 0 : primes.back(); }
};

PrimeTable build_prime_table(std::uint64_t limit);

// Cache file: 8-byte magic, little-endian u64 limit, then one little-endian
// u64 gap per prime (the first gap is measured from 0).
void save_prime_table(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable load_prime_table(const std::filesystem::path& path);

// Loads `dir/primes-<limit>.bin` if present, otherwise builds the table and
// tries to write the cache. An empty `dir` disables caching.
PrimeTable cached_prime_table(std::uint64_t limit, const std::filesystem::path& dir);

// Smallest table that fully factors every integer up to `n`.
PrimeTable prime_table_for(std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);

// Streams the primes in (lo, hi] in ascending order, one block at a time.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::span<const std::uint64_t>)>& sink);

// Small-prime statistics of one integer n.
//   least_prime_factor is 0 for n = 1 (no prime factor).
//   powerful_part is the product of p^e over p^e || n with e >= 2.
struct FactorRecord {
  std::uint8_t omega = 0;
  std::uint8_t big_omega = 0;
  bool squarefree = true;
  std::uint64_t least_prime_factor = 0;
  std::uint64_t powerful_part = 1;

  bool operator==(const FactorRecord&) const = default;

  // P^-(n) > t, with the convention P^-(1) = infinity.
  bool is_rough(std::uint64_t t) const { return omega == 0 || least_prime_factor > t; }
};

// Records for every n in (lo, hi]; record i belongs to n = lo + 1 + i.
class FactoredInterval {
 public:
  FactoredInterval() = default;
  FactoredInterval(std::uint64_t lo, std::uint64_t hi, std::vector<FactorRecord> records);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  std::size_t size() const { return records_.size(); }
  std::span<const FactorRecord> records() const { return records_; }
  const FactorRecord& operator[](std::size_t i) const { return records_[i]; }
  const FactorRecord& at_integer(std::uint64_t n) const;

  bool operator==(const FactoredInterval&) const = default;

 private:
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::vector<FactorRecord> records_;
};

struct SieveOptions {
  std::uint64_t segment_width = std::uint64_t{1} << 20;
  unsigned threads = 1;
};

// Validates (x, x+y] against the table: y >= 1, x + y representable and
// (table.limit + 1)^2 > x + y.
void check_sieve_range(std::uint64_t x, std::uint64_t y, const PrimeTable& table);

FactoredInterval sieve_interval(std::uint64_t x, std::uint64_t y, const PrimeTable& table,
                                const SieveOptions& options = {});

// Fills `out` (length hi - lo) with the records of (lo, hi]. No validation.
void sieve_segment(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table,
                   std::span<FactorRecord> out);

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;

  bool operator==(const PrimePower&) const = default;
};

// Full factorizations for (lo, hi], alongside the summary records.
class FactorizedSegment {
 public:
  static constexpr std::size_t kMaxDistinct = 16;  // omega(n) <= 15 below 2^64

  FactorizedSegment(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  std::size_t size() const { return records_.size(); }
  const FactorRecord& record(std::size_t i) const { return records_[i]; }
  std::span<const PrimePower> factors(std::size_t i) const {
    return {factors_.data() + i * kMaxDistinct, counts_[i]};
  }

 private:
  friend void factorize_segment(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table,
                                FactorizedSegment& out);
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<FactorRecord> records_;
  std::vector<PrimePower> factors_;
  std::vector<std::uint8_t> counts_;
};

void factorize_segment(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table,
                       FactorizedSegment& out);

// Trial division over the table; requires (table.limit + 1)^2 > n.
std::vector<PrimePower> factor_by_trial_division(std::uint64_t n, const PrimeTable& table);

// Contiguous segment bounds (lo, hi] covering (x, x+y]. Boundaries depend
// only on x, y and width.
std::vector<std::pair<std::uint64_t, std::uint64_t>> plan_segments(std::uint64_t x,
                                                                    std::uint64_t y,
                                                                    std::uint64_t width);

inline constexpr std::uint64_t kFactorSegmentWidth = std::uint64_t{1} << 16;

// Sieves (x, x+y] segment by segment and maps each segment's records through
// `fn(lo, span<const FactorRecord>) -> Result`. Results come back in segment
// order regardless of thread count.
template <class Result, class Fn>
std::vector<Result> map_record_segments(std::uint64_t x, std::uint64_t y, const PrimeTable& table,
                                        const SieveOptions& options, Fn&& fn) {
  check_sieve_range(x, y, table);
  const auto segments = plan_segments(x, y, options.segment_width);
  return parallel_map<Result>(segments.size(), options.threads, [&](std::size_t i) {
    const auto [lo, hi] = segments[i];
    std::vector<FactorRecord> records(hi - lo);
    sieve_segment(lo, hi, table, records);
    return fn(lo, std::span<const FactorRecord>(records));
  });
}

// Same as map_record_segments with full factorizations; `fn` receives a
// FactorizedSegment.
template <class Result, class Fn>
std::vector<Result> map_factorized_segments(std::uint64_t x, std::uint64_t y,
                                            const PrimeTable& table, const SieveOptions& options,
                                            Fn&& fn) {
  check_sieve_range(x, y, table);
  const auto segments =
      plan_segments(x, y, std::min(options.segment_width, kFactorSegmentWidth));
  return parallel_map<Result>(segments.size(), options.threads, [&](std::size_t i) {
    const auto [lo, hi] = segments[i];
    FactorizedSegment segment(lo, hi);
    factorize_segment(lo, hi, table, segment);
    return fn(static_cast<const FactorizedSegment&>(segment));
  });
}

}  // namespace nufactor
