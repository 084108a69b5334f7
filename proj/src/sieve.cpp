#include "nufactor/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <string>

#include "nufactor/errors.hpp"

namespace nufactor {
namespace {

constexpr std::array<char, 8> kCacheMagic = {'N', 'U', 'F', 'P', 'R', 'I', 'M', '1'};
constexpr std::uint64_t kPrimeSegmentBytes = std::uint64_t{1} << 18;

__extension__ typedef unsigned __int128 u128;

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Odd-only segmented sieve of (lo, hi].
void sieve_primes(std::uint64_t lo, std::uint64_t hi,
                  const std::function<void(std::span<const std::uint64_t>)>& sink) {
  if (hi <= lo) return;
  const auto base = small_primes(isqrt(hi));
  std::vector<std::uint64_t> block;
  if (lo < 2 && hi >= 2) {
    block.push_back(2);
    sink(block);
  }
  // Odd numbers in the window [start, start + 2*bytes).
  std::uint64_t start = std::max<std::uint64_t>(3, (lo + 1) | 1);
  std::vector<std::uint8_t> composite;
  while (start <= hi) {
    const std::uint64_t span_len =
        std::min<std::uint64_t>(kPrimeSegmentBytes, (hi - start) / 2 + 1);
    const std::uint64_t end = start + 2 * (span_len - 1);  // last odd in block
    composite.assign(span_len, 0);
    for (std::size_t k = 1; k < base.size(); ++k) {
      const std::uint64_t p = base[k];
      if (p * p > end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      if ((first & 1) == 0) first += p;
      for (std::uint64_t m = first; m <= end; m += 2 * p) composite[(m - start) / 2] = 1;
    }
    block.clear();
    for (std::uint64_t i = 0; i < span_len; ++i) {
      if (!composite[i]) block.push_back(start + 2 * i);
    }
    if (!block.empty()) sink(block);
    if (end >= hi - 1) break;
    start = end + 2;
  }
}

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(bytes.data(), 8);
}

bool get_u64(std::istream& is, std::uint64_t& v) {
  std::array<unsigned char, 8> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), 8)) return false;
  v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return true;
}

}  // namespace

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t PrimeTable::count_up_to(std::uint64_t n) const {
  return static_cast<std::uint64_t>(std::upper_bound(primes.begin(), primes.end(), n) -
                                    primes.begin());
}

PrimeTable build_prime_table(std::uint64_t limit) {
  if (limit < 2 || limit > kMaxPrimeTableLimit) {
    throw BoundsError("prime table limit must lie in [2, 2^40], got " + std::to_string(limit));
  }
  PrimeTable table;
  table.limit = limit;
  const double estimate = static_cast<double>(limit) / std::log(static_cast<double>(limit));
  table.primes.reserve(static_cast<std::size_t>(estimate * 1.2) + 16);
  sieve_primes(0, limit, [&](std::span<const std::uint64_t> block) {
    table.primes.insert(table.primes.end(), block.begin(), block.end());
  });
  return table;
}

PrimeTable prime_table_for(std::uint64_t n) {
  return build_prime_table(std::max<std::uint64_t>(2, isqrt(n)));
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::span<const std::uint64_t>)>& sink) {
  sieve_primes(lo, hi, sink);
}

void save_prime_table(const PrimeTable& table, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open prime cache for writing: " + path.string());
  os.write(kCacheMagic.data(), kCacheMagic.size());
  put_u64(os, table.limit);
  std::uint64_t prev = 0;
  for (std::uint64_t p : table.primes) {
    put_u64(os, p - prev);
    prev = p;
  }
  if (!os) throw IoError("failed writing prime cache: " + path.string());
}

PrimeTable load_prime_table(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open prime cache: " + path.string());
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kCacheMagic) {
    throw IoError("bad prime cache magic: " + path.string());
  }
  PrimeTable table;
  if (!get_u64(is, table.limit)) throw IoError("truncated prime cache: " + path.string());
  std::uint64_t gap = 0;
  std::uint64_t p = 0;
  while (get_u64(is, gap)) {
    if (gap == 0) throw IoError("corrupt prime cache (zero gap): " + path.string());
    p += gap;
    table.primes.push_back(p);
  }
  if (!table.primes.empty() && table.primes.back() > table.limit) {
    throw IoError("corrupt prime cache (prime above limit): " + path.string());
  }
  return table;
}

PrimeTable cached_prime_table(std::uint64_t limit, const std::filesystem::path& dir) {
  if (dir.empty()) return build_prime_table(limit);
  const auto path = dir / ("primes-" + std::to_string(limit) + ".bin");
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      auto table = load_prime_table(path);
      if (table.limit == limit) return table;
    } catch (const IoError&) {
      // fall through and rebuild
    }
  }
  auto table = build_prime_table(limit);
  try {
    std::filesystem::create_directories(dir, ec);
    save_prime_table(table, path);
  } catch (const IoError&) {
    // the cache is an optimisation only
  }
  return table;
}

FactoredInterval::FactoredInterval(std::uint64_t lo, std::uint64_t hi,
                                   std::vector<FactorRecord> records)
    : lo_(lo), hi_(hi), records_(std::move(records)) {
  if (records_.size() != hi - lo) throw PreconditionError("record count must equal hi - lo");
}

const FactorRecord& FactoredInterval::at_integer(std::uint64_t n) const {
  if (n <= lo_ || n > hi_) throw BoundsError("integer outside the sieved interval");
  return records_[n - lo_ - 1];
}

void check_sieve_range(std::uint64_t x, std::uint64_t y, const PrimeTable& table) {
  if (y < 1) throw PreconditionError("interval length y must be at least 1");
  if (x > UINT64_MAX - y) throw BoundsError("x + y overflows 64 bits");
  const std::uint64_t top = x + y;
  if ((static_cast<u128>(table.limit) + 1) * (table.limit + 1) <= top) {
    throw PreconditionError("prime table limit " + std::to_string(table.limit) +
                            " too small to factor integers up to " + std::to_string(top));
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> plan_segments(std::uint64_t x,
                                                                    std::uint64_t y,
                                                                    std::uint64_t width) {
  width = std::max<std::uint64_t>(width, 1);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  out.reserve(y / width + 1);
  for (std::uint64_t done = 0; done < y;) {
    const std::uint64_t step = std::min(width, y - done);
    out.emplace_back(x + done, x + done + step);
    done += step;
  }
  return out;
}

namespace {

// First index i (n = lo + 1 + i) with d | n, or `len` when there is none.
inline std::uint64_t first_multiple_index(std::uint64_t lo, std::uint64_t len, std::uint64_t d) {
  const u128 first = (static_cast<u128>(lo / d) + 1) * d;
  const u128 idx = first - lo - 1;
  return idx >= len ? len : static_cast<std::uint64_t>(idx);
}

// Shared sieve core. OnPrime(i, p) fires for every n divisible by p, and
// OnPower(i, p, k) for every n divisible by p^k, k >= 2, in ascending p.
template <class OnPrime, class OnPower>
void sweep(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table, OnPrime&& on_prime,
           OnPower&& on_power) {
  const std::uint64_t len = hi - lo;
  const std::uint64_t root = isqrt(hi);
  for (std::uint64_t p : table.primes) {
    if (p > root) break;
    for (std::uint64_t i = first_multiple_index(lo, len, p); i < len; i += p) on_prime(i, p);
    std::uint64_t pk = p;
    unsigned k = 1;
    while (pk <= hi / p) {
      pk *= p;
      ++k;
      for (std::uint64_t i = first_multiple_index(lo, len, pk); i < len; i += pk) {
        on_power(i, p, k);
      }
    }
  }
}

}  // namespace

void sieve_segment(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table,
                   std::span<FactorRecord> out) {
  const std::uint64_t len = hi - lo;
  thread_local std::vector<std::uint64_t> found;
  found.assign(len, 1);
  for (auto& r : out) r = FactorRecord{};
  sweep(
      lo, hi, table,
      [&](std::uint64_t i, std::uint64_t p) {
        auto& r = out[i];
        if (r.omega++ == 0) r.least_prime_factor = p;
        ++r.big_omega;
        found[i] *= p;
      },
      [&](std::uint64_t i, std::uint64_t p, unsigned k) {
        auto& r = out[i];
        ++r.big_omega;
        found[i] *= p;
        r.powerful_part *= (k == 2) ? p * p : p;
      });
  for (std::uint64_t i = 0; i < len; ++i) {
    auto& r = out[i];
    const std::uint64_t cofactor = (lo + 1 + i) / found[i];
    if (cofactor > 1) {
      if (r.omega++ == 0) r.least_prime_factor = cofactor;
      ++r.big_omega;
    }
    r.squarefree = r.omega == r.big_omega;
  }
}

FactoredInterval sieve_interval(std::uint64_t x, std::uint64_t y, const PrimeTable& table,
                                const SieveOptions& options) {
  check_sieve_range(x, y, table);
  std::vector<FactorRecord> records(y);
  const auto segments = plan_segments(x, y, options.segment_width);
  parallel_map<char>(segments.size(), options.threads, [&](std::size_t s) {
    const auto [lo, hi] = segments[s];
    sieve_segment(lo, hi, table, std::span<FactorRecord>(records).subspan(lo - x, hi - lo));
    return char{0};
  });
  return FactoredInterval(x, x + y, std::move(records));
}

FactorizedSegment::FactorizedSegment(std::uint64_t lo, std::uint64_t hi)
    : lo_(lo), hi_(hi), records_(hi - lo), factors_((hi - lo) * kMaxDistinct), counts_(hi - lo) {}

void factorize_segment(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table,
                       FactorizedSegment& out) {
  const std::uint64_t len = hi - lo;
  out.lo_ = lo;
  out.hi_ = hi;
  out.records_.assign(len, FactorRecord{});
  out.counts_.assign(len, 0);
  out.factors_.resize(len * FactorizedSegment::kMaxDistinct);
  thread_local std::vector<std::uint64_t> found;
  found.assign(len, 1);
  auto* factors = out.factors_.data();
  auto* counts = out.counts_.data();
  sweep(
      lo, hi, table,
      [&](std::uint64_t i, std::uint64_t p) {
        auto& r = out.records_[i];
        if (r.omega++ == 0) r.least_prime_factor = p;
        ++r.big_omega;
        found[i] *= p;
        factors[i * FactorizedSegment::kMaxDistinct + counts[i]++] = {p, 1};
      },
      [&](std::uint64_t i, std::uint64_t p, unsigned k) {
        auto& r = out.records_[i];
        ++r.big_omega;
        found[i] *= p;
        r.powerful_part *= (k == 2) ? p * p : p;
        ++factors[i * FactorizedSegment::kMaxDistinct + counts[i] - 1].exponent;
      });
  for (std::uint64_t i = 0; i < len; ++i) {
    auto& r = out.records_[i];
    const std::uint64_t cofactor = (lo + 1 + i) / found[i];
    if (cofactor > 1) {
      if (r.omega++ == 0) r.least_prime_factor = cofactor;
      ++r.big_omega;
      factors[i * FactorizedSegment::kMaxDistinct + counts[i]++] = {cofactor, 1};
    }
    r.squarefree = r.omega == r.big_omega;
  }
}

std::vector<PrimePower> factor_by_trial_division(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw DomainError("cannot factor 0");
  if ((static_cast<u128>(table.limit) + 1) * (table.limit + 1) <= n) {
    throw PreconditionError("prime table too small to factor " + std::to_string(n));
  }
  std::vector<PrimePower> out;
  for (std::uint64_t p : table.primes) {
    if (static_cast<u128>(p) * p > n) break;
    if (n % p != 0) continue;
    PrimePower pp{p, 0};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

}  // namespace nufactor
