#pragma once

// Slow reference implementations. Nothing here calls the continued-fraction
// or class-reduction solvers; the oracles exist to be compared against them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k3hilb/ample_cone.hpp"
#include "k3hilb/error.hpp"
#include "k3hilb/integer.hpp"
#include "k3hilb/ns_lattice.hpp"
#include "k3hilb/pell.hpp"

namespace k3hilb::oracle {

namespace detail {

// Local square roots so that the oracle does not share arithmetic helpers
// with the solvers it checks.
inline std::uint64_t root_u64(std::uint64_t n) {
  std::uint64_t lo = 0, hi = std::uint64_t{1} << 32;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (mid * mid <= n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Floating estimate corrected to the exact floor root; n < 2^62.
inline std::uint64_t root_u64_fast(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline BigInt root_big(const BigInt& n) {
  if (n < 2) return n;
  BigInt lo = 0, hi = BigInt(1) << (msb(n) / 2 + 1);
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    if (mid * mid <= n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

inline bool fits_u64_loop(std::int64_t D, std::int64_t N, std::uint64_t y_max) {
  // D * y_max^2 + |N| < 2^62
  if (y_max > (std::uint64_t{1} << 31)) return false;
  const unsigned __int128 bound = static_cast<unsigned __int128>(D) * y_max * y_max +
                                  static_cast<unsigned __int128>(N < 0 ? -N : N);
  return bound < (static_cast<unsigned __int128>(1) << 62);
}

}  // namespace detail

/// Every (x, y) with 0 <= y <= y_max, x >= 0 and x^2 - D y^2 = N, sorted by x.
inline std::vector<pell::PellSolution> brute_pell(std::int64_t D, std::int64_t N, std::uint64_t y_max) {
  if (D < 1) throw Error(ErrorKind::InvalidInput, "brute_pell needs D >= 1");
  std::vector<pell::PellSolution> out;
  if (detail::fits_u64_loop(D, N, y_max)) {
    for (std::uint64_t y = 0; y <= y_max; ++y) {
      const std::int64_t rhs = N + D * static_cast<std::int64_t>(y * y);
      if (rhs < 0) continue;
      const std::uint64_t x = detail::root_u64_fast(static_cast<std::uint64_t>(rhs));
      if (x * x == static_cast<std::uint64_t>(rhs)) out.push_back({BigInt(x), BigInt(y), D, N});
    }
  } else {
    for (BigInt y = 0; y <= y_max; ++y) {
      const BigInt rhs = N + D * y * y;
      if (rhs < 0) continue;
      const BigInt x = detail::root_big(rhs);
      if (x * x == rhs) out.push_back({x, y, D, N});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
  return out;
}

/// Smallest positive solution with y <= y_max, by exhaustive search.
inline std::optional<pell::PellSolution> brute_minimal(std::int64_t D, std::int64_t N, std::uint64_t y_max) {
  for (auto& sol : brute_pell(D, N, y_max)) {
    if (sol.x > 0 && sol.y > 0) return sol;
  }
  return std::nullopt;
}

/// Every (x, y) with 0 < x, y <= coord_max, 2t x^2 - 2 y^2 = 2 and x h - y delta ample.
inline std::vector<NSClass> brute_square2_ample(std::int64_t t, std::uint64_t coord_max) {
  if (t < 1) throw Error(ErrorKind::InvalidInput, "brute_square2_ample needs t >= 1");
  const Cone cone = compute_cone(t).cone;
  std::vector<NSClass> out;
  for (std::uint64_t x = 1; x <= coord_max; ++x) {
    const BigInt rhs = BigInt(t) * x * x - 1;  // y^2
    if (rhs <= 0) continue;
    const BigInt y = detail::root_big(rhs);
    if (y * y != rhs || y > coord_max) continue;
    NSClass c{BigInt(x), y};
    if (is_ample(cone, c)) out.push_back(std::move(c));
  }
  return out;
}

struct ChakravalaResult {
  pell::PellSolution plus_one;
  std::optional<pell::PellSolution> minus_one;
};

/// Bhaskara's cyclic method for x^2 - D y^2 = 1. The first triple of norm -1
/// met on the way, if any, is reported as the minimal solution of the -1
/// equation.
inline ChakravalaResult chakravala(std::int64_t D) {
  if (D < 2) throw Error(ErrorKind::InvalidInput, "chakravala needs D >= 2");
  const std::int64_t root = static_cast<std::int64_t>(detail::root_u64(static_cast<std::uint64_t>(D)));
  if (root * root == D) throw Error(ErrorKind::SquareRadicand, "chakravala on a square");

  const BigInt d = D;
  std::int64_t start = root;
  if ((root + 1) * (root + 1) - D < D - root * root) start = root + 1;
  BigInt a = start, b = 1;
  std::int64_t k = start * start - D;
  std::optional<pell::PellSolution> minus_one;

  const auto mod = [](const BigInt& v, std::int64_t m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
  };
  const auto inverse_mod = [](std::int64_t v, std::int64_t m) {
    std::int64_t r0 = m, r1 = v, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t q = r0 / r1;
      std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
      std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    ensure(r0 == 1, "chakravala: b is not invertible modulo k");
    return ((s0 % m) + m) % m;
  };

  for (;;) {
    if (k == 1) return {{abs(a), abs(b), D, 1}, minus_one};
    if (k == -1) {
      if (!minus_one) minus_one = pell::PellSolution{abs(a), abs(b), D, -1};
      BigInt na = a * a + d * b * b;
      BigInt nb = 2 * a * b;
      a = std::move(na);
      b = std::move(nb);
      k = 1;
      continue;
    }
    const std::int64_t abs_k = k < 0 ? -k : k;
    const std::int64_t residue = mod(-BigInt(mod(a, abs_k)) * inverse_mod(mod(b, abs_k), abs_k), abs_k);
    const std::int64_t base = root - ((root - residue) % abs_k + abs_k) % abs_k;
    std::int64_t m = 0;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t candidate : {base - abs_k, base, base + abs_k, base + 2 * abs_k}) {
      if (candidate <= 0) continue;
      const std::int64_t gap = candidate * candidate > D ? candidate * candidate - D : D - candidate * candidate;
      if (gap < best) {
        best = gap;
        m = candidate;
      }
    }
    BigInt na = a * m + d * b;
    BigInt nb = a + b * m;
    ensure(na % abs_k == 0 && nb % abs_k == 0, "chakravala composition is not integral");
    a = na / abs_k;
    b = nb / abs_k;
    ensure((m * m - D) % k == 0, "chakravala norm is not integral");
    k = (m * m - D) / k;
  }
}

}  // namespace k3hilb::oracle
