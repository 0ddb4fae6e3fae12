#pragma once

// Pell equations x^2 - D y^2 = N over the integers.
//
// The +1 and -1 equations are solved from the continued fraction of sqrt(D).
// The general equation (small |N|) is solved by reducing every residue class
// of solutions to the continued-fraction expansion of (z + sqrt(D)) / |m|,
// and, where the classical fundamental-solution bound is small enough, by an
// exhaustive search below that bound. Both routes must agree.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3hilb/error.hpp"
#include "k3hilb/integer.hpp"

namespace k3hilb::pell {

/// sqrt(t) = [a0; a1, ..., as, a1, ...]; `period` holds (a1, ..., as).
struct ContinuedFraction {
  std::int64_t t = 0;
  std::int64_t a0 = 0;
  std::vector<std::int64_t> period;

  std::size_t s() const noexcept { return period.size(); }

  /// a_k for any k >= 0, wrapping through the period.
  std::int64_t partial_quotient(std::size_t k) const {
    return k == 0 ? a0 : period[(k - 1) % period.size()];
  }

  void validate() const {
    if (t < 2 || is_perfect_square(t)) {
      throw Error(ErrorKind::InvalidInput, "continued fraction radicand must be a non-square >= 2");
    }
    if (a0 != isqrt(t)) throw Error(ErrorKind::InvalidInput, "a0 is not floor(sqrt(t))");
    if (period.empty()) throw Error(ErrorKind::InvalidInput, "empty period");
    if (period.back() != 2 * a0) throw Error(ErrorKind::InvalidInput, "period does not end in 2*a0");
    for (auto a : period) {
      if (a <= 0) throw Error(ErrorKind::InvalidInput, "partial quotients must be positive");
    }
  }

  bool operator==(const ContinuedFraction&) const = default;
};

struct Convergent {
  BigInt x;
  BigInt y;
  bool operator==(const Convergent&) const = default;
};

/// A solution (x, y) of x^2 - D y^2 = N.
struct PellSolution {
  BigInt x;
  BigInt y;
  std::int64_t D = 0;
  std::int64_t N = 0;

  BigInt norm() const { return x * x - BigInt(D) * y * y; }
  bool satisfies() const { return norm() == N; }
  bool positive() const { return x > 0 && y > 0; }

  bool operator==(const PellSolution&) const = default;
};

namespace detail {

inline void require_radicand(std::int64_t D) {
  if (D < 2) throw Error(ErrorKind::InvalidInput, "radicand must be >= 2, got " + std::to_string(D));
  if (is_perfect_square(D)) {
    throw Error(ErrorKind::SquareRadicand, std::to_string(D) + " is a perfect square");
  }
}

}  // namespace detail

/// Expansion of sqrt(t). The period ends when the surd state (m, d) of
/// (m + sqrt(t)) / d recurs; the first a_k equal to 2*a0 must close it.
inline ContinuedFraction sqrt_cf(std::int64_t t) {
  detail::require_radicand(t);
  ContinuedFraction cf;
  cf.t = t;
  cf.a0 = isqrt(t);

  std::int64_t m = 0;
  std::int64_t d = 1;
  std::int64_t a = cf.a0;
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
  for (std::size_t k = 1;; ++k) {
    m = d * a - m;
    ensure((t - m * m) % d == 0, "surd recurrence lost integrality");
    d = (t - m * m) / d;
    a = (cf.a0 + m) / d;
    const auto [it, inserted] = seen.try_emplace({m, d}, k);
    if (!inserted) {
      ensure(it->second == 1, "expansion of sqrt(t) is not purely periodic after a0");
      break;
    }
    cf.period.push_back(a);
  }

  const auto first_closing = std::find(cf.period.begin(), cf.period.end(), 2 * cf.a0);
  ensure(first_closing == cf.period.end() - 1,
         "state repetition and the 2*a0 rule disagree on the period of sqrt(" + std::to_string(t) + ")");
  cf.validate();
  return cf;
}

/// Numerator and denominator of the k-th convergent.
inline Convergent convergent(const ContinuedFraction& cf, std::size_t k) {
  cf.validate();
  BigInt x_prev2 = 0, x_prev1 = 1;
  BigInt y_prev2 = 1, y_prev1 = 0;
  for (std::size_t i = 0; i <= k; ++i) {
    const BigInt a = cf.partial_quotient(i);
    BigInt x = a * x_prev1 + x_prev2;
    BigInt y = a * y_prev1 + y_prev2;
    x_prev2 = std::move(x_prev1);
    x_prev1 = std::move(x);
    y_prev2 = std::move(y_prev1);
    y_prev1 = std::move(y);
  }
  return {x_prev1, y_prev1};
}

/// Minimal positive solution of x^2 - t y^2 = 1.
inline PellSolution minimal_solution_p1(std::int64_t t) {
  const auto cf = sqrt_cf(t);
  const std::size_t k = cf.s() % 2 == 0 ? cf.s() - 1 : 2 * cf.s() - 1;
  auto [x, y] = convergent(cf, k);
  PellSolution sol{std::move(x), std::move(y), t, 1};
  ensure(sol.satisfies(), "convergent does not solve x^2 - t y^2 = 1");
  return sol;
}

/// Minimal positive solution of x^2 - t y^2 = -1; absent when the period is even.
inline std::optional<PellSolution> minimal_solution_pm1(std::int64_t t) {
  const auto cf = sqrt_cf(t);
  if (cf.s() % 2 == 0) return std::nullopt;
  auto [x, y] = convergent(cf, cf.s() - 1);
  PellSolution sol{std::move(x), std::move(y), t, -1};
  ensure(sol.satisfies(), "convergent does not solve x^2 - t y^2 = -1");
  return sol;
}

/// (x_b + y_b sqrt(D))^n for a unit base (norm +1 or -1). Negative n uses the
/// conjugate divided by the norm.
inline PellSolution solution_power(const PellSolution& base, std::int64_t n) {
  const BigInt base_norm = base.norm();
  if (base_norm != 1 && base_norm != -1) {
    throw Error(ErrorKind::InvalidNorm, "solution_power needs a base of norm +1 or -1");
  }
  BigInt bx = base.x, by = base.y;
  if (n < 0) {
    bx *= base_norm;
    by *= -base_norm;
  }
  const BigInt D = base.D;
  BigInt x = 1, y = 0;
  const std::int64_t steps = n < 0 ? -n : n;
  for (std::int64_t i = 0; i < steps; ++i) {
    BigInt nx = x * bx + D * y * by;
    BigInt ny = x * by + y * bx;
    x = std::move(nx);
    y = std::move(ny);
  }
  const std::int64_t result_norm = (base_norm == -1 && steps % 2 == 1) ? -1 : 1;
  PellSolution out{std::move(x), std::move(y), base.D, result_norm};
  ensure(out.satisfies(), "unit power has the wrong norm");
  return out;
}

/// Solutions of x^2 - D y^2 = N beyond the fundamental unit search.
namespace detail {

struct Unit {
  BigInt u;
  BigInt v;
};

inline void require_general(std::int64_t D, std::int64_t N) {
  require_radicand(D);
  if (N == 0) throw Error(ErrorKind::UnsupportedN, "N = 0 is not supported");
}

/// Sign of x + y sqrt(D) for (x, y) != (0, 0), given N = x^2 - D y^2 != 0.
inline int surd_sign(const BigInt& x, const BigInt& y, std::int64_t N) {
  if (x >= 0 && y >= 0) return 1;
  if (x <= 0 && y <= 0) return -1;
  return N > 0 ? sign(x) : sign(y);
}

/// The smallest element of {w * unit^n : n in Z} (w > 0) that is a positive
/// solution. Positivity is upward closed along the orbit, so walk down while
/// the predecessor is still positive, then up until positive.
inline std::pair<BigInt, BigInt> smallest_positive_in_orbit(BigInt x, BigInt y, std::int64_t D, std::int64_t N,
                                                            const Unit& unit) {
  if (surd_sign(x, y, N) < 0) {
    x = -x;
    y = -y;
  }
  const BigInt d = D;
  const auto down = [&](const BigInt& a, const BigInt& b) {
    return std::pair<BigInt, BigInt>{a * unit.u - d * b * unit.v, b * unit.u - a * unit.v};
  };
  const auto up = [&](const BigInt& a, const BigInt& b) {
    return std::pair<BigInt, BigInt>{a * unit.u + d * b * unit.v, b * unit.u + a * unit.v};
  };
  for (;;) {
    auto [px, py] = down(x, y);
    if (!(px > 0 && py > 0)) break;
    x = std::move(px);
    y = std::move(py);
  }
  while (!(x > 0 && y > 0)) {
    std::tie(x, y) = up(x, y);
  }
  return {x, y};
}

/// One representative of every class of solutions, found by expanding
/// (z + sqrt(D)) / |m| for each square divisor f^2 of N (m = N / f^2) and each
/// root z of z^2 = D (mod |m|). Every reported pair is checked exactly.
inline std::vector<std::pair<BigInt, BigInt>> class_representatives(std::int64_t D, std::int64_t N) {
  std::vector<std::pair<BigInt, BigInt>> reps;
  const std::int64_t abs_n = N < 0 ? -N : N;
  const std::int64_t root_d = isqrt(D);
  const BigInt big_d = D;

  for (std::int64_t f = 1; f * f <= abs_n; ++f) {
    if (abs_n % (f * f) != 0) continue;
    const std::int64_t m = N / (f * f);
    const std::int64_t abs_m = m < 0 ? -m : m;
    const BigInt target = m;

    for (std::int64_t z = -((abs_m - 1) / 2); z <= abs_m / 2; ++z) {
      if (((z * z - D) % abs_m + abs_m) % abs_m != 0) continue;

      std::int64_t P = z;
      std::int64_t Q = abs_m;
      BigInt g_prev2 = -P, g_prev1 = Q;
      BigInt b_prev2 = 1, b_prev1 = 0;
      if (g_prev1 * g_prev1 == target) reps.emplace_back(f * g_prev1, BigInt(0));

      std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
      std::optional<std::size_t> stop_at;
      for (std::size_t i = 0;; ++i) {
        const auto [it, inserted] = seen.try_emplace({P, Q}, i);
        if (!inserted && !stop_at) stop_at = i + (i - it->second);
        if (stop_at && i >= *stop_at) break;

        const std::int64_t a =
            Q > 0 ? floor_div(P + root_d, Q) : -floor_div(P + root_d, -Q) - 1;
        BigInt g = a * g_prev1 + g_prev2;
        BigInt b = a * b_prev1 + b_prev2;
        if (g * g - big_d * b * b == target) reps.emplace_back(f * g, f * b);

        const std::int64_t next_p = a * Q - P;
        ensure((D - next_p * next_p) % Q == 0, "class expansion lost integrality");
        const std::int64_t next_q = (D - next_p * next_p) / Q;
        P = next_p;
        Q = next_q;
        g_prev2 = std::move(g_prev1);
        g_prev1 = std::move(g);
        b_prev2 = std::move(b_prev1);
        b_prev1 = std::move(b);
      }
    }
  }
  return reps;
}

/// Normalized, de-duplicated class leaders sorted by x.
inline std::vector<std::pair<BigInt, BigInt>> normalize_classes(const std::vector<std::pair<BigInt, BigInt>>& reps,
                                                                std::int64_t D, std::int64_t N, const Unit& unit) {
  std::vector<std::pair<BigInt, BigInt>> out;
  for (const auto& [x, y] : reps) {
    ensure(x * x - BigInt(D) * y * y == N, "class representative does not solve the equation");
    out.push_back(smallest_positive_in_orbit(x, y, D, N, unit));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Unit fundamental_unit(std::int64_t D) {
  auto sol = minimal_solution_p1(D);
  return {std::move(sol.x), std::move(sol.y)};
}

}  // namespace detail

/// Classical bound on y for the fundamental solution of each class of
/// x^2 - D y^2 = N, rounded up and padded by one:
/// ceil(v * sqrt(|N| / (2 (u - 1)))) + 1 with (u, v) the fundamental unit.
/// Using u - 1 for either sign of N covers both classical forms.
inline BigInt nagell_bound(std::int64_t D, std::int64_t N) {
  detail::require_general(D, N);
  const auto unit = detail::fundamental_unit(D);
  const BigInt numerator = unit.v * unit.v * BigInt(N < 0 ? -N : N);
  const BigInt denominator = 2 * (unit.u - 1);
  const BigInt quotient = (numerator + denominator - 1) / denominator;
  BigInt r = isqrt(quotient);
  if (r * r < quotient) ++r;
  return r + 1;
}

/// Exhaustive search for class leaders with 0 <= y <= y_max.
inline std::vector<std::pair<BigInt, BigInt>> bounded_class_search(std::int64_t D, std::int64_t N,
                                                                   const BigInt& y_max) {
  detail::require_general(D, N);
  std::vector<std::pair<BigInt, BigInt>> found;
  const BigInt d = D;
  for (BigInt y = 0; y <= y_max; ++y) {
    const BigInt rhs = N + d * y * y;
    if (rhs < 0 || !is_perfect_square(rhs)) continue;
    const BigInt x = isqrt(rhs);
    found.emplace_back(x, y);
    if (x != 0) found.emplace_back(-x, y);
  }
  return found;
}

/// Largest bound for which minimal_solution_general also runs the exhaustive
/// search and insists on agreement.
inline constexpr std::int64_t kBoundedSearchLimit = 1 << 16;

/// Positive solution of x^2 - D y^2 = N with minimal x, or absent.
inline std::optional<PellSolution> minimal_solution_general(std::int64_t D, std::int64_t N) {
  detail::require_general(D, N);
  const auto unit = detail::fundamental_unit(D);
  const auto leaders = detail::normalize_classes(detail::class_representatives(D, N), D, N, unit);

  const BigInt bound = nagell_bound(D, N);
  if (bound <= kBoundedSearchLimit) {
    const auto searched = detail::normalize_classes(bounded_class_search(D, N, bound), D, N, unit);
    ensure(searched == leaders, "bounded search and class reduction disagree for D=" + std::to_string(D) +
                                    ", N=" + std::to_string(N));
  }

  if (leaders.empty()) return std::nullopt;
  PellSolution sol{leaders.front().first, leaders.front().second, D, N};
  ensure(sol.satisfies() && sol.positive(), "minimal general solution failed verification");
  return sol;
}

inline bool solvable_general(std::int64_t D, std::int64_t N) {
  return minimal_solution_general(D, N).has_value();
}

/// The first `count` positive solutions in increasing x.
inline std::vector<PellSolution> positive_solutions(std::int64_t D, std::int64_t N, std::size_t count) {
  detail::require_general(D, N);
  const auto unit = detail::fundamental_unit(D);
  auto frontier = detail::normalize_classes(detail::class_representatives(D, N), D, N, unit);
  std::vector<PellSolution> out;
  if (frontier.empty()) return out;
  const BigInt d = D;
  while (out.size() < count) {
    auto next = std::min_element(frontier.begin(), frontier.end());
    out.push_back({next->first, next->second, D, N});
    const BigInt x = next->first * unit.u + d * next->second * unit.v;
    const BigInt y = next->first * unit.v + next->second * unit.u;
    *next = {x, y};
  }
  return out;
}

}  // namespace k3hilb::pell
