#include <cstdint>
#include <limits>
#include <utility>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "k3hilb/oracle.hpp"
#include "k3hilb/pell.hpp"

namespace k3hilb::pell {
namespace {

std::vector<std::int64_t> non_squares(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = lo; t <= hi; ++t) {
    if (!is_perfect_square(t)) out.push_back(t);
  }
  return out;
}

// Continued fraction of a rational p/q, used to read off the expansion of a
// high-precision rational approximation of sqrt(t). Independent of the surd
// recurrence used by sqrt_cf.
std::vector<BigInt> rational_cf(BigInt p, BigInt q, std::size_t terms) {
  std::vector<BigInt> out;
  while (q != 0 && out.size() < terms) {
    out.push_back(p / q);
    BigInt r = p % q;
    p = q;
    q = r;
  }
  return out;
}

TEST(SqrtCf, Examples) {
  auto cf2 = sqrt_cf(2);
  EXPECT_EQ(cf2.a0, 1);
  EXPECT_EQ(cf2.period, std::vector<std::int64_t>{2});
  EXPECT_EQ(cf2.s(), 1u);

  auto cf13 = sqrt_cf(13);
  EXPECT_EQ(cf13.a0, 3);
  EXPECT_EQ(cf13.period, (std::vector<std::int64_t>{1, 1, 1, 1, 6}));
  EXPECT_EQ(cf13.s(), 5u);
}

TEST(SqrtCf, Errors) {
  try {
    sqrt_cf(4);
    FAIL() << "square radicand accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SquareRadicand);
  }
  for (std::int64_t bad : {1, 0, -3}) {
    try {
      sqrt_cf(bad);
      FAIL() << "radicand " << bad << " accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    }
  }
}

TEST(SqrtCf, InvalidExpansionRejected) {
  ContinuedFraction cf{13, 3, {1, 1, 1, 1, 5}};
  EXPECT_THROW(cf.validate(), Error);
  ContinuedFraction empty{13, 3, {}};
  EXPECT_THROW(empty.validate(), Error);
  ContinuedFraction wrong_a0{13, 4, {1, 1, 1, 1, 8}};
  EXPECT_THROW(wrong_a0.validate(), Error);
}

TEST(SqrtCf, AgreesWithHighPrecisionRationalExpansion) {
  const BigInt scale = BigInt(1) << 512;
  for (auto t : non_squares(2, 500)) {
    const auto cf = sqrt_cf(t);
    const std::size_t terms = 2 * cf.s() + 1;
    const auto approx = rational_cf(isqrt(BigInt(t) * scale * scale), scale, terms + 1);
    ASSERT_GE(approx.size(), terms) << "t=" << t;
    for (std::size_t k = 0; k < terms; ++k) {
      ASSERT_EQ(approx[k], cf.partial_quotient(k)) << "t=" << t << " k=" << k;
    }
  }
}

TEST(SqrtCf, PeriodIsPalindromicBeforeTheClosingTerm) {
  for (auto t : non_squares(2, 1000)) {
    const auto cf = sqrt_cf(t);
    const std::size_t n = cf.s() - 1;
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(cf.period[i], cf.period[n - 1 - i]) << "t=" << t;
  }
}

TEST(Convergent, Examples) {
  EXPECT_EQ(convergent(sqrt_cf(2), 1), (Convergent{3, 2}));
  EXPECT_EQ(convergent(sqrt_cf(13), 4), (Convergent{18, 5}));
  for (std::int64_t t : {2, 3, 13, 61}) {
    const auto cf = sqrt_cf(t);
    EXPECT_EQ(convergent(cf, 0), (Convergent{cf.a0, 1}));
  }
}

TEST(Convergent, AlwaysCoprime) {
  for (auto t : non_squares(2, 200)) {
    const auto cf = sqrt_cf(t);
    for (std::size_t k = 0; k < 3 * cf.s() + 2; ++k) {
      const auto c = convergent(cf, k);
      ASSERT_EQ(gcd(c.x, c.y), 1) << "t=" << t << " k=" << k;
    }
  }
}

TEST(MinimalSolution, PlusOneExamples) {
  EXPECT_EQ(minimal_solution_p1(2), (PellSolution{3, 2, 2, 1}));
  EXPECT_EQ(minimal_solution_p1(10), (PellSolution{19, 6, 10, 1}));
  EXPECT_EQ(minimal_solution_p1(3), (PellSolution{2, 1, 3, 1}));
  // exponential growth; 64-bit arithmetic would overflow here
  const auto big = minimal_solution_p1(61);
  EXPECT_EQ(big.x, BigInt("1766319049"));
  EXPECT_EQ(big.y, BigInt("226153980"));
  const auto bigger = minimal_solution_p1(421);
  EXPECT_TRUE(bigger.satisfies());
  EXPECT_GT(bigger.x, BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(MinimalSolution, MinusOneExamples) {
  EXPECT_EQ(minimal_solution_pm1(2), (PellSolution{1, 1, 2, -1}));
  EXPECT_EQ(minimal_solution_pm1(10), (PellSolution{3, 1, 10, -1}));
  EXPECT_EQ(minimal_solution_pm1(3), std::nullopt);
  EXPECT_EQ(minimal_solution_pm1(13), (PellSolution{18, 5, 13, -1}));
}

TEST(MinimalSolution, AgreesWithBruteForce) {
  for (auto t : non_squares(2, 500)) {
    const auto p1 = minimal_solution_p1(t);
    if (p1.y > 200'000) continue;  // the exhaustive sweep up to larger y lives in the acceptance suite
    const auto y_max = static_cast<std::uint64_t>(p1.y);
    ASSERT_EQ(oracle::brute_minimal(t, 1, y_max), p1) << "t=" << t;
    ASSERT_EQ(oracle::brute_minimal(t, -1, y_max), minimal_solution_pm1(t)) << "t=" << t;
  }
}

TEST(MinimalSolution, UnitIsSquareOfMinusOneSolution) {
  for (auto t : non_squares(2, 500)) {
    const auto m1 = minimal_solution_pm1(t);
    if (!m1) continue;
    const auto p1 = minimal_solution_p1(t);
    ASSERT_EQ(p1.x, 2 * m1->x * m1->x + 1) << "t=" << t;
    ASSERT_EQ(p1.y, 2 * m1->x * m1->y) << "t=" << t;
  }
}

TEST(SolutionPower, Examples) {
  EXPECT_EQ(solution_power({1, 1, 2, -1}, 2), (PellSolution{3, 2, 2, 1}));
  EXPECT_EQ(solution_power({3, 1, 10, -1}, 2), (PellSolution{19, 6, 10, 1}));
  EXPECT_EQ(solution_power({7, 4, 3, 1}, 0), (PellSolution{1, 0, 3, 1}));
  EXPECT_EQ(solution_power({1, 1, 2, -1}, 0), (PellSolution{1, 0, 2, 1}));
}

TEST(SolutionPower, NegativeExponentInverts) {
  const PellSolution z{3, 1, 10, -1};
  const auto inv = solution_power(z, -1);
  EXPECT_EQ(inv, (PellSolution{-3, 1, 10, -1}));
  EXPECT_EQ(solution_power(z, -2), (PellSolution{19, -6, 10, 1}));
}

TEST(SolutionPower, RejectsNonUnits) {
  try {
    solution_power({5, 1, 20, 5}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidNorm);
  }
}

TEST(SolutionPower, NormClosure) {
  for (auto t : non_squares(2, 300)) {
    const auto m1 = minimal_solution_pm1(t);
    if (!m1) continue;
    for (std::int64_t n = 1; n <= 3; ++n) {
      const auto w = solution_power(*m1, n);
      ASSERT_TRUE(w.satisfies());
      ASSERT_EQ(w.norm(), n % 2 == 1 ? -1 : 1) << "t=" << t << " n=" << n;
    }
  }
}

TEST(General, Examples) {
  EXPECT_TRUE(solvable_general(20, 5));
  EXPECT_FALSE(solvable_general(8, 5));
  EXPECT_FALSE(solvable_general(40, 5));
  EXPECT_EQ(minimal_solution_general(20, 5), (PellSolution{5, 1, 20, 5}));
  EXPECT_EQ(minimal_solution_general(8, 5), std::nullopt);
  EXPECT_EQ(minimal_solution_general(2, 1), (PellSolution{3, 2, 2, 1}));
  EXPECT_EQ(minimal_solution_general(2, -1), (PellSolution{1, 1, 2, -1}));
}

TEST(General, Errors) {
  try {
    solvable_general(20, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedN);
  }
  try {
    solvable_general(36, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SquareRadicand);
  }
}

TEST(General, FourTFiveUnsolvableForEvenT) {
  for (std::int64_t t = 2; t <= 500; t += 2) {
    if (is_perfect_square(t)) continue;
    ASSERT_FALSE(solvable_general(4 * t, 5)) << "t=" << t;
  }
}

TEST(General, NagellBoundExamples) {
  // D = 20: fundamental unit (9, 2); ceil(2 sqrt(5 / 16)) + 1 = 3
  EXPECT_EQ(nagell_bound(20, 5), 3);
  // D = 2: unit (3, 2); ceil(2 sqrt(1 / 4)) + 1 = 2
  EXPECT_EQ(nagell_bound(2, -1), 2);
}

// Both routes inside minimal_solution_general, and the brute-force oracle,
// on random small equations.
TEST(General, RandomEquationsMatchBruteForce) {
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<std::int64_t> pick_d(2, 400);
  std::uniform_int_distribution<std::int64_t> pick_n(-60, 60);
  int checked = 0;
  while (checked < 400) {
    const auto D = pick_d(rng);
    const auto N = pick_n(rng);
    if (N == 0 || is_perfect_square(D)) continue;
    const BigInt bound = nagell_bound(D, N);
    if (bound > 100'000) continue;
    ++checked;
    const auto fast = minimal_solution_general(D, N);
    const auto brute_y = fast ? static_cast<std::uint64_t>(fast->y) : static_cast<std::uint64_t>(bound);
    // With no solution below the bound there is none at all; with one,
    // nothing smaller may hide below its y.
    ASSERT_EQ(oracle::brute_minimal(D, N, brute_y), fast) << "D=" << D << " N=" << N;
  }
}

TEST(General, PositiveSolutionsAreIncreasingAndValid) {
  const auto sols = positive_solutions(20, 5, 6);
  ASSERT_EQ(sols.size(), 6u);
  EXPECT_EQ(sols[0], (PellSolution{5, 1, 20, 5}));
  for (std::size_t i = 0; i < sols.size(); ++i) {
    EXPECT_TRUE(sols[i].satisfies());
    EXPECT_TRUE(sols[i].positive());
    if (i > 0) {
      EXPECT_LT(sols[i - 1].x, sols[i].x);
    }
  }
  // every positive solution with y <= 10^5 is listed, in order
  const auto brute = oracle::brute_pell(20, 5, 100'000);
  std::vector<PellSolution> brute_positive;
  for (const auto& s : brute) {
    if (s.positive()) brute_positive.push_back(s);
  }
  const auto listed = positive_solutions(20, 5, brute_positive.size());
  EXPECT_EQ(listed, brute_positive);
}

TEST(General, MultipleClasses) {
  // x^2 - 10 y^2 = 6 has two classes, led by (4, 1) and (16, 5)
  EXPECT_EQ(positive_solutions(10, 6, 4), (std::vector<PellSolution>{
                                              {4, 1, 10, 6}, {16, 5, 10, 6}, {136, 43, 10, 6}, {604, 191, 10, 6}}));
  // x^2 - 7 y^2 = 9 mixes primitive classes with 3 * (solutions of N = 1)
  EXPECT_EQ(positive_solutions(7, 9, 5),
            (std::vector<PellSolution>{{4, 1, 7, 9}, {11, 4, 7, 9}, {24, 9, 7, 9}, {53, 20, 7, 9}, {172, 65, 7, 9}}));
  // one class only: (-3, 1) is (3, 1) times the inverse unit
  EXPECT_EQ(positive_solutions(11, -2, 3),
            (std::vector<PellSolution>{{3, 1, 11, -2}, {63, 19, 11, -2}, {1257, 379, 11, -2}}));
  EXPECT_FALSE(solvable_general(79, -3));

  for (auto [D, N] : {std::pair<std::int64_t, std::int64_t>{10, 6}, {7, 9}, {23, -14}, {31, -3}}) {
    std::vector<PellSolution> positive;
    for (const auto& s : oracle::brute_pell(D, N, 5000)) {
      if (s.positive()) positive.push_back(s);
    }
    EXPECT_EQ(positive_solutions(D, N, positive.size()), positive) << "D=" << D << " N=" << N;
  }
}

}  // namespace
}  // namespace k3hilb::pell
