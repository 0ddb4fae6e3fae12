#pragma once

// Automorphisms of the Hilbert square S^[2] of a generic K3 of degree 2t.
//
// For t = 1 the only non-trivial automorphism is the natural involution
// induced from S. For t >= 2 a non-trivial automorphism exists exactly when t
// is not a square, x^2 - 4t y^2 = 5 has no solution and x^2 - t y^2 = -1 has
// one. It is then a unique non-symplectic involution acting on NS as the
// reflection in the unique ample class D = b h - a delta of square 2, where
// (a, b) is the minimal solution of x^2 - t y^2 = -1.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3hilb/ample_cone.hpp"
#include "k3hilb/error.hpp"
#include "k3hilb/integer.hpp"
#include "k3hilb/ns_lattice.hpp"
#include "k3hilb/pell.hpp"

namespace k3hilb {

enum class AutTag { Trivial, NaturalInvolution, NonNaturalInvolution };

inline std::string_view to_string(AutTag tag) {
  switch (tag) {
    case AutTag::Trivial: return "trivial";
    case AutTag::NaturalInvolution: return "natural_involution";
    case AutTag::NonNaturalInvolution: return "non_natural_involution";
  }
  return "unknown";
}

struct Involution {
  Isometry matrix;
  NSClass D;
  pell::PellSolution pell_m1;  // (a, b), minimal for x^2 - t y^2 = -1
  pell::PellSolution pell_p1;  // (A, -B), minimal for x^2 - t y^2 = 1

  bool operator==(const Involution&) const = default;
};

struct AutClassification {
  std::int64_t t = 0;
  AutTag tag = AutTag::Trivial;
  std::string reason;
  std::optional<Involution> involution;

  /// Every non-trivial automorphism here acts by -1 on the symplectic form.
  static constexpr std::string_view kInvolutionKind = "non-symplectic";

  bool operator==(const AutClassification&) const = default;
};

/// The three arithmetic conditions on t >= 2.
struct PellTriple {
  bool non_square = false;
  bool four_t_five_unsolvable = false;
  std::optional<pell::PellSolution> minus_one;

  bool holds() const { return non_square && four_t_five_unsolvable && minus_one.has_value(); }
};

inline PellTriple pell_triple(std::int64_t t) {
  PellTriple triple;
  triple.non_square = !is_perfect_square(t);
  if (!triple.non_square) return triple;
  triple.four_t_five_unsolvable = !pell::solvable_general(4 * t, 5);
  triple.minus_one = pell::minimal_solution_pm1(t);
  return triple;
}

/// [[2a^2 + 1, -2ab], [2tab, -2a^2 - 1]] from a solution (a, b) of a^2 - t b^2 = -1.
inline Isometry involution_matrix(const LatticeContext& ctx, const BigInt& a, const BigInt& b) {
  const BigInt A = 2 * a * a + 1;
  const BigInt B = -2 * a * b;
  return Isometry(ctx, A, B, 2 * BigInt(ctx.t()) * a * b, -A);
}

inline AutClassification classify(std::int64_t t) {
  if (t < 1) throw Error(ErrorKind::InvalidInput, "t must be >= 1, got " + std::to_string(t));
  AutClassification out;
  out.t = t;
  if (t == 1) {
    out.tag = AutTag::NaturalInvolution;
    out.reason = "t = 1: the natural involution induced by the covering involution of S";
    return out;
  }

  const auto triple = pell_triple(t);
  if (!triple.non_square) {
    out.reason = "t is a perfect square";
    return out;
  }
  if (!triple.four_t_five_unsolvable) {
    out.reason = "x^2 - 4t y^2 = 5 has a solution";
    return out;
  }
  if (!triple.minus_one) {
    out.reason = "x^2 - t y^2 = -1 has no solution";
    return out;
  }

  const LatticeContext ctx(t);
  const auto& m1 = *triple.minus_one;
  const BigInt& a = m1.x;
  const BigInt& b = m1.y;
  Isometry matrix = involution_matrix(ctx, a, b);
  NSClass D{b, a};

  // Second, independent route to the same data.
  ensure(reflection_in_class(ctx, D) == matrix, "closed-form involution differs from the reflection in D");
  ensure(extends_to_full_lattice(ctx, D), "reflection in D does not extend to the full lattice");
  ensure(bbf_square(ctx, D) == 2, "D does not have square 2");
  auto p1 = pell::minimal_solution_p1(t);
  ensure(p1.x == matrix.a() && p1.y == -matrix.b(), "(A, -B) is not the minimal solution of x^2 - t y^2 = 1");
  ensure(p1.x == 2 * a * a + 1 && p1.y == 2 * a * b, "minimal unit is not the square of the minimal -1 solution");
  const auto cone = compute_cone(t);
  ensure(cone.kase.tag == ConeCaseTag::PellT1, "cone is not bounded by the unit ray");
  ensure(is_ample(cone.cone, D), "D is not ample");
  ensure(invariant_generator(matrix) == D, "the fixed lattice of the involution is not spanned by D");

  out.tag = AutTag::NonNaturalInvolution;
  out.reason = "t is not a square, x^2 - 4t y^2 = 5 has no solution and x^2 - t y^2 = -1 has one";
  out.involution = Involution{std::move(matrix), std::move(D), m1, std::move(p1)};
  return out;
}

/// Odd powers z^(2k+1), k = 0..max_k, of the minimal solution of x^2 - t y^2 = -1,
/// as classes (b, a).
inline std::vector<NSClass> square2_candidates(std::int64_t t, int max_k = 3) {
  std::vector<NSClass> out;
  if (is_perfect_square(t)) return out;
  const auto z = pell::minimal_solution_pm1(t);
  if (!z) return out;
  for (int k = 0; k <= max_k; ++k) {
    const auto w = pell::solution_power(*z, 2 * k + 1);
    out.push_back({w.y, w.x});
  }
  return out;
}

struct ConditionPair {
  bool pell_triple = false;
  bool ample_square2 = false;
};

/// Both sides of the equivalence: the arithmetic triple and the existence of
/// an ample class of square 2, the latter decided by testing candidates.
inline ConditionPair square2_condition_equivalence(std::int64_t t) {
  if (t < 2) throw Error(ErrorKind::InvalidInput, "square2_condition_equivalence needs t >= 2");
  ConditionPair out;
  out.pell_triple = pell_triple(t).holds();
  const auto cone = compute_cone(t).cone;
  for (const auto& c : square2_candidates(t)) {
    if (is_ample(cone, c)) out.ample_square2 = true;
  }
  return out;
}

/// The ample class of square 2, when there is one. At most one candidate may
/// be ample.
inline std::optional<NSClass> unique_ample_square2(std::int64_t t) {
  if (t < 2) throw Error(ErrorKind::InvalidInput, "unique_ample_square2 needs t >= 2");
  const auto cone = compute_cone(t).cone;
  const LatticeContext ctx(t);
  std::optional<NSClass> found;
  for (const auto& c : square2_candidates(t)) {
    ensure(bbf_square(ctx, c) == 2, "odd power of a -1 unit does not give a square-2 class");
    if (!is_ample(cone, c)) continue;
    ensure(!found, "more than one ample class of square 2");
    found = c;
  }
  return found;
}

struct EulerCharVal {
  BigInt n;
  BigInt chi;
  bool operator==(const EulerCharVal&) const = default;
};

/// chi(nD) = n^4 / 2 + 5 n^2 / 2 + 3 for a class D of square 2.
inline EulerCharVal euler_characteristic(const BigInt& n) {
  const BigInt n2 = n * n;
  const BigInt twice = n2 * n2 + 5 * n2 + 6;
  ensure(twice % 2 == 0, "n^4 + 5n^2 + 6 is odd");
  return {n, twice / 2};
}

}  // namespace k3hilb
