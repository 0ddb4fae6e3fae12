#pragma once

// Ample cone of the Hilbert square of a K3 surface with Picard group ZH,
// H^2 = 2t. The cone is open and spanned by h = (1, 0) and a second ray
// determined by Pell equations:
//   t = k^2                       -> (1, k)
//   x^2 - 4t y^2 = 5 solvable     -> (x, 2ty) for its minimal solution
//   otherwise                     -> (x, ty) for the minimal solution of x^2 - t y^2 = 1

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "k3hilb/error.hpp"
#include "k3hilb/integer.hpp"
#include "k3hilb/ns_lattice.hpp"
#include "k3hilb/pell.hpp"

namespace k3hilb {

enum class ConeCaseTag { SquareT, PellFourT5, PellT1 };

inline std::string_view to_string(ConeCaseTag tag) {
  switch (tag) {
    case ConeCaseTag::SquareT: return "square";
    case ConeCaseTag::PellFourT5: return "pell_4t_5";
    case ConeCaseTag::PellT1: return "pell_t_1";
  }
  return "unknown";
}

struct ConeCase {
  ConeCaseTag tag = ConeCaseTag::SquareT;
  std::int64_t k = 0;                          // SquareT only
  std::optional<pell::PellSolution> solution;  // Pell cases only
  NSClass raw_ray;                             // the second ray before dividing by its gcd

  bool operator==(const ConeCase&) const = default;
};

struct Cone {
  NSClass ray1{1, 0};
  NSClass ray2;

  bool operator==(const Cone&) const = default;
};

struct ConeResult {
  Cone cone;
  ConeCase kase;
};

inline ConeResult compute_cone(std::int64_t t) {
  const LatticeContext ctx(t);
  ConeCase kase;
  if (is_perfect_square(t)) {
    kase.tag = ConeCaseTag::SquareT;
    kase.k = isqrt(t);
    kase.raw_ray = {1, kase.k};
  } else if (auto five = pell::minimal_solution_general(4 * t, 5)) {
    kase.tag = ConeCaseTag::PellFourT5;
    kase.raw_ray = {five->x, 2 * BigInt(t) * five->y};
    kase.solution = std::move(five);
  } else {
    auto unit = pell::minimal_solution_p1(t);
    kase.tag = ConeCaseTag::PellT1;
    kase.raw_ray = {unit.x, BigInt(t) * unit.y};
    kase.solution = std::move(unit);
  }

  Cone cone{{1, 0}, kase.raw_ray.primitive()};
  ensure(cone.ray2.x > 0 && cone.ray2.y > 0 && cone.ray2.is_primitive(), "second ray is not a primitive positive class");
  return {std::move(cone), std::move(kase)};
}

/// Strict interior: x > 0, y > 0 and x * ray2.y - y * ray2.x > 0.
inline bool is_ample(const Cone& cone, const NSClass& c) {
  return c.x > 0 && c.y > 0 && c.x * cone.ray2.y - c.y * cone.ray2.x > 0;
}

inline bool is_ample(std::int64_t t, const NSClass& c) { return is_ample(compute_cone(t).cone, c); }

/// Closure of the ample cone (boundary rays included, zero excluded).
inline bool is_nef(const Cone& cone, const NSClass& c) {
  if (c.x == 0 && c.y == 0) return false;
  return c.x >= 0 && c.y >= 0 && c.x * cone.ray2.y - c.y * cone.ray2.x >= 0;
}

inline bool is_nef(std::int64_t t, const NSClass& c) { return is_nef(compute_cone(t).cone, c); }

/// Smallest a for which a h - delta is known ample from the 2-very-ampleness
/// of the twisted polarization.
inline std::int64_t two_very_ample_threshold(std::int64_t t) {
  if (t < 1) throw Error(ErrorKind::InvalidInput, "t must be >= 1");
  if (t == 1) return 3;
  if (t <= 3) return 2;
  return 1;
}

/// "y>0, 19y<60x" style description of the open cone.
inline std::string inequality(const Cone& cone) {
  const auto term = [](const BigInt& coeff, char var) {
    std::ostringstream os;
    if (coeff != 1) os << coeff;
    os << var;
    return os.str();
  };
  return "y>0, " + term(cone.ray2.x, 'y') + "<" + term(cone.ray2.y, 'x');
}

}  // namespace k3hilb
