#pragma once

// The rank-two lattice <2t> + <-2> of divisor classes on the Hilbert square,
// written in the basis (h, -delta): the pair (x, y) is the class x h - y delta.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "k3hilb/error.hpp"
#include "k3hilb/integer.hpp"
#include "k3hilb/pell.hpp"

namespace k3hilb {

/// Degree data of the underlying K3: H^2 = 2t.
class LatticeContext {
 public:
  explicit LatticeContext(std::int64_t t) : t_(t) {
    if (t < 1) throw Error(ErrorKind::InvalidInput, "t must be >= 1, got " + std::to_string(t));
  }

  std::int64_t t() const noexcept { return t_; }
  bool operator==(const LatticeContext&) const = default;

 private:
  std::int64_t t_;
};

/// The class x h - y delta.
struct NSClass {
  BigInt x;
  BigInt y;

  bool is_primitive() const { return gcd(x, y) == 1; }

  /// Divides out the gcd; the zero class is returned unchanged.
  NSClass primitive() const {
    const BigInt g = gcd(x, y);
    if (g == 0) return *this;
    return {x / g, y / g};
  }

  bool operator==(const NSClass&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const NSClass& c) {
  return os << '(' << c.x << ", " << c.y << ')';
}

/// Beauville-Bogomolov-Fujiki square 2t x^2 - 2 y^2.
inline BigInt bbf_square(const LatticeContext& ctx, const NSClass& c) {
  return 2 * BigInt(ctx.t()) * c.x * c.x - 2 * c.y * c.y;
}

inline BigInt bbf_product(const LatticeContext& ctx, const NSClass& a, const NSClass& b) {
  return 2 * BigInt(ctx.t()) * a.x * b.x - 2 * a.y * b.y;
}

enum class IsometryType { Rotation, Reflection };

inline std::string_view to_string(IsometryType type) {
  return type == IsometryType::Rotation ? "rotation" : "reflection";
}

/// Integer matrix [[a, b], [c, d]] acting on coordinates (x, y) and
/// preserving diag(2t, -2).
class Isometry {
 public:
  /// Throws NotAnIsometry unless M^T G M = G.
  Isometry(LatticeContext ctx, BigInt a, BigInt b, BigInt c, BigInt d)
      : ctx_(ctx), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (!gram_compatible(ctx_, a_, b_, c_, d_)) {
      throw Error(ErrorKind::NotAnIsometry, "matrix [[" + a_.str() + ", " + b_.str() + "], [" + c_.str() + ", " +
                                                d_.str() + "]] does not preserve diag(2t, -2) for t=" +
                                                std::to_string(ctx_.t()));
    }
  }

  static Isometry identity(LatticeContext ctx) { return Isometry(ctx, 1, 0, 0, 1); }

  /// [[A, B], [tB, A]] with A^2 - t B^2 = 1.
  static Isometry rotation(LatticeContext ctx, const BigInt& A, const BigInt& B) {
    return Isometry(ctx, A, B, BigInt(ctx.t()) * B, A);
  }

  /// [[A, B], [-tB, -A]] with A^2 - t B^2 = 1.
  static Isometry reflection(LatticeContext ctx, const BigInt& A, const BigInt& B) {
    return Isometry(ctx, A, B, -BigInt(ctx.t()) * B, -A);
  }

  /// The four conditions C^2 = t(A^2 - 1), D^2 = t B^2 + 1, CD = tAB, det = +-1.
  static bool gram_compatible(const LatticeContext& ctx, const BigInt& a, const BigInt& b, const BigInt& c,
                              const BigInt& d) {
    const BigInt t = ctx.t();
    const BigInt det = a * d - b * c;
    return c * c == t * (a * a - 1) && d * d == t * b * b + 1 && c * d == t * a * b && (det == 1 || det == -1);
  }

  const LatticeContext& context() const noexcept { return ctx_; }
  const BigInt& a() const noexcept { return a_; }
  const BigInt& b() const noexcept { return b_; }
  const BigInt& c() const noexcept { return c_; }
  const BigInt& d() const noexcept { return d_; }

  BigInt det() const { return a_ * d_ - b_ * c_; }

  NSClass apply(const NSClass& v) const { return {a_ * v.x + b_ * v.y, c_ * v.x + d_ * v.y}; }

  /// this * other (apply `other` first).
  Isometry compose(const Isometry& other) const {
    ensure(ctx_ == other.ctx_, "composing isometries of different lattices");
    return Isometry(ctx_, a_ * other.a_ + b_ * other.c_, a_ * other.b_ + b_ * other.d_, c_ * other.a_ + d_ * other.c_,
                    c_ * other.b_ + d_ * other.d_);
  }

  Isometry inverse() const {
    const BigInt det_value = det();  // +-1, so the adjugate times det is the inverse
    return Isometry(ctx_, d_ * det_value, -b_ * det_value, -c_ * det_value, a_ * det_value);
  }

  bool operator==(const Isometry&) const = default;

 private:
  LatticeContext ctx_;
  BigInt a_, b_, c_, d_;
};

inline std::ostream& operator<<(std::ostream& os, const Isometry& m) {
  return os << "[[" << m.a() << ", " << m.b() << "], [" << m.c() << ", " << m.d() << "]]";
}

inline NSClass apply(const Isometry& iso, const NSClass& c) { return iso.apply(c); }

/// Rotation type iff (C, D) = (tB, A); reflection type iff (C, D) = (-tB, -A).
/// With B = 0 both shapes share C = 0 and the D entry decides.
inline IsometryType classify_isometry(const Isometry& iso) {
  if (!Isometry::gram_compatible(iso.context(), iso.a(), iso.b(), iso.c(), iso.d())) {
    throw Error(ErrorKind::NotAnIsometry, "classify_isometry on a non-isometry");
  }
  const BigInt tb = BigInt(iso.context().t()) * iso.b();
  const bool rotation = iso.c() == tb && iso.d() == iso.a();
  const bool reflection = iso.c() == -tb && iso.d() == -iso.a();
  ensure(rotation != reflection, "isometry matches neither or both normal forms");
  return rotation ? IsometryType::Rotation : IsometryType::Reflection;
}

enum class GroupStructure { FiniteDihedral4, InfiniteGeneralizedDihedral };

/// O(NS) is the dihedral group of order four when t is a square; otherwise it
/// is the generalized dihedral group of the infinite cyclic group generated
/// by the rotation with (A, B) the minimal solution of A^2 - t B^2 = 1.
struct GroupDescription {
  bool is_square_t = false;
  GroupStructure structure = GroupStructure::FiniteDihedral4;
  std::optional<std::pair<BigInt, BigInt>> generator;

  bool operator==(const GroupDescription&) const = default;
};

inline GroupDescription group_structure(const LatticeContext& ctx) {
  if (is_perfect_square(ctx.t())) return {true, GroupStructure::FiniteDihedral4, std::nullopt};
  auto sol = pell::minimal_solution_p1(ctx.t());
  return {false, GroupStructure::InfiniteGeneralizedDihedral, std::pair{std::move(sol.x), std::move(sol.y)}};
}

namespace detail {

struct ReflectionFraction {
  BigInt denominator;  // t b^2 - a^2
  BigInt a_numerator;  // t b^2 + a^2
  BigInt b_numerator;  // -2ab
};

inline ReflectionFraction reflection_fraction(const LatticeContext& ctx, const NSClass& v) {
  if (!v.is_primitive()) throw Error(ErrorKind::NotPrimitive, "reflection vector must be primitive");
  const BigInt t = ctx.t();
  const BigInt& b = v.x;
  const BigInt& a = v.y;
  const BigInt denominator = t * b * b - a * a;
  if (denominator <= 0) throw Error(ErrorKind::NonPositiveSquare, "reflection vector must have positive square");
  return {denominator, t * b * b + a * a, -2 * a * b};
}

}  // namespace detail

/// The reflection fixing v = (b, a) and negating its orthogonal complement:
/// [[A, B], [-tB, -A]] with A = (tb^2 + a^2) / (tb^2 - a^2), B = -2ab / (tb^2 - a^2).
/// Throws NotIntegral when these are not integers.
inline Isometry reflection_in_class(const LatticeContext& ctx, const NSClass& v) {
  const auto f = detail::reflection_fraction(ctx, v);
  if (f.a_numerator % f.denominator != 0 || f.b_numerator % f.denominator != 0) {
    throw Error(ErrorKind::NotIntegral, "reflection in the span of this class is not integral");
  }
  return Isometry::reflection(ctx, f.a_numerator / f.denominator, f.b_numerator / f.denominator);
}

/// Whether the reflection in v extends to the full second cohomology lattice
/// acting as -id on the transcendental part. The extension is integral iff
/// b^2 / (tb^2 - a^2) is an integer; for primitive v this is the same as
/// v having square 2. Both tests run and must agree.
inline bool extends_to_full_lattice(const LatticeContext& ctx, const NSClass& v) {
  const auto f = detail::reflection_fraction(ctx, v);
  reflection_in_class(ctx, v);  // NotIntegral propagates
  const bool coefficient_integral = (v.x * v.x) % f.denominator == 0;
  const bool square_two = bbf_square(ctx, v) == 2;
  ensure(coefficient_integral == square_two, "extension integrality and square-2 criterion disagree");
  return square_two;
}

/// Primitive generator of the sublattice fixed by a reflection-type isometry:
/// (-B, A - 1) / gcd, normalized so that the first non-zero coordinate is positive.
inline NSClass invariant_generator(const Isometry& iso) {
  if (classify_isometry(iso) != IsometryType::Reflection) {
    throw Error(ErrorKind::InvalidInput, "only reflection-type isometries have a rank-one invariant lattice");
  }
  NSClass v{-iso.b(), iso.a() - 1};
  if (v.x == 0 && v.y == 0) v = {1, 0};  // the matrix is diag(1, -1)
  v = v.primitive();
  if (v.x < 0 || (v.x == 0 && v.y < 0)) v = {-v.x, -v.y};
  return v;
}

}  // namespace k3hilb
