#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "k3hilb/ns_lattice.hpp"
#include "k3hilb/pell.hpp"

namespace k3hilb {
namespace {

Isometry mat(std::int64_t t, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return Isometry(LatticeContext(t), a, b, c, d);
}

TEST(LatticeContext, RejectsNonPositiveT) {
  EXPECT_THROW(LatticeContext(0), Error);
  EXPECT_THROW(LatticeContext(-4), Error);
  EXPECT_NO_THROW(LatticeContext(1));
}

TEST(BbfSquare, Examples) {
  EXPECT_EQ(bbf_square(LatticeContext(2), {1, 1}), 2);
  EXPECT_EQ(bbf_square(LatticeContext(10), {1, 3}), 2);
  for (std::int64_t t : {1, 2, 7, 500}) EXPECT_EQ(bbf_square(LatticeContext(t), {0, 1}), -2);
  EXPECT_EQ(bbf_square(LatticeContext(7), {1, 0}), 14);
}

TEST(Apply, Examples) {
  const LatticeContext ctx(3);
  EXPECT_EQ(apply(Isometry::identity(ctx), {5, 7}), (NSClass{5, 7}));
  EXPECT_EQ(apply(mat(2, 3, -2, 4, -3), {1, 1}), (NSClass{1, 1}));
  EXPECT_EQ(apply(mat(10, 19, -6, 60, -19), {1, 0}), (NSClass{19, 60}));
}

TEST(Isometry, RejectsNonIsometries) {
  try {
    mat(2, 3, -2, 4, -2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAnIsometry);
  }
  EXPECT_THROW(mat(2, 2, 0, 0, 1), Error);
  EXPECT_THROW(mat(5, 9, 4, 20, 8), Error);
}

TEST(ClassifyIsometry, Examples) {
  EXPECT_EQ(classify_isometry(mat(4, 1, 0, 0, 1)), IsometryType::Rotation);
  EXPECT_EQ(classify_isometry(mat(4, 1, 0, 0, -1)), IsometryType::Reflection);
  EXPECT_EQ(classify_isometry(mat(4, -1, 0, 0, -1)), IsometryType::Rotation);
  EXPECT_EQ(classify_isometry(mat(4, -1, 0, 0, 1)), IsometryType::Reflection);
  EXPECT_EQ(classify_isometry(mat(2, 3, -2, 4, -3)), IsometryType::Reflection);
  EXPECT_EQ(classify_isometry(mat(2, 3, 2, 4, 3)), IsometryType::Rotation);
}

TEST(GroupStructure, Examples) {
  const auto g1 = group_structure(LatticeContext(1));
  EXPECT_TRUE(g1.is_square_t);
  EXPECT_EQ(g1.structure, GroupStructure::FiniteDihedral4);
  EXPECT_FALSE(g1.generator);

  EXPECT_EQ(group_structure(LatticeContext(9)).structure, GroupStructure::FiniteDihedral4);

  const auto g2 = group_structure(LatticeContext(2));
  EXPECT_EQ(g2.structure, GroupStructure::InfiniteGeneralizedDihedral);
  ASSERT_TRUE(g2.generator);
  EXPECT_EQ(g2.generator->first, 3);
  EXPECT_EQ(g2.generator->second, 2);
}

// For a square t the only solutions of A^2 - t B^2 = 1 are A = +-1, B = 0,
// so every isometry is diagonal with entries +-1.
TEST(GroupStructure, SquareTIsometriesAreTheFourDiagonalSigns) {
  for (std::int64_t k : {1, 2, 3}) {
    const std::int64_t t = k * k;
    int count = 0;
    for (std::int64_t a = -20; a <= 20; ++a) {
      for (std::int64_t b = -20; b <= 20; ++b) {
        for (std::int64_t c = -20; c <= 20; ++c) {
          for (std::int64_t d = -20; d <= 20; ++d) {
            if (Isometry::gram_compatible(LatticeContext(t), a, b, c, d)) ++count;
          }
        }
      }
    }
    EXPECT_EQ(count, 4) << "t=" << t;
  }
}

TEST(ReflectionInClass, Examples) {
  EXPECT_EQ(reflection_in_class(LatticeContext(2), {1, 1}), mat(2, 3, -2, 4, -3));
  EXPECT_EQ(reflection_in_class(LatticeContext(10), {1, 3}), mat(10, 19, -6, 60, -19));
  EXPECT_EQ(reflection_in_class(LatticeContext(5), {1, 2}), mat(5, 9, -4, 20, -9));
}

TEST(ReflectionInClass, Errors) {
  const auto expect_kind = [](auto&& f, ErrorKind kind) {
    try {
      f();
      FAIL() << "no error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), kind) << e.what();
    }
  };
  expect_kind([] { reflection_in_class(LatticeContext(2), {2, 2}); }, ErrorKind::NotPrimitive);
  expect_kind([] { reflection_in_class(LatticeContext(2), {1, 2}); }, ErrorKind::NonPositiveSquare);
  expect_kind([] { reflection_in_class(LatticeContext(2), {2, 1}); }, ErrorKind::NotIntegral);
  expect_kind([] { extends_to_full_lattice(LatticeContext(2), {2, 1}); }, ErrorKind::NotIntegral);
}

TEST(ExtendsToFullLattice, Examples) {
  EXPECT_TRUE(extends_to_full_lattice(LatticeContext(2), {1, 1}));
  EXPECT_TRUE(extends_to_full_lattice(LatticeContext(5), {1, 2}));
  // (1, 0) reflects integrally (diag(1, -1)) but has square 2t
  EXPECT_FALSE(extends_to_full_lattice(LatticeContext(3), {1, 0}));
  EXPECT_TRUE(extends_to_full_lattice(LatticeContext(1), {1, 0}));
}

TEST(ReflectionInClass, AlgebraOverAllSmallClasses) {
  for (std::int64_t t = 1; t <= 60; ++t) {
    const LatticeContext ctx(t);
    for (std::int64_t b = 1; b <= 30; ++b) {
      for (std::int64_t a = -30; a <= 30; ++a) {
        const NSClass v{b, a};
        if (!v.is_primitive() || t * b * b <= a * a) continue;
        std::optional<Isometry> m;
        try {
          m = reflection_in_class(ctx, v);
        } catch (const Error& e) {
          ASSERT_EQ(e.kind(), ErrorKind::NotIntegral);
          continue;
        }
        ASSERT_EQ(m->compose(*m), Isometry::identity(ctx));
        ASSERT_EQ(m->det(), -1);
        ASSERT_EQ(m->apply(v), v);
        ASSERT_EQ(classify_isometry(*m), IsometryType::Reflection);
        ASSERT_EQ(invariant_generator(*m), v) << "t=" << t << " v=" << v;
        // the orthogonal complement is negated
        const NSClass w{a, BigInt(t) * b};
        ASSERT_EQ(bbf_product(ctx, v, w), 0);
        ASSERT_EQ(m->apply(w), (NSClass{-w.x, -w.y}));
      }
    }
  }
}

TEST(ExtendsToFullLattice, EquivalentToSquareTwo) {
  for (std::int64_t t = 2; t <= 200; ++t) {
    if (is_perfect_square(t)) continue;
    const LatticeContext ctx(t);
    for (std::int64_t b = 1; b <= 50; ++b) {
      for (std::int64_t a = -50; a <= 50; ++a) {
        const NSClass v{b, a};
        if (!v.is_primitive() || t * b * b <= a * a) continue;
        bool extends = false;
        try {
          extends = extends_to_full_lattice(ctx, v);
        } catch (const Error& e) {
          ASSERT_EQ(e.kind(), ErrorKind::NotIntegral);
        }
        ASSERT_EQ(extends, bbf_square(ctx, v) == 2) << "t=" << t << " v=" << v;
      }
    }
  }
}

TEST(InvariantGenerator, DiagonalReflections) {
  EXPECT_EQ(invariant_generator(mat(3, 1, 0, 0, -1)), (NSClass{1, 0}));
  EXPECT_EQ(invariant_generator(mat(3, -1, 0, 0, 1)), (NSClass{0, 1}));
  EXPECT_THROW(invariant_generator(mat(3, 1, 0, 0, 1)), Error);
}

// Random words in the rotation generator and diag(1, -1).
TEST(Isometry, GroupClosureAndDihedralLaw) {
  std::mt19937_64 rng(7);
  for (std::int64_t t : {2, 3, 5, 7, 10, 13, 61}) {
    const LatticeContext ctx(t);
    const auto unit = pell::minimal_solution_p1(t);
    const auto rot = Isometry::rotation(ctx, unit.x, unit.y);
    const auto s = Isometry(ctx, 1, 0, 0, -1);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
      Isometry word = Isometry::identity(ctx);
      int reflections = 0;
      for (int step = 0; step < 6; ++step) {
        switch (pick(rng)) {
          case 0: word = word.compose(rot); break;
          case 1: word = word.compose(rot.inverse()); break;
          default:
            word = word.compose(s);
            ++reflections;
            break;
        }
      }
      // construction already checks Gram compatibility; check the parity law
      const auto expected = reflections % 2 == 0 ? IsometryType::Rotation : IsometryType::Reflection;
      ASSERT_EQ(classify_isometry(word), expected);
      ASSERT_EQ(word.compose(word.inverse()), Isometry::identity(ctx));
      ASSERT_EQ(word.det(), reflections % 2 == 0 ? 1 : -1);
    }

    const auto r2 = rot.compose(rot);
    EXPECT_EQ(classify_isometry(r2), IsometryType::Rotation);
    const auto f1 = rot.compose(s);
    const auto f2 = s.compose(rot.inverse());
    EXPECT_EQ(classify_isometry(f1.compose(f2)), IsometryType::Rotation);
    // s r s = r^-1
    EXPECT_EQ(s.compose(rot).compose(s), rot.inverse());
  }
}

}  // namespace
}  // namespace k3hilb
