#include <gtest/gtest.h>

#include "gdaha/error.hpp"
#include "gdaha/exact.hpp"
#include "gdaha/linalg.hpp"

using namespace gdaha;

TEST(Rational, DecimalsAreExact) {
  EXPECT_EQ(parse_rational("0.13"), Rational(13, 100));
  EXPECT_EQ(parse_rational("-1.5e-3"), Rational(-3, 2000));
  EXPECT_EQ(parse_rational("7/21"), Rational(1, 3));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(QComplex, FormatParseRoundTrip) {
  const std::vector<QComplex> values{QComplex(Rational(3, 7)), QComplex(Rational(0), Rational(-1, 2)),
                                     QComplex(Rational(-5, 3), Rational(2, 9)), QComplex(0)};
  for (const auto& z : values) EXPECT_EQ(parse_qcomplex(format(z)), z) << format(z);
  EXPECT_EQ(parse_qcomplex("i"), QComplex(Rational(0), Rational(1)));
  EXPECT_EQ(parse_qcomplex("0.25-0.5i"), QComplex(Rational(1, 4), Rational(-1, 2)));
  EXPECT_EQ(parse_qcomplex("1e-2+2i"), QComplex(Rational(1, 100), Rational(2)));
}

TEST(QComplex, FieldOperations) {
  const QComplex a(Rational(1, 2), Rational(3)), b(Rational(-2, 5), Rational(1, 7));
  EXPECT_EQ(a * b / b, a);
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ(a * a.inverse(), QComplex(1));
}

TEST(QMatrix, CharacteristicPolynomialOfCompanion) {
  // Companion matrix of z^3 - 2 z^2 + (1/3) z + 5/4: its characteristic polynomial is that cubic.
  QMatrix c(3, 3);
  c(1, 0) = 1;
  c(2, 1) = 1;
  c(0, 2) = QComplex(Rational(-5, 4));
  c(1, 2) = QComplex(Rational(-1, 3));
  c(2, 2) = 2;
  const auto poly = characteristic_polynomial(c);
  ASSERT_EQ(poly.size(), 4u);
  EXPECT_EQ(poly[0], QComplex(Rational(5, 4)));
  EXPECT_EQ(poly[1], QComplex(Rational(1, 3)));
  EXPECT_EQ(poly[2], QComplex(-2));
  EXPECT_EQ(poly[3], QComplex(1));
}

TEST(QMatrix, PolynomialFromRootsExpands) {
  const auto p = polynomial_from_roots({QComplex(1), QComplex(-2), QComplex(Rational(1, 2))});
  // (z - 1)(z + 2)(z - 1/2) = z^3 + z^2/2 - 5z/2 + 1
  EXPECT_EQ(p, (std::vector<QComplex>{QComplex(1), QComplex(Rational(-5, 2)), QComplex(Rational(1, 2)), QComplex(1)}));
}

TEST(QMatrix, NullSpaceRankAndInverse) {
  QMatrix a(2, 3);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(0, 2) = 3;
  a(1, 0) = 2;
  a(1, 1) = 4;
  a(1, 2) = 6;
  EXPECT_EQ(rank(a), 1u);
  const auto ns = null_space(a);
  EXPECT_EQ(ns.basis.cols(), 2u);
  EXPECT_TRUE((a * ns.basis).is_zero());

  QMatrix b(2, 2);
  b(0, 0) = QComplex(Rational(1), Rational(1));
  b(0, 1) = 2;
  b(1, 0) = QComplex(Rational(1, 3));
  b(1, 1) = QComplex(Rational(0), Rational(-1));
  auto inv = inverse(b);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(b * *inv, QMatrix::identity(2));
  EXPECT_FALSE(inverse(a.column_block(0, 2).transpose() * a.column_block(0, 2)).has_value());
}

TEST(Linalg, SpectrumMatchRespectsMultiplicity) {
  CMatrix m = CMatrix::Zero(3, 3);
  m.diagonal() << 1.0, 1.0, 2.0;
  ConjugacyClassSpec good{{{1.0, 2}, {2.0, 1}}}, bad{{{1.0, 1}, {2.0, 2}}};
  EXPECT_LT(spectrum_match(m, good, 1e-12).deviation, 1e-12);
  EXPECT_NEAR(spectrum_match(m, bad, 1e-12).deviation, 1.0, 1e-12);
  EXPECT_THROW(spectrum_match(m, ConjugacyClassSpec{{{1.0, 2}}}, 1e-12), Error);
}

TEST(Linalg, NumericalRankFlagsAmbiguity) {
  CMatrix m = CMatrix::Zero(3, 3);
  m.diagonal() << 1.0, 1e-3, 2e-7;
  auto r = numerical_rank(m);
  EXPECT_TRUE(r.ambiguous);
  m(2, 2) = 1e-12;
  r = numerical_rank(m);
  EXPECT_FALSE(r.ambiguous);
  EXPECT_EQ(r.rank, 2);
}
