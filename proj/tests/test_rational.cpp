#include <gtest/gtest.h>

#include "nsbayes/errors.hpp"
#include "nsbayes/rational.hpp"

using namespace nsbayes;

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("3/4"), ratio(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), ratio(-3, 4));
  EXPECT_EQ(parse_rational("+7"), Rational(7));
  EXPECT_EQ(parse_rational("-1.25"), ratio(-5, 4));
  EXPECT_EQ(parse_rational(".5"), ratio(1, 2));
  EXPECT_EQ(parse_rational("2."), Rational(2));
  EXPECT_EQ(parse_rational("0"), Rational(0));
}

TEST(ParseRational, ResultIsCanonical) {
  Rational r = parse_rational("10/4");
  EXPECT_EQ(r.get_num(), 5);
  EXPECT_EQ(r.get_den(), 2);
}

TEST(ParseRational, Errors) {
  for (const char* bad : {"", "abc", "1/", "/2", "1//2", "1.2.3", "1e3", "- 1", "0x10", "."}) {
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
  }
  // a literal with zero denominator is malformed data, not a division
  EXPECT_THROW(parse_rational("1/0"), ParseError);
}

TEST(RationalText, Printing) {
  EXPECT_EQ(to_string(ratio(-3, 4)), "-3/4");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_EQ(to_decimal(ratio(1, 3)), "0.333333");
  EXPECT_EQ(to_decimal(ratio(2, 3)), "0.666667");
  EXPECT_EQ(to_decimal(ratio(-1, 8), 2), "-0.13");
  EXPECT_EQ(to_decimal(Rational(3), 0), "3");
}

TEST(RationalHelpers, SignAbsRatio) {
  EXPECT_EQ(sign(ratio(-1, 7)), -1);
  EXPECT_EQ(sign(Rational(0)), 0);
  EXPECT_EQ(abs(ratio(-2, 3)), ratio(2, 3));
  EXPECT_EQ(ratio(4, -6), ratio(-2, 3));
}
