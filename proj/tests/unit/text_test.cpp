#include <gtest/gtest.h>

#include "oracles.hpp"
#include "selfless/errors.hpp"
#include "selfless/text.hpp"

namespace selfless {
namespace {

TEST(ParseWord, Examples) {
  auto f2 = parse_presentation("F2");
  auto w = parse_word("a b^-1 a^2", f2);
  std::vector<std::pair<std::size_t, long>> want{{0, 1}, {1, -1}, {0, 2}};
  EXPECT_EQ(testing::syllable_pairs(w), want);
  EXPECT_TRUE(parse_word("a a^-1", f2).is_identity());
  EXPECT_TRUE(parse_word("e", f2).is_identity());
  auto z = parse_presentation("Z2*Z3");
  EXPECT_EQ(parse_word("t^5", z), parse_word("t^2", z));
}

TEST(ParseWord, Errors) {
  auto f2 = parse_presentation("F2");
  EXPECT_THROW(parse_word("c", f2), ParseError);
  EXPECT_THROW(parse_word("a^", f2), ParseError);
  EXPECT_THROW(parse_word("a^x", f2), ParseError);
}

TEST(ParsePresentation, Forms) {
  auto z = parse_presentation("Z*Z3");
  ASSERT_EQ(z->size(), 2u);
  EXPECT_FALSE(z->factor(0).order.has_value());
  EXPECT_EQ(z->factor(1).order, 3u);
  auto named = parse_presentation("a:Z*s:Z/2");
  EXPECT_EQ(named->factor(1).name, "s");
  EXPECT_EQ(named->factor(1).order, 2u);
  EXPECT_EQ(parse_presentation("F3")->size(), 3u);
  EXPECT_THROW(parse_presentation("Q8"), ParseError);
  EXPECT_THROW(parse_presentation("Z1"), ParseError);
}

TEST(ParseScalar, Forms) {
  EXPECT_EQ(parse_scalar("(1/2+3/4i)"), GaussianRational(mpq_class(1, 2), mpq_class(3, 4)));
  EXPECT_EQ(parse_scalar("0.25"), GaussianRational(mpq_class(1, 4)));
  EXPECT_EQ(parse_scalar("-2i"), GaussianRational(0, -2));
}

TEST(ParseElement, TermsAndSigns) {
  auto f2 = parse_presentation("F2");
  auto x = parse_element("2 + 3i*a b - (1/2+1/4i)*b^-1", f2);
  EXPECT_EQ(x.terms().size(), 3u);
  EXPECT_EQ(x.coefficient(parse_word("b^-1", f2)), GaussianRational(mpq_class(-1, 2), mpq_class(-1, 4)));
  EXPECT_EQ(parse_element("-a", f2).coefficient(parse_word("a", f2)), GaussianRational(-1));
  EXPECT_THROW(parse_element("a +", f2), ParseError);
  EXPECT_THROW(parse_element("a + + b", f2), ParseError);
}

TEST(ParseTemplate, RoundTrip) {
  auto t = parse_template("Y0 U2 Y1 U-1");
  EXPECT_EQ(t.pattern, Pattern::w1);
  EXPECT_EQ(to_string(t), "Y0 U2 Y1 U-1");
  EXPECT_THROW(parse_template("Y0 Y1"), ParseError);
  EXPECT_THROW(parse_template("Y0 U0"), ParseError);
  EXPECT_THROW(parse_template("Y0"), ParseError);
}

TEST(ParseFamily, AffineExponents) {
  auto f2 = parse_presentation("F2");
  auto fam = parse_family("a^n b a^n", f2);
  EXPECT_EQ(fam.at(3), parse_word("a^3 b a^3", f2));
  auto odd = parse_family("a^(2n+1) b^-1", f2);
  EXPECT_EQ(odd.at(2), parse_word("a^5 b^-1", f2));
  EXPECT_EQ(parse_family("a^-n b", f2).at(4), parse_word("a^-4 b", f2));
}

TEST(Lists, Split) {
  EXPECT_TRUE(split_list("").empty());
  EXPECT_EQ(split_list(" a , b a "), (std::vector<std::string>{"a", "b a"}));
}

}  // namespace
}  // namespace selfless
