#include "adhm/field.hpp"

#include <gtest/gtest.h>

#include <random>

using adhm::ModP;
using adhm::Rational;

TEST(Rational, LowestTermsPositiveDenominator) {
  const Rational q = Rational::parse("-4/6");
  EXPECT_EQ(q.to_string(), "-2/3");
  EXPECT_EQ(Rational(6, -4).to_string(), "-3/2");
  EXPECT_EQ(Rational::parse("+5").to_string(), "5");
  EXPECT_EQ(Rational::parse("10/5").to_string(), "2");
}

TEST(Rational, ParsesDecimals) {
  EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("-1.5"), Rational(-3, 2));
  EXPECT_THROW(Rational::parse("1.2/3"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, InverseOfZeroThrows) { EXPECT_THROW(Rational(0).inverse(), std::domain_error); }

TEST(ModP, DefaultPrimeIsAboveTwoToTwenty) {
  EXPECT_GE(ModP::kDefaultPrime, 1u << 20);
  ModP::set_modulus(ModP::kDefaultPrime);
  EXPECT_EQ(ModP::modulus(), ModP::kDefaultPrime);
}

TEST(ModP, RejectsComposite) {
  EXPECT_THROW(ModP::set_modulus(1048581), std::invalid_argument);
  EXPECT_THROW(ModP::set_modulus(1), std::invalid_argument);
  ModP::set_modulus(ModP::kDefaultPrime);
}

TEST(ModP, ReducesFractions) {
  ModP::set_modulus(7);
  EXPECT_EQ(ModP::parse("1/2").residue(), 4u);  // 2 * 4 = 8 = 1 mod 7
  EXPECT_EQ(ModP(-1).residue(), 6u);
  EXPECT_THROW(ModP::parse("1/7"), std::domain_error);
  ModP::set_modulus(ModP::kDefaultPrime);
}

template <class K>
void check_axioms(std::mt19937_64& rng) {
  auto draw = [&] { return K(static_cast<long>(rng() % 2001) - 1000); };
  for (int i = 0; i < 200; ++i) {
    const K a = draw(), b = draw(), c = draw();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
    if (!a.is_zero()) {
      EXPECT_TRUE((a * a.inverse()).is_one());
      EXPECT_EQ((b / a) * a, b);
    }
  }
}

TEST(FieldAxioms, Rational) {
  std::mt19937_64 rng(1);
  check_axioms<Rational>(rng);
}

TEST(FieldAxioms, ModP) {
  ModP::set_modulus(ModP::kDefaultPrime);
  std::mt19937_64 rng(2);
  check_axioms<ModP>(rng);
}

TEST(FieldName, Labels) {
  ModP::set_modulus(ModP::kDefaultPrime);
  EXPECT_EQ(Rational::field_name(), "rational");
  EXPECT_EQ(ModP::field_name(), "Fp:1048583");
  EXPECT_FALSE(adhm::is_modular_v<Rational>);
  EXPECT_TRUE(adhm::is_modular_v<ModP>);
}
