#include <gtest/gtest.h>

#include <filesystem>

#include "hornopt/generators.hpp"
#include "hornopt/modular.hpp"
#include "hornopt/polynomial.hpp"
#include "hornopt/scheme.hpp"
#include "hornopt/text.hpp"
#include "support.hpp"

namespace hornopt {
namespace {

const char* kEq1 = "x^2*z + x^3*y + x^3*y*z";

TEST(Parse, ReadsTermsAndVariables) {
  const Polynomial p = parse_polynomial(kEq1);
  EXPECT_EQ(p.term_count(), 3U);
  EXPECT_EQ(p.vars().names(), (std::vector<std::string>{"x", "y", "z"}));
}

TEST(Parse, CollectsLikeTerms) {
  const Polynomial p = parse_polynomial("x + x");
  ASSERT_EQ(p.term_count(), 1U);
  EXPECT_EQ(p.terms()[0].coeff, 2);
  EXPECT_TRUE(parse_polynomial("x - x").is_zero());
}

TEST(Parse, NaturalVariableOrder) {
  const Polynomial p = parse_polynomial("a_10 + a_2 + a_1");
  EXPECT_EQ(p.vars().names(), (std::vector<std::string>{"a_1", "a_2", "a_10"}));
}

TEST(Parse, BigCoefficients) {
  const Polynomial p = parse_polynomial("123456789012345678901234567890*x - 1");
  EXPECT_EQ(p.terms().size(), 2U);
  EXPECT_EQ(format_polynomial(parse_polynomial(format_polynomial(p))), format_polynomial(p));
}

TEST(Parse, RejectsMalformed) {
  for (const char* bad : {"", "x +", "x^", "x^0", "2**x", "x y", "(x)", "x^-1", "+ - x"}) {
    EXPECT_THROW(parse_polynomial(bad), ParseError) << bad;
  }
}

TEST(Parse, ErrorCarriesPosition) {
  try {
    parse_polynomial("x +\n  * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.column(), 3U);
  }
}

TEST(Format, Canonical) {
  EXPECT_EQ(format_polynomial(parse_polynomial("x - x")), "0");
  EXPECT_EQ(format_polynomial(parse_polynomial("-x^2")), "-x^2");
  EXPECT_EQ(format_polynomial(parse_polynomial("x^3*y*z + x^2*z + y*x^3")), kEq1);
}

TEST(Format, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "hornopt_roundtrip.poly";
  const Polynomial p = gen_resolvent(2, 2);
  write_polynomial_file(path.string(), p);
  EXPECT_EQ(read_polynomial_file(path.string()), p);
  std::filesystem::remove(path);
  EXPECT_THROW(read_polynomial_file(path.string()), Error);
}

TEST(NaiveOps, Eq1) {
  const OpCount c = count_naive_ops(parse_polynomial(kEq1));
  EXPECT_EQ(c.mul, 9U);
  EXPECT_EQ(c.add, 2U);
}

TEST(NaiveOps, CoefficientAndConstantTerms) {
  EXPECT_EQ(count_naive_ops(parse_polynomial("5*x")), (OpCount{1, 0}));
  EXPECT_EQ(count_naive_ops(parse_polynomial("-x")), (OpCount{0, 0}));
  EXPECT_EQ(count_naive_ops(parse_polynomial("7")), (OpCount{1, 0}));
  EXPECT_EQ(count_naive_ops(parse_polynomial("1 + x")), (OpCount{0, 1}));
  EXPECT_EQ(count_naive_ops(parse_polynomial("x - x")), (OpCount{0, 0}));
}

TEST(NaiveOps, BinaryPowers) {
  EXPECT_EQ(binary_power_cost(1), 0U);
  EXPECT_EQ(binary_power_cost(2), 1U);
  EXPECT_EQ(binary_power_cost(3), 2U);
  EXPECT_EQ(binary_power_cost(4), 2U);
  EXPECT_EQ(binary_power_cost(7), 4U);
  EXPECT_EQ(binary_power_cost(8), 3U);
  EXPECT_EQ(count_naive_ops_binary_powers(parse_polynomial("x^8*y")), (OpCount{4, 0}));
}

TEST(OccurrenceOrder, Examples) {
  const Polynomial p = parse_polynomial(kEq1);
  EXPECT_EQ(occurrence_order(p).names(p.vars()), (std::vector<std::string>{"x", "y", "z"}));
  const Polynomial sq = expand_power(parse_polynomial("a + b"), 2);
  EXPECT_EQ(occurrence_order(sq).names(sq.vars()), (std::vector<std::string>{"a", "b"}));
  const Polynomial one = parse_polynomial("q^3 + 1");
  EXPECT_EQ(occurrence_order(one).size(), 1U);
}

TEST(Scheme, FromNamesValidates) {
  const Polynomial p = parse_polynomial(kEq1);
  EXPECT_EQ(Scheme::from_names(p.vars(), {"z", "x", "y"}).order(), (std::vector<VarIndex>{2, 0, 1}));
  EXPECT_THROW(Scheme::from_names(p.vars(), {"x", "y"}), InvalidArgument);
  EXPECT_THROW(Scheme::from_names(p.vars(), {"x", "x", "y"}), InvalidArgument);
  EXPECT_THROW(Scheme::from_names(p.vars(), {"x", "y", "w"}), InvalidArgument);
}

TEST(EvalMod, Examples) {
  const Polynomial p = parse_polynomial(kEq1);
  const std::vector<Residue> ones{1, 1, 1};
  EXPECT_EQ(eval_mod(p, ones, kMersenne31), 3U);
  const Polynomial zero = parse_polynomial("x - x");
  EXPECT_EQ(eval_mod(zero, std::vector<Residue>(zero.var_count(), 1), kMersenne31), 0U);
  const Polynomial q(VarTable({"x", "y", "z"}), {Term{BigInt(1), {2, 0, 1}}});
  const std::vector<Residue> pt{2, 0, 3};
  EXPECT_EQ(eval_mod(q, pt, 1009), 12U);
}

TEST(EvalMod, NegativeCoefficients) {
  const Polynomial p = parse_polynomial("-3*x + 1");
  const std::vector<Residue> pt{1};
  EXPECT_EQ(eval_mod(p, pt, 1009), 1009U - 2U);
}

TEST(Arithmetic, PowerMatchesRepeatedProduct) {
  const Polynomial b = parse_polynomial("2*x - y + 3");
  EXPECT_EQ(expand_power(b, 3), b * b * b);
  EXPECT_EQ(expand_power(b, 1), b);
  EXPECT_EQ(b - b, Polynomial::zero(b.vars()));
}

TEST(Resolvent, SmallestCase) {
  const Polynomial r = gen_resolvent(1, 1);
  EXPECT_EQ(r.var_count(), 4U);
  EXPECT_EQ(format_polynomial(r), "-a_0*b_1 + a_1*b_0");
}

// Term counts frozen from an independent symbolic resultant computation.
TEST(Resolvent, TermCountsSmall) {
  const std::vector<std::tuple<unsigned, unsigned, std::size_t>> cases{
      {1, 1, 2}, {2, 1, 3}, {2, 2, 7}, {3, 2, 13}, {3, 3, 34}, {4, 3, 76}};
  for (auto [m, n, terms] : cases) {
    const Polynomial r = gen_resolvent(m, n);
    EXPECT_EQ(r.var_count(), m + n + 2U);
    EXPECT_EQ(r.term_count(), terms) << m << "," << n;
  }
}

TEST(Resolvent, MatchesNumericSylvesterDeterminant) {
  const PrimeField f(kMersenne31);
  Rng rng(99);
  for (auto [m, n] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {3, 1}, {4, 2}, {5, 3}, {4, 4}}) {
    const Polynomial r = gen_resolvent(m, n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto pt = testing::random_point(r.var_count(), kMersenne31, rng);
      const std::vector<Residue> a(pt.begin(), pt.begin() + m + 1);
      const std::vector<Residue> b(pt.begin() + m + 1, pt.end());
      EXPECT_EQ(eval_mod(r, pt, kMersenne31), testing::sylvester_mod(a, b, f)) << m << "," << n;
    }
  }
}

TEST(Resolvent, CapEnforced) {
  EXPECT_THROW(gen_resolvent(10, 8), InvalidArgument);
  EXPECT_THROW(gen_resolvent(0, 3), InvalidArgument);
  EXPECT_NO_THROW(gen_resolvent(2, 2, 4));
  EXPECT_THROW(gen_resolvent(3, 2, 4), InvalidArgument);
}

TEST(PowerBase, Shape) {
  const Polynomial b = power_test_base();
  EXPECT_EQ(b.var_count(), 13U);
  EXPECT_EQ(b.term_count(), 14U);
}

}  // namespace
}  // namespace hornopt
