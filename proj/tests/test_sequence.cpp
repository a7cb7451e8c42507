#include <gtest/gtest.h>

#include <map>

#include "alphatag/sequence.hpp"
#include "oracles.hpp"

using namespace alphatag;

namespace {

std::vector<std::string> terms_of(const PSequence& s) { return oracle::strings_of(s.within_horizon()); }

std::vector<std::string> split(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

const std::vector<std::string> kSampleAlphas = {"1", "3/2", "2", "5/2", "3", "10/3", "7/2", "11/3", "43/11", "4", "9/2", "29/3"};

}  // namespace

TEST(Generate, PowersOfTwoBelowTwo) {
  EXPECT_EQ(terms_of(generate(rational_from_parts(3, 2), 8)), split("0,1,2,4,8,16,32,64"));
}

TEST(Generate, FibonacciAtTwo) { EXPECT_EQ(terms_of(generate(Rational(2), 9)), split("0,1,2,3,5,8,13,21,34")); }

TEST(Generate, ThreeTagListing) {
  EXPECT_EQ(terms_of(generate(Rational(3), 13)), split("0,1,2,3,4,6,8,11,15,21,29,40,55"));
}

TEST(Generate, NineHalves) {
  EXPECT_EQ(terms_of(generate(rational_from_parts(9, 2), 11)), split("0,1,2,3,4,5,7,9,11,14,18"));
}

TEST(Generate, RejectsAlphaBelowOne) {
  EXPECT_THROW(generate(rational_from_parts(1, 2), 5), std::invalid_argument);
}

TEST(Generate, MatchesLinearScanOracle) {
  for (const auto& a : kSampleAlphas) {
    Rational alpha = parse_rational(a);
    auto want = oracle::strings(oracle::sequence(oracle::frac(alpha), 400));
    EXPECT_EQ(terms_of(generate(alpha, 400)), want) << a;
  }
}

TEST(Generate, ValueBoundHorizon) {
  auto s = generate(Rational(2), Horizon::up_to(Natural(100)));
  EXPECT_EQ(terms_of(s), split("0,1,2,3,5,8,13,21,34,55,89"));
  EXPECT_EQ(s.generated_by().kind, Horizon::Kind::value_bound);
}

TEST(Generate, TermsBeyondTenToTheThirtyAreExact) {
  Rational alpha = rational_from_parts(7, 2);
  auto s = generate(alpha, 600);
  auto want = oracle::sequence(oracle::frac(alpha), 600);
  ASSERT_GT(want.back(), oracle::cpp_int("1000000000000000000000000000000"));
  EXPECT_EQ(s[599].str(), want.back().str());
}

TEST(Generate, SameSequenceAcrossOneStableInterval) {
  auto a = terms_of(generate(Rational(3), 300));
  EXPECT_EQ(terms_of(generate(rational_from_parts(10, 3), 300)), a);
  EXPECT_EQ(terms_of(generate(rational_from_parts(17, 5), 300)), a);
}

TEST(Window, ExamplesMatchTheDefinition) {
  PSequence t3(Rational(3));
  auto i6 = t3.index_of(Natural(6));
  ASSERT_TRUE(i6.has_value());
  Window w = window(t3, *i6);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(t3[w.first], Natural(15));

  PSequence t52(rational_from_parts(5, 2));
  Window w1 = window(t52, 1);
  EXPECT_EQ(w1.member_indices(), (std::vector<std::size_t>{1, 2}));

  PSequence t2(Rational(2));
  Window w2 = window(t2, *t2.index_of(Natural(2)));
  ASSERT_EQ(w2.size(), 1u);
  EXPECT_EQ(t2[w2.first], Natural(3));
}

TEST(Window, RejectsIndexZero) {
  PSequence s(Rational(2));
  EXPECT_THROW(window(s, 0), std::invalid_argument);
}

TEST(Window, AgreesWithDefinitionScan) {
  for (const auto& a : kSampleAlphas) {
    Rational alpha = parse_rational(a);
    PSequence s(alpha);
    auto p = oracle::sequence(oracle::frac(alpha), 2);
    for (std::size_t i = 1; i <= 60; ++i) {
      Window w = window(s, i);
      std::vector<std::string> got;
      for (auto j : w.member_indices()) got.push_back(s[j].str());
      EXPECT_EQ(got, oracle::strings(oracle::window_members(oracle::frac(alpha), p, i))) << a << " i=" << i;
    }
  }
}

TEST(Zeckendorf, FibonacciExamples) {
  PSequence s(Rational(2));
  EXPECT_EQ(oracle::strings_of(zeckendorf(s, Natural(10)).parts(s)), split("2,8"));
  EXPECT_EQ(oracle::strings_of(zeckendorf(s, Natural(13)).parts(s)), split("13"));
}

TEST(Zeckendorf, GreedyIsTheUniqueRepresentation) {
  // Every n <= 500 has exactly one gap-satisfying representation, and greedy finds it.
  for (const char* a : {"2", "5/2", "3", "7/2"}) {
    Rational alpha = parse_rational(a);
    auto f = oracle::frac(alpha);
    auto p = oracle::sequence_upto(f, 600);
    auto counts = oracle::representation_counts(f, p, 500);
    PSequence s(alpha);
    for (int n = 1; n <= 500; ++n) {
      ASSERT_EQ(counts[n], 1) << a << " n=" << n;
      auto z = zeckendorf(s, Natural(static_cast<unsigned long>(n)));
      Natural sum(0);
      for (const auto& part : z.parts(s)) sum += part;
      EXPECT_EQ(sum, Natural(static_cast<unsigned long>(n)));
    }
  }
}

TEST(Zeckendorf, TwentyForAlphaThree) {
  // The unique representation found by exhaustive search.
  Rational alpha(3);
  auto f = oracle::frac(alpha);
  auto p = oracle::sequence_upto(f, 20);
  std::vector<std::vector<long>> found;
  std::vector<long> terms;
  for (std::size_t i = 1; i < p.size(); ++i) terms.push_back(static_cast<long>(p[i]));
  for (unsigned mask = 1; mask < (1u << terms.size()); ++mask) {
    std::vector<long> pick;
    long sum = 0;
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (mask & (1u << i)) {
        pick.push_back(terms[i]);
        sum += terms[i];
      }
    bool gap = true;
    for (std::size_t i = 0; i + 1 < pick.size(); ++i) gap = gap && 3 * pick[i] < pick[i + 1];
    if (sum == 20 && gap) found.push_back(pick);
  }
  ASSERT_EQ(found.size(), 1u);
  PSequence s(alpha);
  std::vector<std::string> want;
  for (long v : found[0]) want.push_back(std::to_string(v));
  EXPECT_EQ(oracle::strings_of(zeckendorf(s, Natural(20)).parts(s)), want);
}

TEST(Zeckendorf, RejectsZero) {
  PSequence s(Rational(2));
  EXPECT_THROW(zeckendorf(s, Natural(0)), std::invalid_argument);
}

TEST(SSequence, SevenHalvesExample) {
  PSequence s(rational_from_parts(7, 2));
  EXPECT_EQ(s_sequence(s, 13).values, (std::vector<std::size_t>{3, 4, 4, 4, 5, 5, 5, 5, 5, 5, 5, 5, 5}));
}

TEST(SSequence, AgreesWithDefinitionScan) {
  for (const char* a : {"2", "3", "7/2", "9/2"}) {
    Rational alpha = parse_rational(a);
    auto f = oracle::frac(alpha);
    auto p = oracle::sequence(f, 2);
    PSequence s(alpha);
    auto got = s_sequence(s, 40).values;
    for (std::size_t i = 1; i <= 40; ++i) EXPECT_EQ(got[i - 1], oracle::s_value(f, p, i)) << a << " i=" << i;
  }
}

TEST(SSequence, FibonacciIsConstantTwo) {
  PSequence s(Rational(2));
  EXPECT_EQ(s_sequence(s, 5).values, (std::vector<std::size_t>{2, 2, 2, 2, 2}));
}

TEST(SSequence, NondecreasingAndBoundedRepetitionBelowTheDegree) {
  for (const auto& a : kSampleAlphas) {
    Rational alpha = parse_rational(a);
    PSequence s(alpha);
    auto v = s_sequence(s, 200).values;
    auto k = detect_recurrence(s).degree;
    std::map<std::size_t, std::size_t> seen;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) EXPECT_LE(v[i - 1], v[i]) << a;
      seen[v[i]]++;
    }
    EXPECT_EQ(v.back(), k) << a;
    for (auto [m, times] : seen)
      if (m < k) EXPECT_LE(times, m + 1) << a << " value " << m;
  }
}

TEST(DetectRecurrence, TableExamples) {
  PSequence t2(Rational(2));
  auto r2 = detect_recurrence(t2);
  EXPECT_TRUE(r2.certified);
  EXPECT_EQ(r2.degree, 2u);

  PSequence t3(Rational(3));
  auto r3 = detect_recurrence(t3);
  EXPECT_TRUE(r3.certified);
  EXPECT_EQ(r3.degree, 4u);

  PSequence t72(rational_from_parts(7, 2));
  auto r72 = detect_recurrence(t72);
  EXPECT_TRUE(r72.certified);
  EXPECT_EQ(r72.degree, 5u);
  EXPECT_EQ(oracle::strings_of(recurrence_prefix(t72, r72)), split("0,1,2,3,4,6,8,11,15,21"));

  PSequence t1(Rational(1));
  auto r1 = detect_recurrence(t1);
  EXPECT_EQ(r1.degree, 1u);
  EXPECT_EQ(oracle::strings_of(recurrence_prefix(t1, r1)), split("0,1"));
}

TEST(DetectRecurrence, HoldsToTheHorizonOnceCertified) {
  for (const auto& a : kSampleAlphas) {
    Rational alpha = parse_rational(a);
    PSequence s(alpha);
    auto rec = detect_recurrence(s);
    ASSERT_TRUE(rec.certified) << a;
    auto p = oracle::sequence(oracle::frac(alpha), 1000);
    for (std::size_t n = rec.holds_from; n < p.size(); ++n)
      ASSERT_EQ(p[n], p[n - 1] + p[n - rec.degree]) << a << " n=" << n;
    if (rec.holds_from > 2) {
      std::size_t n = rec.holds_from - 1;
      EXPECT_NE(p[n], p[n - 1] + p[n - rec.degree]) << a << ": holds_from is not the first index";
    }
  }
}

TEST(DetectRecurrence, InvariantUnderLongerHorizon) {
  for (const auto& a : kSampleAlphas) {
    Rational alpha = parse_rational(a);
    auto s1 = generate(alpha, 50);
    auto s2 = generate(alpha, 100);
    auto r1 = detect_recurrence(s1);
    auto r2 = detect_recurrence(s2);
    EXPECT_EQ(r1.degree, r2.degree) << a;
    EXPECT_EQ(r1.holds_from, r2.holds_from) << a;
  }
}

TEST(DetectRecurrence, ReportsUncertifiedWhenTheLimitIsTooSmall) {
  PSequence s(rational_from_parts(9, 2));
  auto rec = detect_recurrence(s, 12);
  EXPECT_FALSE(rec.certified);
}

TEST(DegreeBounds, DetectedDegreeLiesInside) {
  for (const auto& a : kSampleAlphas) {
    Rational alpha = parse_rational(a);
    PSequence s(alpha);
    auto k = static_cast<int>(detect_recurrence(s).degree);
    auto [lo, hi] = degree_bounds(alpha);
    EXPECT_LE(lo, k) << a;
    EXPECT_GE(hi, k) << a;
  }
}

TEST(DegreeBounds, MatchesIndependentEvaluation) {
  // k = log L / log(L / (L - 1)) evaluated at L = alpha and L = alpha + 1.
  auto f = [](long double l) { return std::log(l) / std::log(l / (l - 1)); };
  for (const char* a : {"2", "3", "4", "7/2", "9/2"}) {
    Rational alpha = parse_rational(a);
    long double x = alpha.to_double();
    auto [lo, hi] = degree_bounds(alpha);
    EXPECT_EQ(lo, static_cast<int>(std::ceil(f(x)))) << a;
    EXPECT_EQ(hi, static_cast<int>(std::floor(f(x + 1)))) << a;
  }
  EXPECT_EQ(degree_bounds(Rational(1)).first, 1);
}

TEST(DegreeBounds, PrintedUpperFormulaExcludesTheDegreeAtThree) {
  // log(a) / (log(a + 1) - log(a)) at a = 3 is below the detected degree 4,
  // which is why degree_bounds evaluates the corrected expression instead.
  double printed = std::log(3.0) / (std::log(4.0) - std::log(3.0));
  PSequence s(Rational(3));
  EXPECT_LT(std::floor(printed), static_cast<double>(detect_recurrence(s).degree));
}
