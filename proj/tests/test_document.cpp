#include <gtest/gtest.h>

#include <clocale>

#include "alphatag/document.hpp"

using namespace alphatag;

namespace {

void expect_round_trip(const Json& doc) {
  const std::string text = doc.dump();
  Json parsed = Json::parse(text);
  EXPECT_EQ(recompute_document(parsed).dump(), text) << text.substr(0, 200);
}

}  // namespace

TEST(Document, EnvelopeAndKeyOrder) {
  Json doc = sequence_document(generate(Rational(2), 9));
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"kind", "meta", "payload"}));
  EXPECT_EQ(doc["kind"], "sequence");
  EXPECT_EQ(doc["meta"]["alpha"], "2/1");
  EXPECT_EQ(doc["meta"]["horizon"], "count:9");
  EXPECT_EQ(doc["meta"]["version"], kToolVersion);
  EXPECT_EQ(doc["payload"]["terms"].back(), "34");
}

TEST(Document, TermsAreStringsNeverFloats) {
  Json doc = sequence_document(generate(rational_from_parts(3, 2), 120));
  for (const auto& t : doc["payload"]["terms"]) ASSERT_TRUE(t.is_string());
  mpz_class two_118;
  mpz_ui_pow_ui(two_118.get_mpz_t(), 2, 118);
  EXPECT_EQ(doc["payload"]["terms"].back(), two_118.get_str());
}

TEST(Document, EveryKindRoundTrips) {
  expect_round_trip(sequence_document(generate(rational_from_parts(7, 2), 30)));
  expect_round_trip(sequence_document(generate(Rational(3), Horizon::up_to(Natural(1000)))));
  PSequence s(Rational(3));
  expect_round_trip(windows_document(s, 1, 12));
  expect_round_trip(zeckendorf_document(s, Natural(12345)));
  Solver solver(Rational(2));
  expect_round_trip(classify_document(solver, initial_state(Rational(2), Natural(10))));
  expect_round_trip(classify_document(solver, GameState{Natural(0), Natural(0), Rational(2)}));
  expect_round_trip(classify_document(solver, GameState{Natural(100), Natural(7), Rational(2)}));
  PSequence t(rational_from_parts(7, 2));
  expect_round_trip(s_sequence_document(t, 13));
  expect_round_trip(cutoffs_document(enumerate_cutoffs(Rational(1), rational_from_parts(13, 3))));
  auto census = enumerate_cutoffs(Rational(1), Rational(6));
  expect_round_trip(gamma_document(gamma_rows(census.cutoffs, rational_from_parts(5, 2), Rational(6), rational_from_parts(1, 2))));
  expect_round_trip(diagnostics_document(rational_from_parts(9, 2), 50));
}

TEST(Document, HorizonStrings) {
  EXPECT_EQ(horizon_string(Horizon::terms(9)), "count:9");
  EXPECT_EQ(horizon_string(Horizon::up_to(Natural(300))), "max:300");
  EXPECT_EQ(parse_horizon("max:300").kind, Horizon::Kind::value_bound);
  EXPECT_THROW(parse_horizon("bogus"), std::invalid_argument);
  EXPECT_THROW(parse_document_kind("nope"), std::invalid_argument);
  EXPECT_EQ(parse_document_kind("s-sequence"), DocumentKind::s_sequence);
}

TEST(Gamma, CsvRows) {
  auto census = enumerate_cutoffs(Rational(1), Rational(6));
  auto rows = gamma_rows(census.cutoffs, rational_from_parts(5, 2), Rational(6), rational_from_parts(1, 2));
  std::string csv = gamma_csv(rows);
  EXPECT_EQ(csv,
            "n,gamma,gamma_over_n2\n"
            "2.5,3,0.480000\n"
            "3,4,0.444444\n"
            "3.5,5,0.408163\n"
            "4,8,0.500000\n"
            "4.5,11,0.543210\n"
            "5,14,0.560000\n"
            "5.5,18,0.595041\n"
            "6,21,0.583333\n");
}

TEST(Gamma, CsvIgnoresLocale) {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  std::string saved = old ? old : "C";
  if (!std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) GTEST_SKIP() << "de_DE locale not installed";
  auto rows = std::vector<GammaRow>{{rational_from_parts(5, 2), 3}};
  std::string csv = gamma_csv(rows);
  std::setlocale(LC_NUMERIC, saved.c_str());
  EXPECT_EQ(csv, "n,gamma,gamma_over_n2\n2.5,3,0.480000\n");
}

TEST(Gamma, RatioSpread) {
  std::vector<GammaRow> rows{{Rational(10), 74}, {Rational(20), 400}, {Rational(30), 990}};
  auto s = gamma_ratio_spread(rows, Rational(10), Rational(30));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->rows, 3u);
  EXPECT_DOUBLE_EQ(s->min, 0.74);
  EXPECT_DOUBLE_EQ(s->max, 1.1);
  EXPECT_NEAR(s->relative, (1.1 - 0.74) / 1.1, 1e-12);
  EXPECT_FALSE(gamma_ratio_spread(rows, Rational(40), Rational(50)).has_value());
}

TEST(DecimalString, TerminatingAndNot) {
  EXPECT_EQ(decimal_string(rational_from_parts(5, 2)), "2.5");
  EXPECT_EQ(decimal_string(Rational(10)), "10");
  EXPECT_EQ(decimal_string(rational_from_parts(1, 40)), "0.025");
  EXPECT_EQ(decimal_string(rational_from_parts(-3, 4)), "-0.75");
  EXPECT_EQ(decimal_string(rational_from_parts(1, 3)), "1/3");
}
