#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "orclsim/errors.hpp"
#include "orclsim/keyvalue.hpp"

using namespace orclsim;

TEST(KeyValue, ParsesCommentsRepeatsAndTypes) {
  const auto kv = KeyValueFile::parse(
      "# comment\n"
      "name = ride one\n"
      "\n"
      "rate = 120\n"
      "flag = true\n"
      "shift = a 1\n"
      "shift = b 2\n");
  EXPECT_EQ(kv.get("name"), "ride one");
  EXPECT_EQ(kv.get_int("rate", 0), 120);
  EXPECT_DOUBLE_EQ(kv.get_double("rate", 0.0), 120.0);
  EXPECT_TRUE(kv.get_bool("flag", false));
  EXPECT_EQ(kv.get_all("shift").size(), 2u);
  EXPECT_EQ(kv.get("shift"), "b 2");
  EXPECT_EQ(kv.get_or("missing", "x"), "x");
}

TEST(KeyValue, MalformedLinesNameTheLine) {
  try {
    KeyValueFile::parse("a = 1\nnot a pair\n", "run.cfg");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("run.cfg:2"), std::string::npos);
  }
  EXPECT_THROW(KeyValueFile::parse(" = 3\n"), ConfigError);
}

TEST(Numbers, ParseAndFormat) {
  EXPECT_EQ(parse_double("1.5"), 1.5);
  EXPECT_EQ(parse_double("−3.2"), -3.2);
  EXPECT_TRUE(std::isnan(*parse_double("NaN")));
  EXPECT_FALSE(parse_double("1.5x"));
  EXPECT_FALSE(parse_double(""));
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "NaN");
}

TEST(Numbers, FormatRoundTrips) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    EXPECT_EQ(*parse_double(format_double(x)), x);
  }
}
