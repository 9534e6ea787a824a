#include <gtest/gtest.h>

#include <cmath>

#include "divkit/io.hpp"
#include "divkit/report.hpp"

namespace {

using namespace divkit;

TEST(Verdict, AtLeast) {
  EXPECT_TRUE(CheckReport::at_least("c", "i", 1.0, 0.5).passed());
  EXPECT_EQ(CheckReport::at_least("c", "i", 1.0, 0.5).margin, 0.5);
  EXPECT_TRUE(CheckReport::at_least("c", "i", 0.5, 0.5 + 1e-11).passed());
  EXPECT_TRUE(CheckReport::at_least("c", "i", 0.5, 0.5 + 1e-9).failed());
  EXPECT_TRUE(CheckReport::at_least("c", "i", 0.5, 0.6, 0.2).passed());
}

TEST(Verdict, AtMost) {
  EXPECT_TRUE(CheckReport::at_most("c", "i", 0.5, 1.0).passed());
  EXPECT_EQ(CheckReport::at_most("c", "i", 0.5, 1.0).margin, 0.5);
  EXPECT_TRUE(CheckReport::at_most("c", "i", 1.0, 0.5).failed());
}

TEST(Verdict, Infinities) {
  const auto a = CheckReport::at_least("c", "i", kInf, kInf);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.margin, kInf);
  EXPECT_TRUE(CheckReport::at_least("c", "i", 1.0, kInf).failed());
  EXPECT_TRUE(CheckReport::at_most("c", "i", kInf, kInf).passed());
  EXPECT_TRUE(CheckReport::at_most("c", "i", kInf, 1.0).failed());
  EXPECT_TRUE(CheckReport::identity("c", "i", kInf, kInf, 1e-12).passed());
  EXPECT_TRUE(CheckReport::identity("c", "i", kInf, 1.0, 1e-12).failed());
}

TEST(Verdict, NanAlwaysFails) {
  for (const auto& r : {CheckReport::at_least("c", "i", kNaN, 0.0), CheckReport::at_least("c", "i", kInf, kNaN),
                        CheckReport::at_most("c", "i", 0.0, kNaN), CheckReport::identity("c", "i", kNaN, kNaN, 1.0)}) {
    EXPECT_TRUE(r.failed());
    EXPECT_TRUE(std::isnan(r.margin));
    EXPECT_EQ(r.reason, "nan encountered");
  }
}

TEST(Verdict, IdentityIsRelativeAboveOne) {
  EXPECT_TRUE(CheckReport::identity("c", "i", 1e6, 1e6 + 1e-7, 1e-12).passed());
  EXPECT_TRUE(CheckReport::identity("c", "i", 1e-3, 1e-3 + 1e-11, 1e-12).failed());
}

TEST(Verdict, Skip) {
  const auto r = CheckReport::skip("c", "i", "why", Verdict::degenerate);
  EXPECT_EQ(r.verdict, Verdict::degenerate);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.failed());
}

TEST(Aux, NotesAreKeptInOrder) {
  auto r = CheckReport::at_least("c", "i", 1, 0);
  r.note("b", 2).note("a", 1);
  ASSERT_EQ(r.aux.size(), 2u);
  EXPECT_EQ(r.aux[0].first, "b");
  EXPECT_EQ(r.aux_value("a"), 1.0);
  EXPECT_FALSE(r.aux_value("z"));
}

TEST(Json, Schema) {
  auto r = CheckReport::at_least("chk", "#1", kInf, 2.0);
  r.note("kappa", 0.5);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("check"), "chk");
  EXPECT_EQ(j.at("instance"), "#1");
  EXPECT_EQ(j.at("lhs"), "inf");
  EXPECT_EQ(j.at("rhs"), 2.0);
  EXPECT_EQ(j.at("margin"), "inf");
  EXPECT_EQ(j.at("verdict"), "pass");
  EXPECT_EQ(j.at("aux")[0].at("name"), "kappa");
  EXPECT_EQ(j.at("aux")[0].at("value"), 0.5);
}

TEST(Json, RoundTrip) {
  auto r = CheckReport::at_least("chk", "#1", kNaN, -kInf);
  r.note("x", kInf).note("y", 1e-300);
  const auto back = report_from_json(Json::parse(to_json(r).dump()));
  EXPECT_EQ(back.check_id, r.check_id);
  EXPECT_EQ(back.verdict, Verdict::fail);
  EXPECT_TRUE(std::isnan(back.lhs));
  EXPECT_EQ(back.rhs, -kInf);
  EXPECT_EQ(back.aux, r.aux);
  EXPECT_EQ(back.reason, r.reason);
  EXPECT_THROW(verdict_from_name("maybe"), InputError);
}

}  // namespace
