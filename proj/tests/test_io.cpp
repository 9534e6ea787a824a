#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "divkit/io.hpp"

namespace {

using namespace divkit;

const std::string kSamples = DIVKIT_SAMPLES_DIR;

TEST(Json, ParsesLabelledDistribution) {
  const auto d = parse_distribution(R"({"support": ["a", "b"], "mass": [0.5, 0.5]})");
  EXPECT_EQ(d.support(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.mass(), (std::vector<double>{0.5, 0.5}));
}

TEST(Json, DefaultsAndNumericLabels) {
  const auto d = parse_distribution(R"({"mass": [0.25, 0.75]})");
  EXPECT_EQ(d.support(), (std::vector<std::string>{"0", "1"}));
  const auto e = parse_distribution(R"({"support": [3, 7], "mass": [0.25, 0.75]})");
  EXPECT_EQ(e.support(), (std::vector<std::string>{"3", "7"}));
}

TEST(Csv, ParsesIdenticallyToJson) {
  const auto c = parse_distribution("label,mass\na,0.5\nb,0.5\n");
  const auto j = parse_distribution(R"({"support": ["a", "b"], "mass": [0.5, 0.5]})");
  EXPECT_EQ(c.support(), j.support());
  EXPECT_EQ(c.mass(), j.mass());
}

void expect_field(const std::string& text, const std::string& field) {
  try {
    parse_distribution(text);
    FAIL() << "accepted: " << text;
  } catch (const InputError& e) {
    EXPECT_EQ(e.field(), field) << e.what();
  }
}

TEST(Errors, NameTheOffendingField) {
  expect_field(R"({"support": ["a", "b"], "mass": [0.5, "x"]})", "mass[1]");
  expect_field(R"({"support": ["a"], "mass": [0.5, 0.5]})", "support");
  expect_field(R"({"support": ["a", "b"]})", "mass");
  expect_field(R"({"support": ["a", "b"], "mass": [0.5, 0.6]})", "mass");
  expect_field(R"({"support": ["a", "b"], "mass": [0.5, 0.5)", "json");
  expect_field("label,mass\na,0.5\nb,half\n", "line 3: mass");
  expect_field("name,value\na,1\n", "header");
  expect_field("label,mass\na\n", "line 2");
}

TEST(Files, LoadSamples) {
  const auto p = load_distribution(kSamples + "/p.json");
  const auto q = load_distribution(kSamples + "/q.csv");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(q.size(), 4u);
  try {
    load_distribution(kSamples + "/bad.json");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json: mass[1]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_distribution(kSamples + "/does_not_exist.json"), InputError);
}

TEST(Files, LoadProblem) {
  const auto f = load_problem(kSamples + "/problem.json");
  EXPECT_EQ(f.problem.size(), 3u);
  EXPECT_FALSE(f.reference_given);
  EXPECT_EQ(f.reference, f.problem.barycenter());
  const auto g = load_problem(kSamples + "/problem_q.json");
  EXPECT_TRUE(g.reference_given);
  EXPECT_EQ(g.problem.prior(), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(g.reference, (std::vector<double>{0.3, 0.3, 0.4}));
}

TEST(Problem, ReferenceMayExtendSupport) {
  const auto f = problem_from_json(Json::parse(R"({
    "hypotheses": [{"support": ["a", "b"], "mass": [1, 0]}, {"support": ["a", "b"], "mass": [0, 1]}],
    "q": {"support": ["a", "b", "c"], "mass": [0.25, 0.25, 0.5]}})"));
  EXPECT_EQ(f.problem.support_size(), 3u);
  EXPECT_EQ(f.reference, (std::vector<double>{0.25, 0.25, 0.5}));
}

TEST(Problem, Errors) {
  auto field_of = [](const char* text) {
    try {
      problem_from_json(Json::parse(text));
    } catch (const InputError& e) {
      return e.field();
    }
    return std::string("accepted");
  };
  EXPECT_EQ(field_of(R"({})"), "hypotheses");
  EXPECT_EQ(field_of(R"({"hypotheses": [{"mass": [1]}], "prior": [0.5, 0.5]})"), "prior");
  EXPECT_EQ(field_of(R"({"hypotheses": [{"mass": [1, "z"]}]})"), "hypotheses[0].mass[1]");
  EXPECT_EQ(field_of(R"({"hypotheses": [{"mass": [1]}], "q": {"mass": "x"}})"), "q.mass");
}

TEST(Reals, EncodeDecodeRoundTrip) {
  for (double v : {0.0, -1.5, 1e-300, kInf, -kInf}) EXPECT_EQ(decode_real(encode_real(v), "v"), v);
  EXPECT_TRUE(std::isnan(decode_real(encode_real(kNaN), "v")));
  EXPECT_EQ(encode_real(kInf), Json("inf"));
  EXPECT_THROW(decode_real(Json("bogus"), "v"), InputError);
}

}  // namespace
