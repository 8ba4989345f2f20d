#include <gtest/gtest.h>

#include "helpers.hpp"
#include "sortreduce/errors.hpp"
#include "sortreduce/input_sets.hpp"
#include "sortreduce/report_io.hpp"

using namespace sortreduce;
using namespace sortreduce::testing;

TEST(CodewordFile, RoundTrip) {
  const DualCodeword v(big({4, 1, 0, 6}), Modulus(BigInt(7)));
  const std::string text = format_codeword_file(v);
  EXPECT_EQ(text, "4 7\n4\n1\n0\n6\n");
  EXPECT_EQ(parse_codeword_file(text), v);
  const DualCodeword big_v = sample_dual_uniform(30, Modulus(BigInt("1000000000000000000000000000057")), 2);
  EXPECT_EQ(parse_codeword_file(format_codeword_file(big_v)), big_v);
}

TEST(CodewordFile, Malformed) {
  EXPECT_THROW(parse_codeword_file("3 7\n1\n2\n"), FormatError);
  EXPECT_THROW(parse_codeword_file("2 7\n1\n7\n"), FormatError);
  EXPECT_THROW(parse_codeword_file("2 7\n1\n-1\n"), FormatError);
  EXPECT_THROW(parse_codeword_file("2 7\n1\n2\n3\n"), FormatError);
  EXPECT_THROW(parse_codeword_file("2 7\n1\nx\n"), FormatError);
  EXPECT_THROW(parse_codeword_file(""), FormatError);
}

TEST(VectorList, ParseAndFormat) {
  const auto vs = parse_vector_list("[[1 -2 3][0 0 5]]");
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0], vec({1, -2, 3}));
  EXPECT_EQ(parse_vector_list(format_vector(vs[1]))[0], vs[1]);
}

TEST(Csv, QuotingAndWidth) {
  CsvWriter w({"a", "b"});
  w.add({"1", "x,y"});
  w.add({"say \"hi\"", ""});
  EXPECT_EQ(w.str(), "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",\n");
  EXPECT_EQ(w.rows(), 2u);
  EXPECT_THROW(w.add({"only"}), FormatError);
}

TEST(Recipes, ParseAndJson) {
  const InputRecipe s = parse_recipe("sparse:100:16:8:8", 3);
  EXPECT_EQ(s.kind, RecipeKind::sparse_signed);
  EXPECT_EQ(s.count, 100u);
  EXPECT_EQ(s.norm2(), 16);
  const InputRecipe p = parse_recipe("pattern:10:1,2,-1,-1,-1", 4);
  EXPECT_EQ(p.pattern_values, (std::vector<std::int64_t>{1, 2, -1, -1, -1}));
  EXPECT_EQ(parse_recipe("unit", 0).kind, RecipeKind::unit_basis);
  for (const auto& r : {s, p}) EXPECT_EQ(recipe_from_json(to_json(r)), r);
  EXPECT_THROW(parse_recipe("sparse:1:2", 0), FormatError);
  EXPECT_THROW(parse_recipe("gauss:5", 0), FormatError);
}

TEST(Config, JsonRoundTrip) {
  RunConfigFile c;
  c.algo = "block";
  c.dim = 40;
  c.modulus = "1000000000039";
  c.seed = 9;
  c.recipes = {parse_recipe("sparse:100:16:8:8", 3)};
  c.q_schedule = {"1", "2"};
  c.max_iterations = 50;
  c.codeword_paths = {"a.txt"};
  EXPECT_EQ(config_from_json(to_json(c)), c);
  RunConfigFile d;
  d.preset = "darmstadt40";
  d.scale = 0.01;
  EXPECT_EQ(config_from_json(to_json(d)), d);
  nlohmann::json broken = to_json(c);
  broken["dim"] = "forty";
  EXPECT_THROW(config_from_json(broken), FormatError);
  broken.erase("dim");
  EXPECT_THROW(config_from_json(broken), FormatError);
}

TEST(ReportJson, CarriesTheRunFacts) {
  const DualCodeword v(big({5, 0, 9, 2}), Modulus(BigInt(11)));
  const RunReport r = run_simple(v, 4, SolverConfig::simple());
  const nlohmann::json j = report_to_json(r);
  EXPECT_EQ(j.at("status"), "FOUND");
  EXPECT_EQ(j.at("iterations"), 0);
  EXPECT_EQ(j.at("first_norm2"), "1");
  EXPECT_EQ(j.at("output_vectors").at(0), nlohmann::json({0, 1, 0, 0}));
  EXPECT_TRUE(j.contains("predicted_bounds"));
  EXPECT_EQ(format_real(Real("1651.2621")), "1651.26");
}
