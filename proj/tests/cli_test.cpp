#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace hornopt {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "hornopt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

TEST(Cli, GenResolvent) {
  const std::string path = (std::filesystem::temp_directory_path() / "hornopt_res11.poly").string();
  const Outcome o = run({"gen", "res", "1", "1", "-o", path, "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json::parse(o.out)["terms"], 2);
  EXPECT_EQ(read_polynomial_file(path).term_count(), 2U);
  EXPECT_EQ(run({"gen", "res", "1", "1"}).out, "-a_0*b_1 + a_1*b_0\n");
}

TEST(Cli, GenPower) {
  const std::string base = temp_file("hornopt_base.poly", "a + b\n");
  const Outcome o = run({"gen", "power", base, "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "a^3 + 3*a^2*b + 3*a*b^2 + b^3\n");
}

TEST(Cli, CountEq1) {
  const std::string f = temp_file("hornopt_eq1.poly", "x^2*z + x^3*y + x^3*y*z\n");
  const Outcome o = run({"count", "-i", f, "--scheme", "x,y,z", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["naive"]["mul"], 9);
  EXPECT_EQ(j["horner"]["mul"], 4);
  EXPECT_EQ(run({"count", "-i", f, "--scheme", "y,x,z", "--format", "json"}).out.find("\"mul\":6") != std::string::npos,
            true);
}

TEST(Cli, OptimizeBrute) {
  const std::string f = temp_file("hornopt_eq1b.poly", "x^2*z + x^3*y + x^3*y*z\n");
  const Outcome o = run({"optimize", "-i", f, "--brute", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json::parse(o.out)["best_mul"], 4);
}

TEST(Cli, OptimizeRecordsSeedAndIsReproducible) {
  const std::vector<std::string> args{"optimize", "--res", "3", "3", "-N", "40", "--k", "3",
                                      "--seed", "77", "--format", "json", "--trace", "--jobs", "2"};
  const Outcome a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  const json ja = json::parse(a.out);
  EXPECT_EQ(ja["seed"], 77);
  ASSERT_EQ(ja["runs"].size(), 3U);
  EXPECT_EQ(ja["runs"][0]["config"]["kind"], "1shift");
  EXPECT_EQ(ja["runs"][2]["config"]["kind"], "mirrorshift");
  EXPECT_TRUE(ja["runs"][0].contains("trace"));
  json first = ja;
  json second = json::parse(run(args).out);
  for (json* j : {&first, &second}) {
    for (auto& r : (*j)["runs"]) r.erase("wall_seconds");
  }
  EXPECT_EQ(first, second);

  const Outcome unseeded = run({"optimize", "--res", "2", "2", "-N", "5", "--format", "json"});
  ASSERT_EQ(unseeded.code, 0);
  EXPECT_TRUE(json::parse(unseeded.out)["seed"].is_number_unsigned());
}

TEST(Cli, OptimizeTextSummary) {
  const Outcome o = run({"optimize", "--res", "3", "2", "-N", "30", "--seed", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  for (const char* key : {"naive:", "occurrence order:", "best:", "reduction:"}) {
    EXPECT_NE(o.out.find(key), std::string::npos) << key;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"optimize", "--res", "3", "3", "--k", "0"}).code, 3);
  EXPECT_EQ(run({"optimize", "--res", "3", "3", "--kind", "sideways"}).code, 3);
  EXPECT_EQ(run({"optimize", "--res", "3", "3", "--t-initial", "1", "--t-final", "5"}).code, 3);
  EXPECT_EQ(run({"optimize"}).code, 3);
  EXPECT_EQ(run({"optimize", "--res", "9", "9"}).code, 3);
  EXPECT_EQ(run({"optimize", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run({"optimize", "--res", "3", "3", "-N", "ten"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const std::string bad = temp_file("hornopt_bad.poly", "x + * y\n");
  const Outcome o = run({"count", "-i", bad});
  EXPECT_EQ(o.code, 2);
  EXPECT_TRUE(o.out.empty());
  EXPECT_NE(o.err.find("line 1"), std::string::npos);
  EXPECT_EQ(run({"count", "-i", "/nonexistent/file.poly"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SweepSelfReference) {
  const Outcome o = run({"sweep-temp", "--res", "3", "2", "-N", "20", "--grid", "0", "--runs", "2", "--seed", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream lines(o.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "t_initial,mean_total,relative,runs");
  EXPECT_EQ(row.substr(0, 4), "0.0,");
  EXPECT_EQ(row.substr(row.size() - 6), ",1.0,2");
}

TEST(Cli, NeighborhoodStudyDegenerate) {
  const Outcome o = run({"neighborhood-study", "--res", "3", "2", "--kinds", "1swap", "--n-values", "30", "--runs",
                         "1", "--seed", "5", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  ASSERT_EQ(j["rows"].size(), 1U);
  const auto& row = j["rows"][0];
  EXPECT_EQ(row["E_min"], row["histogram"][0][0]);
}

TEST(Cli, NeighborhoodStudyCsvAndCommonSeeds) {
  const Outcome o = run({"neighborhood-study", "--res", "3", "2", "--kinds", "1swap,1swap", "--n-values", "20,40",
                         "--runs", "3", "--seed", "5"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream lines(o.out);
  std::vector<std::string> rows;
  for (std::string l; std::getline(lines, l);) rows.push_back(l);
  ASSERT_EQ(rows.size(), 5U);
  EXPECT_EQ(rows[0], "N,kind,k,E_min");
  EXPECT_EQ(rows[1], rows[3]);
  EXPECT_EQ(rows[2], rows[4]);
}

TEST(Cli, ExpectedMinDie) {
  const std::string h = temp_file("hornopt_die.csv", "value,count\n1,1\n2,1\n3,1\n4,1\n5,1\n6,1\n");
  const Outcome o = run({"expected-min", "--histogram", h, "--k", "1,2", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["rows"][0]["E_min"], 3.5);
  EXPECT_NEAR(j["rows"][1]["E_min"].get<double>(), 91.0 / 36.0, 1e-12);
  const std::string bad = temp_file("hornopt_badhist.csv", "1,2\nfoo,bar\n");
  EXPECT_EQ(run({"expected-min", "--histogram", bad}).code, 2);
}

TEST(Cli, FlatnessJson) {
  const Outcome o = run({"flatness", "--res", "2", "2", "--radius", "2", "-N", "20", "--seed", "1", "--exhaustive"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  ASSERT_EQ(j["levels"].size(), 2U);
  EXPECT_EQ(j["levels"][0]["evaluated"], 15);
  EXPECT_EQ(j["seed"], 1);
}

}  // namespace
}  // namespace hornopt
