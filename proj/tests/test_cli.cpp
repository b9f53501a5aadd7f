#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hv/cli.hpp"

using hv::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string write_config(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Cli, BracketGolden) {
  const Outcome r = call({"bracket", "L[2]", "L[-2]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-4*L[0] + 1/2*z1\n");
}

TEST(Cli, NormalizeAndAct) {
  EXPECT_EQ(call({"normalize", "I[1]*I[-1]*L[0]"}).out, "L[0]*I[-1]*I[1] + z3*L[0]\n");
  EXPECT_EQ(call({"act", "I[2]", "L[-1]*w"}).out, "-10*w\n");
  EXPECT_EQ(call({"defect", "L[1]", "L[-1]*w"}).out, "-2*L[0]*w\n");
  EXPECT_EQ(call({"act", "L[-1]*L[1]", "w"}).out, "2*L[-1]*w\n");
}

TEST(Cli, SolveGolden) {
  const Outcome r = call({"solve", "--module", "reduced", "--degree", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "dimension 1: w\n");
}

TEST(Cli, VerifyGolden) {
  const Outcome r = call({"verify", "--lemma", "3.1", "--a-max", "3", "--k-max", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "lemma 3.1: 12 instances, 0 failures\n");
}

TEST(Cli, DescendAndNilpotency) {
  EXPECT_EQ(call({"descend", "--module", "reduced", "L[-1]*w"}).out, "trace: I[2]\nresult: -10*w\n");
  EXPECT_EQ(call({"nilpotency", "L[1]", "L[-1]*w"}).out, "nilpotency index 3\n");
}

TEST(Cli, BasisListing) {
  const Outcome r = call({"basis", "--degree", "0", "--l0", "0", "--zdeg", "1"});
  EXPECT_EQ(r.out, "5 basis vectors\nw\nz0*w\nz1*w\nz2*w\nz3*w\n");
}

TEST(Cli, ReadsStdin) {
  EXPECT_EQ(call({"defect", "L[1]", "-"}, "L[-1]*w\n").out, "-2*L[0]*w\n");
}

TEST(Cli, ConfigFile) {
  const std::string path = write_config(
      "hv_cli_config.json",
      R"({"psi": {"L1": "1/2", "L2": "3", "I1": 5}, "xi": ["0", "1", "0", "0"],
          "bounds": {"degree": 2, "l0": 1, "zdeg": 0, "genIndex": 2}, "module": "reduced"})");
  EXPECT_EQ(call({"act", "L[1]", "w", "--config", path}).out, "1/2*w\n");
  EXPECT_EQ(call({"basis", "--config", path}).out.substr(0, 19), "16 basis vectors\nw\n");
  const std::string bad = write_config("hv_cli_bad.json", R"({"psi": {"L1": 1.5}})");
  EXPECT_EQ(call({"solve", "--config", bad}).code, 1);
}

TEST(Cli, MachineOutput) {
  const Outcome r = call({"descend", "--module", "reduced", "--json", "L[-1]*w + 2*I[-1]*w"});
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc.at("schemaVersion"), 1);
  EXPECT_EQ(doc.at("command"), "descend");
  EXPECT_TRUE(doc.at("result").at("trace").is_array());
  EXPECT_FALSE(doc.at("result").at("trace").empty());

  const json b = json::parse(call({"bracket", "L[2]", "L[-2]", "--json"}).out);
  EXPECT_EQ(b.at("result").at("terms"), json::parse(R"([["-4", "L[0]"], ["1/2", "z1"]])"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({"bracket", "L[2", "L[-2]"}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"bracket", "L[1]"}).code, 1);
  EXPECT_EQ(call({"verify"}).code, 1);
  EXPECT_EQ(call({"verify", "--lemma", "7.7"}).code, 1);
  EXPECT_EQ(call({"solve", "--degree", "-1"}).code, 1);

  EXPECT_EQ(call({"solve", "--psi", "0,0,5"}).code, 2);
  const std::string forbidden = write_config("hv_cli_forbidden.json", R"({"psi": {"L1": 1, "L2": 1, "I1": 1, "L3": 1}})");
  EXPECT_EQ(call({"solve", "--config", forbidden}).code, 2);
  EXPECT_EQ(call({"descend", "--module", "reduced", "--psi", "2,3,0", "w"}).code, 2);

  const Outcome unknown = call({"member", "--module", "reduced", "--psi", "2,3,0", "--xi", "0,1,0,0",
                                "--gen-index", "3", "--degree", "5", "w", "I[-1]*w", "I[-2]*w"});
  EXPECT_EQ(unknown.code, 3);
  EXPECT_EQ(unknown.out.rfind("unknownWithinBounds", 0), 0U);
  EXPECT_EQ(call({"nilpotency", "L[1]", "L[-1]*w", "--cap", "2"}).code, 3);

  const Outcome member = call({"member", "--module", "reduced", "--gen-index", "2", "--degree", "3", "w", "I[-1]*w"});
  EXPECT_EQ(member.code, 0);
  EXPECT_EQ(member.out.rfind("member", 0), 0U);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"solve", "--degree", "2", "--zdeg", "1", "--json"};
  EXPECT_EQ(call(args).out, call(args).out);
  const std::vector<std::string> verify{"verify", "--lemma", "4.2i", "--json"};
  EXPECT_EQ(call(verify).out, call(verify).out);
}
