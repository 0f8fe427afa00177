#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "itolab_cli/app.hpp"
#include "itolab_cli/check_laws.hpp"

namespace fs = std::filesystem;
using itolab::Json;
using itolab::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("itolab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const fs::path& dir, const Json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump();
  return p;
}

}  // namespace

TEST(Cli, UnknownCommandIsUsageError) {
  EXPECT_EQ(invoke({"frobnicate"}).code, itolab::cli::kExitUsage);
  EXPECT_EQ(invoke({}).code, itolab::cli::kExitUsage);
}

TEST(Cli, CheckLawsSmallRunPasses) {
  const auto dir = scratch("small");
  const auto r = invoke({"check-laws", "--instances", "3", "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("all laws hold"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "summary.json"));
  EXPECT_TRUE(fs::exists(dir / "tridendriform.json"));
  const Json tri = Json::parse(slurp(dir / "tridendriform.json"));
  EXPECT_EQ(tri["passed"], true);
  EXPECT_EQ(tri["mode"], "rational");
}

TEST(Cli, CheckLawsIsReproducible) {
  const auto a = scratch("repro_a");
  const auto b = scratch("repro_b");
  ASSERT_EQ(invoke({"check-laws", "--instances", "4", "--seed", "9", "--out", a.string()}).code, 0);
  ASSERT_EQ(invoke({"check-laws", "--instances", "4", "--seed", "9", "--out", b.string()}).code, 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    ASSERT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
  }
  EXPECT_EQ(files, itolab::cli::check_law_names().size() + 1);
}

TEST(Cli, FloatModeCheckLaws) {
  const auto dir = scratch("float");
  const auto r = invoke({"check-laws", "--mode", "float64", "--instances", "3", "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, FaultInjectionExitsWithViolation) {
  const auto dir = scratch("fault");
  const auto cfg = write_config(dir, Json{{"fault", "succ-backward"}, {"laws", {"tridendriform"}}, {"instances", 5}});
  const auto r = invoke({"check-laws", "--config", cfg.string(), "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, itolab::cli::kExitLawViolation);
  const Json tri = Json::parse(slurp(dir / "out" / "tridendriform.json"));
  EXPECT_EQ(tri["passed"], false);
  EXPECT_TRUE(tri.contains("first_failure"));
}

TEST(Cli, BadInputsAreUsageErrors) {
  const auto dir = scratch("bad");
  EXPECT_EQ(invoke({"check-laws", "--h", "3/2", "--out", dir.string()}).code, itolab::cli::kExitUsage);
  EXPECT_EQ(invoke({"check-laws", "--law", "nonsense", "--out", dir.string()}).code, itolab::cli::kExitUsage);
  const auto cfg = write_config(dir, Json{{"instancez", 3}});
  const auto r = invoke({"check-laws", "--config", cfg.string(), "--out", dir.string()});
  EXPECT_EQ(r.code, itolab::cli::kExitUsage);
  EXPECT_NE(r.err.find("error: "), std::string::npos);
  EXPECT_EQ(invoke({"check-laws", "--config", (dir / "missing.json").string()}).code, itolab::cli::kExitUsage);
}

TEST(Cli, ConfigParsing) {
  const auto c = itolab::cli::check_config_from_json(
      Json{{"mode", "float64"}, {"seed", 3}, {"intervals", {2, 5}}, {"h", {"1/4"}}, {"laws", {"zinbiel"}}});
  EXPECT_EQ(c.mode, itolab::ScalarMode::kFloat64);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.intervals, (std::vector<std::size_t>{2, 5}));
  EXPECT_NO_THROW(itolab::cli::validate(c));
  EXPECT_THROW(itolab::cli::check_config_from_json(Json{{"seed", "x"}}), itolab::Error);
}

TEST(Cli, ConvergeWritesIdenticalCsv) {
  const auto a = scratch("conv_a");
  const auto b = scratch("conv_b");
  const std::vector<std::string> common{"converge", "--law", "cocycle", "--meshes", "16,64,256", "--count", "20"};
  auto args_a = common;
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = common;
  args_b.insert(args_b.end(), {"--out", b.string()});
  const auto ra = invoke(args_a);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(invoke(args_b).code, 0);
  std::size_t csv = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() == ".csv") ++csv;
    ASSERT_EQ(slurp(entry.path()), slurp(b / entry.path().filename()));
  }
  EXPECT_EQ(csv, 1u);
}

TEST(Cli, ConvergeSingleMeshRejected) {
  EXPECT_EQ(invoke({"converge", "--meshes", "64"}).code, itolab::cli::kExitUsage);
}

TEST(Cli, MeascatLattice) {
  const auto r1 = invoke({"meascat", "lattice", "1"});
  EXPECT_EQ(r1.code, 0);
  EXPECT_EQ(r1.out.rfind("1 sigma-algebras on 1 point\n", 0), 0u) << r1.out;
  const auto r4 = invoke({"meascat", "lattice", "4"});
  EXPECT_EQ(r4.out.rfind("15 sigma-algebras on 4 points", 0), 0u);
  EXPECT_NE(r4.out.find("complete lattice under inclusion: yes"), std::string::npos);
  EXPECT_EQ(invoke({"meascat", "lattice", "7"}).code, itolab::cli::kExitUsage);
  const auto dot = invoke({"meascat", "dot", "2"});
  EXPECT_NE(dot.out.find("digraph sigma_algebras_2"), std::string::npos);
}

TEST(Cli, MeascatDemoUniversalAdjunction) {
  const auto demo = invoke({"meascat", "product", "demo"});
  EXPECT_EQ(demo.code, 0);
  EXPECT_NE(demo.out.find("16"), std::string::npos);
  EXPECT_EQ(invoke({"meascat", "universal", "--max-points", "2"}).code, 0);
  EXPECT_EQ(invoke({"meascat", "adjunction", "--max-points", "2"}).code, 0);
}

TEST(Cli, Generate) {
  const auto dir = scratch("gen");
  const auto r = invoke({"generate", "--kind", "brownian", "--n", "8", "--count", "2", "--mode", "float64", "--out",
                         dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "ensemble.json"));
  EXPECT_TRUE(fs::exists(dir / "path_1.csv"));
  EXPECT_EQ(invoke({"generate", "--kind", "brownian", "--mode", "rational", "--out", dir.string()}).code,
            itolab::cli::kExitUsage);
  const auto dir2 = scratch("gen_r");
  EXPECT_EQ(invoke({"generate", "--kind", "rational-random", "--mode", "rational", "--out", dir2.string()}).code, 0);
}
