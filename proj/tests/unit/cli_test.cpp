#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "cli/commands.hpp"
#include "gdaha/error.hpp"

using gdaha::cli::json;
using gdaha::cli::MemorySink;
using gdaha::cli::RunConfig;

namespace {

std::filesystem::path write_params(const std::string& name, const json& doc) {
  auto dir = std::filesystem::temp_directory_path() / "gdaha_cli_test";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << doc.dump();
  return path;
}

json d4(const std::string& last) {
  json gamma = json::array({json::array({"0.13", "-0.41"}), json::array({"0.27", "0.05"}),
                            json::array({"-0.33", "0.19"}), json::array({"0.21", last})});
  return {{"legs", {2, 2, 2, 2}}, {"gamma", gamma}, {"nu", "1/7"}};
}

int run(RunConfig c, MemorySink& sink, std::string* summary = nullptr) { return gdaha::cli::run(c, sink, summary); }

}  // namespace

TEST(Cli, SolveWritesMetaAndSpectra) {
  RunConfig c;
  c.command = "solve-ds";
  c.params_path = write_params("d4.json", d4("-0.11")).string();
  c.seed = 4242;
  MemorySink sink;
  ASSERT_EQ(run(c, sink), 0);
  const auto& doc = sink.docs.at("ds_solution.json");
  EXPECT_EQ(doc["meta"]["seed"].get<std::uint64_t>(), 4242u);
  EXPECT_EQ(doc["meta"]["command"], "solve-ds");
  EXPECT_TRUE(doc["meta"]["tolerances"].contains("certification"));
  EXPECT_EQ(doc["tangent_dim"].get<int>(), 2);
  EXPECT_EQ(sink.texts.at("ds_spectra.csv").rfind("matrix,index,re,im", 0), 0u);
}

TEST(Cli, ValidationErrorsExitTwo) {
  MemorySink sink;
  RunConfig c;
  c.command = "solve-ds";
  c.params_path = write_params("d4_hbar.json", d4("-0.21")).string();
  std::string summary;
  EXPECT_EQ(run(c, sink, &summary), 2);
  EXPECT_NE(summary.find("NonZeroHbar"), std::string::npos);

  c.command = "params";
  c.params_path = write_params("finite.json", {{"legs", {2, 2, 2}}, {"gamma", {{0, 0}, {0, 0}, {0, 0}}}}).string();
  EXPECT_EQ(run(c, sink), 2);

  c.params_path = "/nonexistent/params.json";
  EXPECT_EQ(run(c, sink), 2);

  c.command = "no-such-command";
  EXPECT_EQ(run(c, sink), 2);

  c.command = "params";
  c.params_path = write_params("d4.json", d4("-0.11")).string();
  c.tol.solver = 0.0;
  EXPECT_EQ(run(c, sink), 2);
}

TEST(Cli, CoarseFlowExitsThree) {
  MemorySink sink;
  RunConfig c;
  c.command = "solve-ds";
  c.params_path = write_params("d4.json", d4("-0.11")).string();
  ASSERT_EQ(run(c, sink), 0);
  auto ds = std::filesystem::temp_directory_path() / "gdaha_cli_test" / "ds.json";
  std::ofstream(ds) << sink.docs.at("ds_solution.json").dump();
  c.command = "flow";
  c.input_path = ds.string();
  c.kappa_path = "line:0.5,0,0.5,0.9,1";
  EXPECT_EQ(run(c, sink), 3);
}

TEST(Cli, ParamsReport) {
  MemorySink sink;
  RunConfig c;
  c.command = "params";
  c.params_path = write_params("d4.json", d4("-0.11")).string();
  ASSERT_EQ(run(c, sink), 0);
  const auto& doc = sink.docs.at("params_report.json");
  EXPECT_EQ(doc["report"]["hbar"], "0");
  EXPECT_EQ(doc["params"]["nu"], "1/7");
}

TEST(Cli, KappaPathSpecs) {
  auto arc = gdaha::cli::parse_kappa_path("arc:0.5,0,0.1,180,0,4");
  ASSERT_EQ(arc.size(), 5u);
  EXPECT_NEAR(std::abs(arc.front() - std::complex<double>(0.4, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(arc[2] - std::complex<double>(0.5, 0.1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(arc.back() - std::complex<double>(0.6, 0.0)), 0.0, 1e-15);
  auto line = gdaha::cli::parse_kappa_path("line:0,0,1,1,2");
  ASSERT_EQ(line.size(), 3u);
  EXPECT_EQ(line[1], std::complex<double>(0.5, 0.5));
  EXPECT_EQ(gdaha::cli::parse_kappa_path("const:0.3,0.1,3").size(), 4u);
  EXPECT_THROW(gdaha::cli::parse_kappa_path("spiral:1,2"), gdaha::Error);
  EXPECT_THROW(gdaha::cli::parse_kappa_path("line:0,0,1"), gdaha::Error);
  EXPECT_THROW(gdaha::cli::parse_reals("1,,2"), gdaha::Error);
  EXPECT_EQ(gdaha::cli::parse_reals("1, 2.5,-3"), (std::vector<double>{1.0, 2.5, -3.0}));
}
