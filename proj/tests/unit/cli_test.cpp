#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "bblab/io.hpp"
#include "cli.hpp"
#include <json.hpp>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bblab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("bblab_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    bblab::write_text_file(p, text);
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

const char* kTriangle =
    "{\"dim\":1,\"origin\":[-1],\"spacing\":0.25,\"shape\":[8],"
    "\"values\":[0.125,0.375,0.625,0.875,0.875,0.625,0.375,0.125]}";

}  // namespace

TEST_F(CliTest, Mean) {
  auto r = call({"mean", "--a", "2", "--b", "5", "--lambda", "1/2", "--q", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["mean"].get<double>(), 3.5, 1e-15);
  r = call({"mean", "--a", "2", "--b", "8", "--lambda", "0.5", "--q", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["mean"].get<double>(), 4.0, 1e-14);
  r = call({"mean", "--a", "2", "--b", "8", "--lambda", "1/2", "--q", "-inf"});
  EXPECT_NEAR(nlohmann::json::parse(r.out)["mean"].get<double>(), 2.0, 0);
  EXPECT_EQ(call({"mean", "--a", "-2", "--b", "8", "--lambda", "1/2", "--q", "1"}).code, 2);
  EXPECT_EQ(call({"mean", "--a", "2", "--b", "8", "--lambda", "abc", "--q", "1"}).code, 2);
  EXPECT_EQ(call({"mean", "--a", "x", "--b", "8", "--lambda", "1/2", "--q", "1"}).code, 64);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({}).code, 64);
  EXPECT_EQ(call({"bogus"}).code, 64);
  EXPECT_EQ(call({"mean", "--a", "1"}).code, 64);
  const auto help = call({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("stability"), std::string::npos);
}

TEST_F(CliTest, FileErrors) {
  EXPECT_EQ(call({"supconv", "--f", path("missing.json"), "--g", path("missing.json"), "--lambda", "1/2", "--s", "1",
                  "--out", path("h.json")})
                .code,
            66);
  const auto bad = write("bad.json", "{\"dim\":");
  EXPECT_EQ(call({"supconv", "--f", bad, "--g", bad, "--lambda", "1/2", "--s", "1", "--out", path("h.json")}).code,
            65);
  const auto f = write("f.json", kTriangle);
  EXPECT_EQ(call({"supconv", "--f", f, "--g", f, "--lambda", "1/2", "--s", "1", "--out",
                  path("no/such/dir/h.json")})
                .code,
            73);
}

TEST_F(CliTest, SupconvAndBbl) {
  const auto f = write("f.json", kTriangle);
  const auto r = call({"supconv", "--f", f, "--g", f, "--lambda", "1/2", "--s", "1", "--out", path("h.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto h = bblab::grid_from_json(bblab::read_text_file(path("h.json")));
  EXPECT_EQ(h.dim(), 1u);
  const auto b = call({"bbl", "--f", f, "--g", f, "--h", path("h.json"), "--lambda", "1/2", "--s", "1"});
  ASSERT_EQ(b.code, 0) << b.err;
  const auto j = nlohmann::json::parse(b.out);
  // Center sampling loses up to half a cell of mass at each end of the support.
  EXPECT_GE(j["delta"].get<double>(), -0.25 * 0.25);
  EXPECT_EQ(call({"supconv", "--f", f, "--g", f, "--lambda", "1/17", "--s", "1", "--out", path("h.json")}).code, 2);
}

TEST_F(CliTest, LiftMinkowskiBmSymmetrize) {
  const auto f = write("f.json", kTriangle);
  ASSERT_EQ(call({"lift", "--f", f, "--s", "1", "--out", path("body.json")}).code, 0);
  const auto doc = bblab::voxels_from_json(bblab::read_text_file(path("body.json")));
  EXPECT_EQ(doc.n_split, 1u);
  auto r = call({"minkowski", "--a", path("body.json"), "--b", path("body.json"), "--lambda", "1/2", "--out",
                 path("sum.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = call({"bm", "--a", path("body.json"), "--b", path("body.json"), "--lambda", "1/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(nlohmann::json::parse(r.out)["delta"].get<double>(), -1e-12);
  r = call({"symmetrize", "--body", path("body.json"), "--out", path("sym.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(bblab::voxels_from_json(bblab::read_text_file(path("sym.json"))).voxels, doc.voxels);
}

TEST_F(CliTest, EnvelopeAndStability) {
  const auto f = write("f.json", kTriangle);
  ASSERT_EQ(call({"envelope", "--f", f, "--p", "1", "--out", path("u.json")}).code, 0);
  const auto r = call({"stability", "--f", f, "--g", f, "--lambda", "1/2", "--s", "1/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = bblab::report_from_json(r.out);
  EXPECT_EQ(report.route, bblab::Route::rational_lift);
  ASSERT_EQ(call({"stability", "--f", f, "--g", f, "--lambda", "1/2", "--s", "2", "--out", path("r.json")}).code, 0);
  EXPECT_EQ(bblab::report_from_json(bblab::read_text_file(path("r.json"))).route, bblab::Route::integer_s);
}

TEST_F(CliTest, ConstantsAndSweep) {
  auto r = call({"constants", "--n", "2", "--tau", "1/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["log_M"].get<double>(), 65.3229545901996, 1e-9);
  EXPECT_EQ(call({"constants", "--n", "1", "--tau", "1/2"}).code, 2);
  const auto f = write("f.json", kTriangle);
  r = call({"experiment", "spike-sweep", "--base", f, "--masses", "0,0.01,0.1", "--out", path("sweep.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = bblab::read_text_file(path("sweep.csv"));
  EXPECT_EQ(csv.rfind("param,epsilon,delta,witness_deficit,log_bound,route\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}
