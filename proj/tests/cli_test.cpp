#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace zaremba::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("zaremba_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST(Cli, Expand) {
  const auto r = invoke({"expand", "5", "18"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[0;3,1,1,2]\n");
  EXPECT_EQ(invoke({"--format", "json", "expand", "5", "12"}).out, "[\"2\",\"2\",\"2\"]\n");
  EXPECT_EQ(invoke({"expand", "6", "18"}).code, 2);
  EXPECT_EQ(invoke({"expand", "x", "18"}).code, 2);
}

TEST(Cli, Fold) {
  const auto r = invoke({"fold", "--cf", "2,2,2", "--z", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[0;2,2,3,1,2,2]\nnumerator 59\ndenominator 144\n");
  EXPECT_EQ(invoke({"fold", "--cf", "1,2", "--z", "1"}).code, 2);
  EXPECT_EQ(invoke({"fold", "--cf", "2,1", "--z", "1"}).code, 2);
  EXPECT_EQ(invoke({"fold", "--cf", "2,2", "--z", "0"}).code, 2);
}

TEST(Cli, Check) {
  const auto none = invoke({"check", "6", "4"});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.out, "none\n");
  const auto some = invoke({"check", "12", "5"});
  EXPECT_EQ(some.code, 0);
  EXPECT_EQ(some.out, "5/12 = [0;2,2,2]\n");
  EXPECT_EQ(invoke({"check", "12", "5", "--all"}).out, "5/12 = [0;2,2,2]\n7/12 = [0;1,1,2,2]\n");
  EXPECT_EQ(invoke({"check", "1", "5"}).code, 2);
}

TEST(Cli, ScanOutputIgnoresJobCount) {
  const auto one = invoke({"scan", "2", "3000", "4", "--jobs", "1"});
  const auto many = invoke({"scan", "2", "3000", "4", "--jobs", "5"});
  EXPECT_EQ(one.out, many.out);
  EXPECT_EQ(one.code, 1);
  EXPECT_EQ(invoke({"scan", "2", "10", "5"}).out,
            "{\"A\":5,\"exceptions\":[],\"hi\":10,\"lo\":2}\n");
  EXPECT_EQ(invoke({"scan", "10", "2", "5"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"certify", "1", "3", "2"}).code, 2);
  EXPECT_EQ(invoke({"certify-old", "2", "4"}).code, 2);
  EXPECT_EQ(invoke({"corollary", "7"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliFiles, CertifyThenVerify) {
  const std::string cert = path("c.json");
  EXPECT_EQ(invoke({"certify", "2", "3", "2", "-o", cert}).code, 0);
  const auto v = invoke({"verify", cert});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "ok\n");
}

TEST_F(CliFiles, EveryCertificateVerifies) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"certify", "3", "2", "17"}, {"certify", "1", "5", "30"},
           {"certify-old", "6", "13"}, {"certify-old", "5", "9", "--base-depth", "1"}}) {
    auto full = args;
    full.insert(full.end(), {"-o", path("c.json")});
    ASSERT_EQ(invoke(full).code, 0) << args[0];
    EXPECT_EQ(invoke({"verify", path("c.json")}).code, 0) << args[0];
  }
}

TEST_F(CliFiles, FailedRunsLeaveNoFile) {
  const std::string cert = path("none.json");
  EXPECT_EQ(invoke({"certify", "1", "4", "3", "-o", cert}).code, 1);
  EXPECT_EQ(invoke({"certify-old", "6", "1", "-o", cert}).code, 1);
  EXPECT_FALSE(std::filesystem::exists(cert));
}

TEST_F(CliFiles, VerifyRejectsTampering) {
  const std::string cert = path("c.json");
  ASSERT_EQ(invoke({"certify", "2", "3", "2", "-o", cert}).code, 0);
  auto doc = nlohmann::json::parse(std::ifstream(cert));
  doc["denominator"] = "143";
  std::ofstream(cert) << doc.dump();
  const auto v = invoke({"verify", cert});
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(v.out, "FAIL DenominatorMismatch\n");

  std::ofstream(cert) << "{not json";
  EXPECT_EQ(invoke({"verify", cert}).code, 1);
  EXPECT_EQ(invoke({"verify", path("missing.json")}).code, 2);
}

TEST(Cli, CorollaryTables) {
  for (const char* base : {"12", "18", "2", "3", "5", "6"}) {
    const auto r = invoke({"corollary", base, "--kmax", "20"});
    EXPECT_EQ(r.code, 0) << base << "\n" << r.out << r.err;
    EXPECT_NE(r.out.find("all 20 powers verified"), std::string::npos) << base;
  }
  const auto j = invoke({"--format", "json", "corollary", "12", "--kmax", "3"});
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_TRUE(doc["all_verified"].get<bool>());
  EXPECT_EQ(doc["rows"].size(), 3u);
}

}  // namespace
}  // namespace zaremba::cli
