#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args) {
  std::string cmd = std::string(HYBRIDSCHED_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string fixture = std::string(HYBRIDSCHED_DATA_DIR) + "/five_port_example.csv";

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, ScheduleFixture) {
  CliResult r = run("schedule --algo ours --ports 5 --delta 2 --rc 1 --rp 0.1 --input " + fixture);
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schedule"]["L"], 4);
  EXPECT_EQ(j["packet_equals_circuit"], true);
  EXPECT_EQ(j["validation"]["ok"], true);
  EXPECT_EQ(j["schedule"]["configs"].size(), 4u);
}

TEST(Cli, ZeroDemandExitsCleanly) {
  auto path = temp_file("hybridsched_zero.csv", "coflow_id,src,dst,bytes\nz,a,b,0\n");
  CliResult r = run("schedule --algo ours --ports 3 --input " + path.string());
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schedule"]["L"], 0);
  EXPECT_EQ(j["schedule"]["total"]["exact"], "0");
}

TEST(Cli, ZeroPacketRateIsUsageError) {
  EXPECT_EQ(run("schedule --algo ours --ports 5 --delta 2 --rc 1 --rp 0 --input " + fixture).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("schedule --algo nope --input " + fixture).code, 2);
  EXPECT_EQ(run("compare --algo ours --density thick").code, 2);
  EXPECT_EQ(run("compare --algo ours --density dense --format xml").code, 2);
  EXPECT_EQ(run("schedule --algo ours --input /nonexistent.csv").code, 2);
  auto bad = temp_file("hybridsched_bad.csv", "coflow_id,src,dst,bytes\nc,a,b,x\n");
  EXPECT_EQ(run("schedule --algo ours --input " + bad.string()).code, 2);
}

TEST(Cli, CompareIsDeterministic) {
  std::string args = "compare --algo ours,bvn,reco-sin,solstice --density sparse,dense --seeds 5 --format csv";
  CliResult a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')),
            "matrix_id,algo,delta,cct,t_trans,t_conf,L,rho,tau,density,norm_rf,norm_cct,lb_hybrid,valid");
}

TEST(Cli, DeltaSweepWritesFile) {
  auto out = std::filesystem::temp_directory_path() / "hybridsched_sweep.json";
  CliResult r = run("compare --algo ours,reco-sin --density normal --seeds 2 --sweep-delta 20,40,60,80,100 --out " +
              out.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["rows"].size(), 2u * 5u * 2u);
}

TEST(Cli, GenerateRoundTrips) {
  auto out = std::filesystem::temp_directory_path() / "hybridsched_gen.csv";
  ASSERT_EQ(run("generate --density normal --seeds 526 --out " + out.string()).code, 0);
  CliResult r = run("compare --algo bvn --ports 10 --input " + out.string() + " --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["rows"].size(), 526u);
}

TEST(Cli, ScheduleCsv) {
  CliResult r = run("schedule --algo reco-sin --ports 5 --delta 2 --rc 1 --rp 0.1 --format csv --input " + fixture);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("coflow-0,reco-sin,2,"), std::string::npos);
}
