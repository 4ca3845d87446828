#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "gtest/gtest.h"

namespace {

struct Outcome {
  int status;
  std::string out;
};

Outcome run(const std::string& args) {
  std::string cmd = std::string(EXTMUKAI_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t k = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), k);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

TEST(Cli, VectorOfTrivialBundle) {
  Outcome r = run("--format text vector --family K3n --n 2 --lambda 0");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("text: α + 5/4 β"), std::string::npos) << r.out;
}

TEST(Cli, VectorJson) {
  Outcome r = run("vector --family Kumn --n 3 --lambda 0");
  ASSERT_EQ(r.status, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("result").at("text"), "α + β");
  EXPECT_EQ(j.at("result").at("square"), "-2");
}

TEST(Cli, VerifyLinearisation) {
  Outcome r = run("verify linearisation --n 3 --h2-rank 3");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(nlohmann::json::parse(r.out).at("pass").get<bool>());
}

TEST(Cli, BFieldByDeltaThirdLeavesLambda) {
  Outcome r = run("lattice-check --lattice lambda --n 10 --iso bfield:delta/3");
  ASSERT_EQ(r.status, 1) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.at("pass").get<bool>());
  EXPECT_FALSE(j.at("result").at("preserved").get<bool>());
  EXPECT_TRUE(j.at("result").contains("witness"));
}

TEST(Cli, BFieldByDeltaPreservesLambda) {
  Outcome r = run("lattice-check --lattice lambda --n 10 --iso bfield:delta");
  EXPECT_EQ(r.status, 0) << r.out;
}

TEST(Cli, ModuliInline) {
  Outcome r = run("moduli --ns '[[4]]' --v 0,1,0");
  ASSERT_EQ(r.status, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.at("result").at("fine").get<bool>());
  EXPECT_EQ(j.at("result").at("obstruction_order"), "4");
  EXPECT_EQ(j.at("result").at("dimension"), "6");
}

TEST(Cli, InputErrorsExitTwo) {
  for (const char* args : {"vector --family Nope", "act --n 2 --iso rotate --vector alpha", "moduli --input /nonexistent.json",
                           "vector --lambda gamma", "frobnicate"}) {
    Outcome r = run(args);
    EXPECT_EQ(r.status, 2) << args << "\n" << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.contains("error")) << args;
  }
}

TEST(Cli, OutputIsDeterministic) {
  std::string args = "--seed 7 verify isotropy --n 2";
  EXPECT_EQ(run(args).out, run(args).out);
}

}  // namespace
